#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "s2track/sim.hpp"

namespace s2track {

struct OutputNames {
  std::string trajectory = "trajectory.csv";
  std::string summary = "summary.json";
  std::string report = "report.json";
};

/// A fully validated scenario plus its output file names.
struct ScenarioConfig {
  Scenario scenario;
  OutputNames outputs;
};

/// Parses TOML (default) or JSON (text starting with '{') scenario configs.
/// Throws ParseError for malformed text or missing required keys and
/// ValidationError (naming the field) for constraint violations.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig parse_config_file(const std::string& path);

struct CliOptions {
  bool json = false;
  bool allow_uncertified = false;
  std::string out_dir = ".";
  std::optional<double> dt_override;
  std::optional<double> duration_override;
  int parallelism = 1;
  std::uint64_t seed = 42;  // S2TRACK_SEED overrides
};

/// Serializes records into the pinned CSV layout (header row, LF endings,
/// 17-significant-digit floats).
std::string trajectory_csv(const std::vector<TrajectoryRecord>& records);

std::string summary_json(const RunSummary& summary, int indent = 2);

/// Writes content via a temp file + rename so interrupted runs leave nothing.
void write_file_atomic(const std::string& path, const std::string& content);

/// Exit codes: 0 certified, 2 not certified (report still emitted), 1 error.
int cmd_certify(const ScenarioConfig& config, const CliOptions& opts,
                std::ostream& out);

/// Exit codes: 0 ok, 2 refused (uncertified without --allow-uncertified),
/// 3 antipodal/non-finite abort, 1 error.
int cmd_run(const ScenarioConfig& config, const CliOptions& opts,
            std::ostream& out);

/// Runs every config (glob patterns expanded, rows ordered by filename) on a
/// bounded worker pool; emits one summary row per scenario. Exit code is the
/// maximum row code.
int cmd_sweep(const std::vector<std::string>& patterns, const CliOptions& opts,
              std::ostream& out);

}  // namespace s2track
