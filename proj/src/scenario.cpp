#include "s2track/scenario.hpp"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "s2track/toml_lite.hpp"

namespace s2track {

namespace {

using toml::Table;
using toml::Value;

/// Tracks which keys were consumed so typos fail loudly.
class ConfigReader {
 public:
  explicit ConfigReader(Table table) : table_(std::move(table)) {}

  bool has(const std::string& key) const { return table_.count(key) != 0; }

  double number(const std::string& key) {
    const Value& v = require(key);
    if (v.kind != Value::Kind::number) {
      throw ValidationError(key + ": expected a number");
    }
    return v.num;
  }
  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }
  std::string string_or(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const Value& v = require(key);
    if (v.kind != Value::Kind::string) {
      throw ValidationError(key + ": expected a string");
    }
    return v.str;
  }
  std::vector<double> array(const std::string& key, std::size_t n) {
    const Value& v = require(key);
    if (v.kind != Value::Kind::array || v.array.size() != n) {
      throw ValidationError(key + ": expected an array of " +
                            std::to_string(n) + " numbers");
    }
    return v.array;
  }
  std::optional<Vec3> vec3_opt(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const auto a = array(key, 3);
    return Vec3(a[0], a[1], a[2]);
  }
  Vec3 vec3_or(const std::string& key, const Vec3& fallback) {
    return vec3_opt(key).value_or(fallback);
  }

  void finish() const {
    for (const auto& [key, value] : table_) {
      if (used_.count(key) == 0) {
        throw ValidationError("unknown key '" + key + "' (line " +
                              std::to_string(value.line) + ")");
      }
    }
  }

 private:
  const Value& require(const std::string& key) {
    const auto it = table_.find(key);
    if (it == table_.end()) {
      throw ParseError("missing required key '" + key + "'");
    }
    used_.insert(key);
    return it->second;
  }

  Table table_;
  std::set<std::string> used_;
};

Mat3 symmetric_from_six(const std::vector<double>& a) {
  Mat3 m;
  m << a[0], a[3], a[4],
       a[3], a[1], a[5],
       a[4], a[5], a[2];
  return m;
}

void flatten_json(const nlohmann::json& j, const std::string& prefix,
                  Table& out) {
  for (const auto& [key, val] : j.items()) {
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    Value v;
    if (val.is_object()) {
      flatten_json(val, full, out);
      continue;
    }
    if (val.is_number()) {
      v.kind = Value::Kind::number;
      v.num = val.get<double>();
    } else if (val.is_string()) {
      v.kind = Value::Kind::string;
      v.str = val.get<std::string>();
    } else if (val.is_boolean()) {
      v.kind = Value::Kind::boolean;
      v.boolean = val.get<bool>();
    } else if (val.is_array()) {
      v.kind = Value::Kind::array;
      for (const auto& e : val) {
        if (!e.is_number()) {
          throw ValidationError(full + ": arrays must hold numbers");
        }
        v.array.push_back(e.get<double>());
      }
    } else {
      throw ValidationError(full + ": unsupported value type");
    }
    out.emplace(full, std::move(v));
  }
}

double finite_positive(ConfigReader& r, const std::string& key, double fallback) {
  const double v = r.number_or(key, fallback);
  if (!std::isfinite(v) || v <= 0.0) {
    throw ValidationError(key + ": must be finite and > 0");
  }
  return v;
}

double finite_nonnegative(ConfigReader& r, const std::string& key,
                          double fallback) {
  const double v = r.number_or(key, fallback);
  if (!std::isfinite(v) || v < 0.0) {
    throw ValidationError(key + ": must be finite and >= 0");
  }
  return v;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  // JSON configs start with '{'; everything else is the TOML subset.
  std::size_t first = text.find_first_not_of(" \t\r\n");
  Table table;
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("json: ") + e.what());
    }
    flatten_json(j, "", table);
  } else {
    table = toml::parse(text);
  }

  ConfigReader r(std::move(table));
  ScenarioConfig cfg;
  Scenario& sc = cfg.scenario;

  // [body]
  const Vec3 r_body_raw = r.vec3_or("body.r_body", Vec3::UnitZ());
  try {
    sc.r_body = UnitVec3::normalized(r_body_raw);
  } catch (const DegenerateError&) {
    throw ValidationError("body.r_body: must be a nonzero vector");
  }

  // [plant]
  const Mat3 J = symmetric_from_six(r.array("plant.J", 6));
  const double c = finite_nonnegative(r, "plant.c", 0.0);
  const Vec3 tau = r.vec3_or("plant.tau", Vec3::Zero());

  // [model] — defaults to perfect knowledge of the plant.
  Mat3 J_hat = J;
  if (r.has("model.J_hat")) {
    J_hat = symmetric_from_six(r.array("model.J_hat", 6));
  }
  const Vec3 tau_hat = r.vec3_or("model.tau_hat", tau);

  try {
    sc.model = InertiaModel::make(J, J_hat, c, tau, tau_hat);
  } catch (const SingularInertiaError& e) {
    const bool plant_side =
        std::string(e.what()).find("J_hat") == std::string::npos;
    throw ValidationError(std::string(plant_side ? "plant.J" : "model.J_hat") +
                          ": " + e.what());
  }
  if (!tau.allFinite() || !tau_hat.allFinite()) {
    throw ValidationError("plant.tau / model.tau_hat: must be finite");
  }

  // [gains] — all six are certification-critical, no defaults.
  sc.gains.Lambda = r.number("gains.Lambda");
  sc.gains.eta = r.number("gains.eta");
  sc.gains.gamma1 = r.number("gains.gamma1");
  sc.gains.gamma2 = r.number("gains.gamma2");
  sc.gains.gamma4 = r.number("gains.gamma4");
  sc.gains.gamma5 = r.number("gains.gamma5");
  try {
    derive_gains(sc.gains, 1.0);
  } catch (const InvalidGainError& e) {
    throw ValidationError(std::string("gains: ") + e.what());
  }

  // [envelope]
  sc.envelope.wd_max = finite_nonnegative(r, "envelope.wd_max", -1.0);
  sc.envelope.wd_dot_max = finite_nonnegative(r, "envelope.wd_dot_max", -1.0);
  sc.envelope.w_max = finite_nonnegative(r, "envelope.w_max", -1.0);
  sc.envelope.psi_max = finite_nonnegative(r, "envelope.psi_max", 2.0);
  sc.envelope.f_max = finite_nonnegative(r, "envelope.f_max", 0.0);
  if (sc.envelope.psi_max > 2.0) {
    throw ValidationError("envelope.psi_max: must lie in [0, 2]");
  }

  // [reference]
  const std::string kind = r.string_or("reference.kind", "constant_spin");
  if (kind == "constant_spin") {
    sc.profile.kind = ProfileKind::constant_spin;
  } else if (kind == "sinusoid") {
    sc.profile.kind = ProfileKind::sinusoid;
  } else if (kind == "ramp_then_hold") {
    sc.profile.kind = ProfileKind::ramp_then_hold;
  } else {
    throw ValidationError("reference.kind: must be constant_spin, sinusoid or "
                          "ramp_then_hold");
  }
  const Vec3 ref_axis = r.vec3_or("reference.axis", sc.r_body.vec());
  try {
    sc.profile.axis = UnitVec3::normalized(ref_axis);
  } catch (const DegenerateError&) {
    throw ValidationError("reference.axis: must be a nonzero vector");
  }
  sc.profile.magnitude = finite_nonnegative(r, "reference.magnitude", 0.0);
  sc.profile.frequency = finite_nonnegative(r, "reference.frequency", 0.0);
  sc.profile.ramp_time = finite_positive(r, "reference.ramp_time", 1.0);
  if (const auto qd0_axis = r.vec3_opt("reference.qd0_axis")) {
    const double ang = r.number_or("reference.qd0_angle", 0.0);
    sc.profile.Qd0 = exp_rodrigues(UnitVec3::normalized(*qd0_axis), ang);
  } else if (r.has("reference.qd0_angle")) {
    throw ValidationError("reference.qd0_angle: requires reference.qd0_axis");
  }
  if (sc.profile.sup_omega() > sc.envelope.wd_max) {
    throw ValidationError(
        "reference.magnitude: profile exceeds envelope.wd_max");
  }
  if (sc.profile.sup_omega_dot() > sc.envelope.wd_dot_max) {
    throw ValidationError(
        "reference: profile rate of change exceeds envelope.wd_dot_max");
  }

  // [initial]
  sc.initial.axis = r.vec3_or("initial.axis", Vec3::UnitX());
  sc.initial.angle = r.number_or("initial.angle", 0.0);
  if (sc.initial.angle != 0.0 && sc.initial.axis.norm() < 1e-12) {
    throw ValidationError("initial.axis: must be nonzero for a nonzero angle");
  }
  sc.initial.w0 = r.vec3_opt("initial.w0");

  // [integration]
  sc.dt = finite_positive(r, "integration.dt", 1e-3);
  if (sc.dt > 0.01) {
    throw ValidationError("integration.dt: must lie in (0, 0.01] s");
  }
  sc.duration = finite_positive(r, "integration.duration", 10.0);
  if (sc.duration < 2.0 * sc.dt) {
    throw ValidationError("integration.duration: must cover at least two steps");
  }

  // [certification]
  const double samples = r.number_or("certification.samples", 20000.0);
  if (!(samples >= 10000.0) || samples != std::floor(samples)) {
    throw ValidationError(
        "certification.samples: must be an integer >= 10000");
  }
  sc.bound_samples = static_cast<int>(samples);

  // [output]
  cfg.outputs.trajectory = r.string_or("output.trajectory", "trajectory.csv");
  cfg.outputs.summary = r.string_or("output.summary", "summary.json");
  cfg.outputs.report = r.string_or("output.report", "report.json");

  r.finish();
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open config file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

void format_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void append_vec(std::string& out, const Vec3& v) {
  for (int i = 0; i < 3; ++i) {
    out.push_back(',');
    format_double(out, v(i));
  }
}

void append_mat_rowmajor(std::string& out, const Mat3& m) {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out.push_back(',');
      format_double(out, m(r, c));
    }
  }
}

}  // namespace

std::string trajectory_csv(const std::vector<TrajectoryRecord>& records) {
  std::string out =
      "t,Q0,Q1,Q2,Q3,Q4,Q5,Q6,Q7,Q8,w_b0,w_b1,w_b2,"
      "Qd0,Qd1,Qd2,Qd3,Qd4,Qd5,Qd6,Qd7,Qd8,wd_b0,wd_b1,wd_b2,"
      "u0,u1,u2,psi,e_q0,e_q1,e_q2,e_w0,e_w1,e_w2,s0,s1,s2,"
      "V,sandwich_lo,sandwich_hi,Vdot_fd\n";
  out.reserve(out.size() + records.size() * 700);
  for (const auto& r : records) {
    format_double(out, r.t);
    append_mat_rowmajor(out, r.Q);
    append_vec(out, r.w_b);
    append_mat_rowmajor(out, r.Qd);
    append_vec(out, r.wd_b);
    append_vec(out, r.u);
    out.push_back(',');
    format_double(out, r.psi);
    append_vec(out, r.e_q);
    append_vec(out, r.e_w);
    append_vec(out, r.s);
    out.push_back(',');
    format_double(out, r.V);
    out.push_back(',');
    format_double(out, r.sandwich_lo);
    out.push_back(',');
    format_double(out, r.sandwich_hi);
    out.push_back(',');
    format_double(out, r.Vdot_fd);
    out.push_back('\n');
  }
  return out;
}

std::string summary_json(const RunSummary& summary, int indent) {
  nlohmann::json j;
  j["certified"] = summary.certified;
  j["radius"] = summary.radius;
  j["decay_rate"] = summary.decay_rate;
  if (summary.fitted_rate.has_value()) {
    j["fitted_rate"] = *summary.fitted_rate;
  } else {
    j["fitted_rate"] = nullptr;
  }
  j["max_zq_settled"] = summary.max_zq_settled;
  j["envelope_violations"] = summary.envelope_violations;
  j["exit_status"] = summary.exit_status;
  return j.dump(indent);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot open '" + tmp + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw Error("write failed for '" + tmp + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

Scenario with_overrides(Scenario sc, const CliOptions& opts) {
  if (opts.dt_override) sc.dt = *opts.dt_override;
  if (opts.duration_override) sc.duration = *opts.duration_override;
  sc.seed = opts.seed;
  return sc;
}

void print_certify_text(const CertificationReport& r, std::ostream& out) {
  out << "lambda_J = " << r.lambda_J << "\n";
  out << "bounds: A1_max = " << r.bounds.A1_max
      << ", A2_max = " << r.bounds.A2_max << ", B_max = " << r.bounds.B_max
      << "\n        Upsilon_max = " << r.bounds.Upsilon_max
      << ", A_breve_max = " << r.bounds.A_breve_max << "\n";
  for (const auto& c : r.gain_checks) {
    out << "condition (" << c.id << "): " << (c.pass ? "pass" : "FAIL")
        << "  (margin " << c.margin << ")\n";
  }
  for (const auto& c : r.set_conditions) {
    out << "condition (" << c.id << "): " << (c.pass ? "pass" : "FAIL")
        << "  (margin " << c.margin << ")\n";
  }
  if (r.thresholds_valid) {
    out << "envelope radius = " << r.thresholds.radius
        << ", decay rate = " << r.thresholds.decay_rate
        << ", e_w threshold = " << r.thresholds.e_w_threshold << "\n";
  } else {
    out << "thresholds undefined (gain conditions failed)\n";
  }
  out << (r.certified ? "certified" : "NOT certified") << "\n";
}

}  // namespace

int cmd_certify(const ScenarioConfig& config, const CliOptions& opts,
                std::ostream& out) {
  const Scenario sc = with_overrides(config.scenario, opts);
  const CertificationReport report =
      certify(sc.model, sc.gains, sc.envelope, sc.bound_samples, sc.seed);

  std::filesystem::create_directories(opts.out_dir);
  write_file_atomic(join_path(opts.out_dir, config.outputs.report),
                    report.to_json() + "\n");
  if (opts.json) {
    out << report.to_json() << "\n";
  } else {
    print_certify_text(report, out);
  }
  return report.certified ? 0 : 2;
}

int cmd_run(const ScenarioConfig& config, const CliOptions& opts,
            std::ostream& out) {
  const Scenario sc = with_overrides(config.scenario, opts);
  const CertificationReport report =
      certify(sc.model, sc.gains, sc.envelope, sc.bound_samples, sc.seed);
  if (!report.certified && !opts.allow_uncertified) {
    out << (opts.json
                ? std::string("{\"error\":\"gains not certified\"}")
                : std::string("refusing to run: gains are not certified for "
                              "this envelope (use --allow-uncertified)"))
        << "\n";
    return 2;
  }

  RunResult result = run_scenario(sc, report);

  std::filesystem::create_directories(opts.out_dir);
  write_file_atomic(join_path(opts.out_dir, config.outputs.trajectory),
                    trajectory_csv(result.records));
  write_file_atomic(join_path(opts.out_dir, config.outputs.summary),
                    summary_json(result.summary) + "\n");
  write_file_atomic(join_path(opts.out_dir, config.outputs.report),
                    report.to_json() + "\n");

  if (opts.json) {
    out << summary_json(result.summary) << "\n";
  } else {
    out << "steps = " << result.records.size()
        << ", max ||z_q|| settled = " << result.summary.max_zq_settled
        << ", envelope violations = " << result.summary.envelope_violations
        << "\n";
    if (result.summary.fitted_rate) {
      out << "fitted decay rate = " << *result.summary.fitted_rate
          << " (certified " << result.summary.decay_rate << ")\n";
    }
  }
  return 0;
}

namespace {

struct SweepRow {
  std::string path;
  int code = 0;
  std::string error;
  RunSummary summary;
  bool has_summary = false;
};

SweepRow sweep_one(const std::string& path, const CliOptions& opts) {
  SweepRow row;
  row.path = path;
  try {
    const ScenarioConfig config = parse_config_file(path);
    const Scenario sc = with_overrides(config.scenario, opts);
    const CertificationReport report =
        certify(sc.model, sc.gains, sc.envelope, sc.bound_samples, sc.seed);
    if (!report.certified && !opts.allow_uncertified) {
      row.code = 2;
      row.error = "not certified";
      return row;
    }
    RunResult result = run_scenario(sc, report);

    const std::string stem = std::filesystem::path(path).stem().string();
    std::filesystem::create_directories(opts.out_dir);
    write_file_atomic(join_path(opts.out_dir, stem + ".csv"),
                      trajectory_csv(result.records));
    write_file_atomic(join_path(opts.out_dir, stem + ".summary.json"),
                      summary_json(result.summary) + "\n");

    row.summary = result.summary;
    row.has_summary = true;
  } catch (const SimulationAbort& e) {
    row.code = 3;
    row.error = e.what();
  } catch (const std::exception& e) {
    row.code = 1;
    row.error = e.what();
  }
  return row;
}

}  // namespace

int cmd_sweep(const std::vector<std::string>& patterns, const CliOptions& opts,
              std::ostream& out) {
  std::vector<std::string> paths;
  for (const auto& pattern : patterns) {
    if (pattern.find_first_of("*?[") != std::string::npos) {
      glob_t g{};
      const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
      if (rc == 0) {
        for (std::size_t i = 0; i < g.gl_pathc; ++i) {
          paths.emplace_back(g.gl_pathv[i]);
        }
      }
      ::globfree(&g);
    } else {
      paths.push_back(pattern);
    }
  }
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  if (paths.empty()) {
    out << "no matching configs\n";
    return 1;
  }

  std::vector<SweepRow> rows(paths.size());
  std::atomic<std::size_t> next{0};
  const int workers =
      std::max(1, std::min<int>(opts.parallelism,
                                static_cast<int>(paths.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= paths.size()) break;
        rows[i] = sweep_one(paths[i], opts);
      }
    });
  }
  for (auto& th : pool) th.join();

  int worst = 0;
  if (opts.json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json j;
      j["config"] = row.path;
      j["exit"] = row.code;
      if (row.has_summary) {
        j["summary"] = nlohmann::json::parse(summary_json(row.summary, -1));
      } else {
        j["error"] = row.error;
      }
      arr.push_back(j);
      worst = std::max(worst, row.code);
    }
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& row : rows) {
      out << row.path << ": ";
      if (row.has_summary) {
        out << "ok, certified=" << (row.summary.certified ? "yes" : "no")
            << ", max_zq_settled=" << row.summary.max_zq_settled
            << ", violations=" << row.summary.envelope_violations << "\n";
      } else {
        out << "exit " << row.code << " (" << row.error << ")\n";
      }
      worst = std::max(worst, row.code);
    }
  }
  return worst;
}

}  // namespace s2track
