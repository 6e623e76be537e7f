#include "s2track/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

using namespace s2track;

namespace {

const char* kMinimalConfig = R"(
# minimal scenario: perfect knowledge, static reference
[plant]
J = [0.02, 0.02, 0.04, 0.0, 0.0, 0.0]

[gains]
Lambda = 1.0
eta = 1.0
gamma1 = 1.0
gamma2 = 1.0
gamma4 = 1.0
gamma5 = 0.5

[envelope]
wd_max = 0.3
wd_dot_max = 0.4
w_max = 1.0
)";

std::string full_config(const std::string& extra = "") {
  return std::string(kMinimalConfig) + R"(
[reference]
kind = "sinusoid"
axis = [1.0, 0.0, 0.0]
magnitude = 0.25
frequency = 0.2

[initial]
axis = [1.0, 0.0, 0.0]
angle = 1.0471975511965976

[integration]
dt = 1e-3
duration = 4.0
)" + extra;
}

}  // namespace

TEST_CASE("minimal config picks up the documented defaults") {
  const ScenarioConfig cfg = parse_config(kMinimalConfig);
  CHECK(cfg.scenario.dt == 1e-3);
  CHECK(cfg.scenario.r_body.vec() == Vec3::UnitZ());
  CHECK(cfg.scenario.envelope.psi_max == 2.0);
  CHECK(cfg.scenario.model.perfect_knowledge());
  CHECK(cfg.scenario.profile.kind == ProfileKind::constant_spin);
  CHECK(cfg.scenario.profile.magnitude == 0.0);
  CHECK(cfg.outputs.trajectory == "trajectory.csv");
}

TEST_CASE("indefinite plant inertia is rejected by field name") {
  std::string text = kMinimalConfig;
  const auto pos = text.find("[0.02, 0.02, 0.04");
  text.replace(pos, std::string("[0.02, 0.02, 0.04").size(),
               "[0.02, -0.02, 0.04");
  try {
    parse_config(text);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("plant.J") != std::string::npos);
  }
}

TEST_CASE("omitting gamma5 is a parse error, not a default") {
  std::string text = kMinimalConfig;
  const auto pos = text.find("gamma5 = 0.5");
  text.erase(pos, std::string("gamma5 = 0.5").size());
  CHECK_THROWS_AS(parse_config(text), ParseError);
}

TEST_CASE("unknown keys fail loudly") {
  CHECK_THROWS_AS(parse_config(full_config("[gains2]\nfoo = 1.0\n")),
                  ValidationError);
  // gamma3 is derived, never user-supplied
  CHECK_THROWS_AS(parse_config(full_config("[gains]\ngamma3 = 1.0\n")),
                  ValidationError);
}

TEST_CASE("malformed TOML reports a position") {
  try {
    parse_config("[plant\nJ = 1");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("1:") != std::string::npos);
  }
}

TEST_CASE("profile envelope conformance") {
  std::string text = full_config();
  // magnitude 0.25 at 0.2 Hz gives sup wd_dot = 0.1 pi < 0.4: fine
  CHECK_NOTHROW(parse_config(text));
  const auto pos = text.find("magnitude = 0.25");
  text.replace(pos, std::string("magnitude = 0.25").size(),
               "magnitude = 0.35");  // exceeds wd_max = 0.3
  CHECK_THROWS_AS(parse_config(text), ValidationError);
}

TEST_CASE("JSON config parses to the same scenario") {
  const char* json_text = R"({
    "plant": {"J": [0.02, 0.02, 0.04, 0, 0, 0]},
    "gains": {"Lambda": 1.0, "eta": 1.0, "gamma1": 1.0, "gamma2": 1.0,
              "gamma4": 1.0, "gamma5": 0.5},
    "envelope": {"wd_max": 0.3, "wd_dot_max": 0.4, "w_max": 1.0}
  })";
  const ScenarioConfig a = parse_config(json_text);
  const ScenarioConfig b = parse_config(kMinimalConfig);
  CHECK(a.scenario.model.J == b.scenario.model.J);
  CHECK(a.scenario.gains.gamma5 == b.scenario.gains.gamma5);
  CHECK(a.scenario.envelope.wd_max == b.scenario.envelope.wd_max);
}

TEST_CASE("dt outside the supported range is rejected") {
  CHECK_THROWS_AS(parse_config(full_config("[integration2]\ndt = 0.1\n")),
                  ValidationError);
  std::string text = full_config();
  const auto pos = text.find("dt = 1e-3");
  text.replace(pos, std::string("dt = 1e-3").size(), "dt = 0.02");
  CHECK_THROWS_AS(parse_config(text), ValidationError);
}

TEST_CASE("trajectory CSV layout and determinism") {
  const ScenarioConfig cfg = parse_config(full_config());
  Scenario sc = cfg.scenario;
  sc.bound_samples = 10000;
  const RunResult a = run_scenario(sc);
  const RunResult b = run_scenario(sc);
  const std::string csv_a = trajectory_csv(a.records);
  const std::string csv_b = trajectory_csv(b.records);
  CHECK(csv_a == csv_b);

  std::istringstream in(csv_a);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "t,Q0,Q1,Q2,Q3,Q4,Q5,Q6,Q7,Q8,w_b0,w_b1,w_b2,"
        "Qd0,Qd1,Qd2,Qd3,Qd4,Qd5,Qd6,Qd7,Qd8,wd_b0,wd_b1,wd_b2,"
        "u0,u1,u2,psi,e_q0,e_q1,e_q2,e_w0,e_w1,e_w2,s0,s1,s2,"
        "V,sandwich_lo,sandwich_hi,Vdot_fd");
  std::string row;
  std::size_t rows = 0;
  while (std::getline(in, row)) {
    ++rows;
    CHECK(std::count(row.begin(), row.end(), ',') == 41);
  }
  CHECK(rows == a.records.size());
  CHECK(csv_a.find("\r") == std::string::npos);
}

TEST_CASE("summary JSON carries the contract fields") {
  RunSummary s;
  s.certified = true;
  s.radius = 0.25;
  s.decay_rate = 0.125;
  s.max_zq_settled = 0.01;
  s.envelope_violations = 0;
  const auto j = nlohmann::json::parse(summary_json(s));
  CHECK(j.at("certified").get<bool>());
  CHECK(j.at("fitted_rate").is_null());
  CHECK(j.at("radius").get<double>() == 0.25);

  s.fitted_rate = 0.5;
  const auto j2 = nlohmann::json::parse(summary_json(s));
  CHECK(j2.at("fitted_rate").get<double>() == 0.5);
}

TEST_CASE("atomic write leaves no temp file") {
  const auto dir = std::filesystem::temp_directory_path() / "s2track_test_io";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "out.txt").string();
  write_file_atomic(path, "payload");
  std::ifstream in(path);
  std::string content;
  std::getline(in, content);
  CHECK(content == "payload");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("cmd_certify exit codes and report emission") {
  const auto dir =
      std::filesystem::temp_directory_path() / "s2track_test_certify";
  std::filesystem::create_directories(dir);
  CliOptions opts;
  opts.out_dir = dir.string();

  std::ostringstream out;
  const int ok = cmd_certify(parse_config(full_config()), opts, out);
  CHECK(ok == 0);
  CHECK(std::filesystem::exists(dir / "report.json"));

  // the (1f)-violating worked example: gamma5 = 2 with gamma4 = 1, Lambda = 1
  std::string bad = full_config();
  const auto pos = bad.find("gamma5 = 0.5");
  bad.replace(pos, std::string("gamma5 = 0.5").size(), "gamma5 = 2.0");
  std::ostringstream out2;
  const int fail = cmd_certify(parse_config(bad), opts, out2);
  CHECK(fail == 2);
  CHECK(out2.str().find("1f") != std::string::npos);

  const CertificationReport r = CertificationReport::from_json([&] {
    std::ifstream in(dir / "report.json");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }());
  CHECK_FALSE(r.certified);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cmd_run refuses uncertified gains unless overridden") {
  const auto dir = std::filesystem::temp_directory_path() / "s2track_test_run";
  std::filesystem::create_directories(dir);
  CliOptions opts;
  opts.out_dir = dir.string();

  std::string bad = full_config();
  const auto pos = bad.find("gamma5 = 0.5");
  bad.replace(pos, std::string("gamma5 = 0.5").size(), "gamma5 = 2.0");

  std::ostringstream out;
  CHECK(cmd_run(parse_config(bad), opts, out) == 2);
  CHECK_FALSE(std::filesystem::exists(dir / "trajectory.csv"));

  opts.allow_uncertified = true;
  std::ostringstream out2;
  CHECK(cmd_run(parse_config(bad), opts, out2) == 0);
  CHECK(std::filesystem::exists(dir / "trajectory.csv"));
  std::filesystem::remove_all(dir);
}
