#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "s2track/scenario.hpp"

namespace {

s2track::CliOptions base_options() {
  s2track::CliOptions opts;
  if (const char* env = std::getenv("S2TRACK_SEED")) {
    opts.seed = std::strtoull(env, nullptr, 10);
  }
  return opts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"S² pointing-direction tracking controller: certification and "
               "closed-loop simulation"};
  app.require_subcommand(1);

  s2track::CliOptions opts = base_options();
  std::string config_path;
  std::vector<std::string> sweep_patterns;
  double dt_override = 0.0;
  double duration_override = 0.0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", opts.json, "machine-parseable JSON on stdout");
    cmd->add_option("--out", opts.out_dir, "output directory")
        ->default_val(".");
    cmd->add_option("--dt", dt_override, "override integration step [s]");
    cmd->add_option("--duration", duration_override,
                    "override run duration [s]");
  };

  CLI::App* certify =
      app.add_subcommand("certify", "evaluate the stability certificate");
  certify->add_option("--config", config_path, "scenario config (TOML or JSON)")
      ->required();
  add_common(certify);

  CLI::App* run = app.add_subcommand("run", "simulate one scenario");
  run->add_option("--config", config_path, "scenario config (TOML or JSON)")
      ->required();
  run->add_flag("--allow-uncertified", opts.allow_uncertified,
                "run even when the certificate fails");
  add_common(run);

  CLI::App* sweep = app.add_subcommand("sweep", "run a batch of scenarios");
  sweep->add_option("--config", sweep_patterns,
                    "config paths or glob patterns")
      ->required()
      ->expected(-1);
  sweep->add_option("--parallelism", opts.parallelism, "worker threads")
      ->default_val(1);
  sweep->add_flag("--allow-uncertified", opts.allow_uncertified,
                  "run even when a certificate fails");
  add_common(sweep);

  CLI11_PARSE(app, argc, argv);

  if (dt_override > 0.0) opts.dt_override = dt_override;
  if (duration_override > 0.0) opts.duration_override = duration_override;

  try {
    if (app.got_subcommand(certify)) {
      return s2track::cmd_certify(s2track::parse_config_file(config_path), opts,
                                  std::cout);
    }
    if (app.got_subcommand(run)) {
      return s2track::cmd_run(s2track::parse_config_file(config_path), opts,
                              std::cout);
    }
    return s2track::cmd_sweep(sweep_patterns, opts, std::cout);
  } catch (const s2track::SimulationAbort& e) {
    std::cerr << "abort: " << e.what() << " (last good t = " << e.t_last()
              << " s)\n";
    return 3;
  } catch (const s2track::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const s2track::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const s2track::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
