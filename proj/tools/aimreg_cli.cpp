// Experiment harness: one closed-loop run per config file, or a gain sweep
// over the configured grids. All outputs are files; stdout is a short
// human-readable digest.
//
// Exit codes: 0 thresholds met, 1 thresholds unmet, 2 integration or I/O
// failure, 3 configuration problem.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "aimreg/cli/experiment.hpp"
#include "aimreg/cli/sweep.hpp"

namespace {

int report_config_error(const aimreg::cli::ConfigError& err) {
  std::fprintf(stderr, "configuration rejected:\n");
  for (const auto& issue : err.issues())
    std::fprintf(stderr, "  - %s\n", issue.c_str());
  return 3;
}

int do_run(const aimreg::cli::ExperimentConfig& cfg, bool verbose) {
  const auto artifacts = aimreg::cli::run_experiment(cfg);
  if (artifacts.integration_failed)
    std::printf("integration failed: %s\n", artifacts.failure_reason.c_str());
  std::printf("trajectory: %s\n", artifacts.trajectory_path.c_str());
  std::printf("summary:    %s\n", artifacts.summary_path.c_str());
  std::printf("plot:       %s\n", artifacts.plot_path.c_str());
  const auto& s = artifacts.summary;
  std::printf("settled=%s settling_time=%g sup_e_tail=%g exit=%d\n",
              s.settled ? "yes" : "no", s.settling_time, s.sup_e_tail,
              artifacts.exit_code);
  if (verbose)
    for (const auto& [key, value] : artifacts.report.to_kv())
      std::printf("  %s = %s\n", key.c_str(), value.c_str());
  return artifacts.exit_code;
}

int do_sweep(const aimreg::cli::ExperimentConfig& cfg, bool verbose) {
  const auto result = aimreg::cli::run_sweep(cfg);
  std::printf("sweep table: %s\n", result.table_path.c_str());
  std::printf("points=%zu upward_violations=%d\n", result.rows.size(),
              result.upward_violations);
  if (result.found)
    std::printf("smallest passing gains: lambda=%g k=%g\n", result.best_lambda,
                result.best_k);
  else
    std::printf("no (lambda, k) on the grid met all thresholds\n");
  if (verbose)
    for (const auto& row : result.rows)
      std::printf("  lambda=%g k=%g omega=%g sigma=%g mu=%g exit=%d\n",
                  row.lambda, row.k, row.rho(0), row.rho(1), row.rho(2),
                  row.summary.exit_code);
  return result.found ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive internal-model regulator experiment harness"};
  app.set_help_flag("--help", "print usage");  // frees -h / --h for the step

  std::string config_path;
  std::string out_dir;
  double lambda = 0.0, k = 0.0, h = 0.0, horizon = 0.0;
  bool sweep = false;
  bool verbose = false;

  app.add_option("-c,--config", config_path, "experiment config file")
      ->required();
  app.add_option("-o,--output-dir", out_dir, "override [output] out_dir");
  auto* opt_lambda =
      app.add_option("--lambda", lambda, "override [gains] lambda");
  auto* opt_k = app.add_option("--k", k, "override [gains] k");
  auto* opt_h = app.add_option("--h", h, "override [integrator] h");
  auto* opt_horizon =
      app.add_option("--horizon", horizon, "override [integrator] horizon");
  app.add_flag("--sweep", sweep, "run the configured (lambda, k) grid");
  app.add_flag("-v,--verbose", verbose, "print the full diagnostics digest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;  // command-line problems share the config exit code
  }

  try {
    auto cfg = aimreg::cli::parse_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (opt_lambda->count() > 0) cfg.lambda = lambda;
    if (opt_k->count() > 0) cfg.k = k;
    if (opt_h->count() > 0) cfg.h = h;
    if (opt_horizon->count() > 0) cfg.horizon = horizon;
    aimreg::cli::validate_config(cfg);
    return sweep ? do_sweep(cfg, verbose) : do_run(cfg, verbose);
  } catch (const aimreg::cli::ConfigError& err) {
    return report_config_error(err);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "run failed: %s\n", err.what());
    return 2;
  }
}
