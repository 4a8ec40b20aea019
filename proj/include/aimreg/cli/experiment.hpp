#pragma once

#include <string>

#include "aimreg/analysis/report.hpp"
#include "aimreg/cli/config.hpp"

namespace aimreg::cli {

/// Flat result row of one run, the per-run record a sweep tabulates.
struct RunSummary {
  int exit_code = 0;  // 0 ok, 1 thresholds unmet, 2 integration failure
  bool settled = false;
  double settling_time = 0.0;
  double sup_e_tail = 0.0;
  double theta_tilde_initial = 0.0;
  double theta_tilde_final = 0.0;
  double max_state_norm = 0.0;
  double pe_min_eig = -1.0;  // negative = not computed
  int v_violations = 0;
};

struct RunArtifacts {
  int exit_code = 0;
  bool integration_failed = false;
  std::string failure_reason;

  ExperimentConfig resolved;  // auto values (ell, sat_level, roots) filled in
  analysis::DiagnosticsReport report;
  RunSummary summary;

  std::string trajectory_path;
  std::string summary_path;
  std::string plot_path;
};

/// Runs one configured closed-loop experiment and writes trajectory.csv,
/// summary.txt and plot.gp into cfg.out_dir. Deterministic: identical
/// configs produce byte-identical artifacts. Integration failure still
/// writes the partial trajectory and reports exit code 2.
RunArtifacts run_experiment(const ExperimentConfig& cfg);

/// Serialization order of RunSummary columns in sweep tables.
[[nodiscard]] std::vector<std::string> run_summary_columns();
[[nodiscard]] Vec run_summary_row(double lambda, double k, const Vec& rho,
                                  const RunSummary& s);

}  // namespace aimreg::cli
