#pragma once

#include <string>
#include <vector>

#include "aimreg/cli/experiment.hpp"

namespace aimreg::cli {

struct SweepRow {
  double lambda = 0.0;
  double k = 0.0;
  Vec rho;  // (omega, sigma, mu) of this grid point
  RunSummary summary;
  std::string dir;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // grid order: lambda-major, then k, then rho

  bool found = false;  // some (lambda, k) met all thresholds at every rho point
  double best_lambda = 0.0;
  double best_k = 0.0;

  // soft monotonicity check: componentwise larger (lambda, k) should not do
  // worse; counted, not enforced
  int upward_violations = 0;

  std::string table_path;
  std::string summary_path;
};

/// Runs the (lambda, k) grid, times the parameter-box corners when
/// sweep_corners is set, each point isolated in its own subdirectory of
/// cfg.out_dir. Individual run failures are recorded per row; the sweep
/// continues. Rows land in deterministic grid order regardless of scheduling.
SweepResult run_sweep(const ExperimentConfig& cfg);

}  // namespace aimreg::cli
