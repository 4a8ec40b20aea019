#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aimreg/analysis/immersion_check.hpp"
#include "aimreg/numerics/ode.hpp"
#include "aimreg/regulator/closed_loop.hpp"

namespace aimreg::analysis {

using numerics::Mat;
using regulator::ClosedLoop;

/// Tracking-error summary over one run.
struct RegulationMetrics {
  double sup_e_tail = 0.0;      // sup |e| over the trailing window
  double settling_time = 0.0;   // first t from which |e| <= eps to the end
  bool settled = false;
  double eps = 1e-2;
  double window_fraction = 0.2;
};

[[nodiscard]] RegulationMetrics regulation_metrics(
    const std::vector<double>& t, const std::vector<double>& e, double eps,
    double window_fraction);

/// Least-squares fit of v(t) ~ M exp(-a t) through the log of the samples;
/// entries below floor are skipped.
struct EnvelopeFit {
  double M = 0.0;
  double a = 0.0;
};

[[nodiscard]] EnvelopeFit fit_exponential_envelope(const std::vector<double>& t,
                                                   const std::vector<double>& v,
                                                   double floor = 1e-300);

/// Post-processing summary of one closed-loop trajectory.
struct DiagnosticsReport {
  RegulationMetrics regulation;

  /// Largest group norm during the early transient vs the whole run.
  struct GroupBound {
    std::string name;
    double early_max = 0.0;
    double run_max = 0.0;
  };
  std::vector<GroupBound> bounds;

  double v_first = 0.0;
  double v_final = 0.0;
  int v_violations_post = 0;  // energy increases beyond tolerance, late segment

  int dead_zone_sign_violations = 0;

  double theta_tilde_initial = 0.0;
  double theta_tilde_final = 0.0;

  // filled by callers that ran the extra rollouts; negative = not computed
  double pe_min_eig = -1.0;
  ImmersionSweepStats immersion;

  [[nodiscard]] bool bounded(double factor) const;
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> to_kv() const;
};

/// Evaluates the report over a packed closed-loop trajectory. P is the
/// quadratic form paired with the filter matrix F. The early transient is the
/// first early_fraction of the run; energy monotonicity is checked on the
/// last post_fraction.
[[nodiscard]] DiagnosticsReport diagnose_run(const ClosedLoop& loop,
                                             const numerics::Trajectory& traj,
                                             const Mat& P,
                                             double settle_eps = 1e-2,
                                             double window_fraction = 0.2,
                                             double early_fraction = 0.2,
                                             double post_fraction = 0.3,
                                             double v_step_tol = 1e-8);

}  // namespace aimreg::analysis
