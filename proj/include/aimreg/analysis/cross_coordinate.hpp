#pragma once

#include <string>

#include "aimreg/regulator/closed_loop.hpp"

namespace aimreg::analysis {

using regulator::ClosedLoop;
using regulator::ClosedLoopState;
using regulator::HMutation;

/// Outcome of one two-route consistency run.
struct CrossCoordinateResult {
  double max_deviation = 0.0;
  std::string worst_channel;
  double t_worst = 0.0;
  bool exceeded = false;  // some channel went beyond fail_tol
  std::string first_channel;
  double t_first = 0.0;
};

/// Integrates the closed loop twice along independent routes: once in the
/// controller's own coordinates, once in estimator-error coordinates (eta,
/// theta_tilde) whose dynamics are derived by hand from the same design
/// algebra. The raw run is then mapped pointwise into the second chart and
/// the largest channel deviation reported. The two routes share no derivative
/// code beyond the model maps, so agreement certifies the regressor/injection
/// algebra end to end. The optional mutation corrupts only the raw-route
/// controller and serves as the negative control.
[[nodiscard]] CrossCoordinateResult cross_coordinate_oracle(
    const ClosedLoop& loop, const ClosedLoopState& init, double t_total,
    double h, HMutation mutation = HMutation::none,
    double fail_tol = std::numeric_limits<double>::infinity());

}  // namespace aimreg::analysis
