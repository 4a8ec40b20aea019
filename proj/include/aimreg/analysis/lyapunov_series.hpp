#pragma once

#include <vector>

#include "aimreg/analysis/transforms.hpp"
#include "aimreg/numerics/types.hpp"

namespace aimreg::analysis {

/// Energy along a run: V = chi_1^2 + zeta^T P zeta + theta_tilde^T theta_tilde.
[[nodiscard]] double lyapunov_value(const TransformedState& ts, const Mat& P);

[[nodiscard]] std::vector<double> lyapunov_series(
    const std::vector<TransformedState>& states, const Mat& P);

/// Number of steps where V rises by more than per_step_tol.
[[nodiscard]] int count_increase_violations(const std::vector<double>& V,
                                            double per_step_tol);

}  // namespace aimreg::analysis
