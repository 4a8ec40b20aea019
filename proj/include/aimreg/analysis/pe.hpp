#pragma once

#include <vector>

#include "aimreg/analysis/sigma_map.hpp"
#include "aimreg/numerics/types.hpp"

namespace aimreg::analysis {

using numerics::Mat;
using numerics::Vec;

/// Gram matrix of a sampled regressor window: sum gamma gamma^T dt.
[[nodiscard]] Mat pe_gram(const std::vector<Vec>& gamma, double dt);

/// Smallest eigenvalue of the window Gram matrix. Strictly positive iff no
/// constant vector annihilates the regressor over the whole window, which is
/// the checkable surrogate for persistence of excitation.
[[nodiscard]] double pe_check(const std::vector<Vec>& gamma, double dt);

/// Regressor series gamma(t) = beta(X(t), tau_1(z(t))) along the tail of a
/// filter rollout, keeping samples with t >= t_from.
[[nodiscard]] std::vector<Vec> regressor_series(const SigmaRollout& roll,
                                                const Vec& rho,
                                                const ImmersionData& im,
                                                double t_from);

}  // namespace aimreg::analysis
