#pragma once

#include <vector>

#include "aimreg/model/immersion.hpp"
#include "aimreg/model/param_box.hpp"
#include "aimreg/numerics/types.hpp"

namespace aimreg::regulator {

using numerics::Mat;
using numerics::Vec;

/// Monic polynomial coefficients from its roots: for roots r_1..r_{d-1} the
/// result is b = (1, b_2, ..., b_d) with
///   prod_i (x - r_i) = x^{d-1} + b_2 x^{d-2} + ... + b_d.
/// Roots must be real, strictly negative and pairwise distinct (the filter
/// built from b needs distinct stable eigenvalues). Empty input gives b = (1).
[[nodiscard]] Vec poly_to_b(const std::vector<double>& roots);

struct FilterMatrices {
  Mat F;  // (d-1) x (d-1)
  Mat G;  // (d-1) x d
};

/// Filter matrices for the adapted-parameter estimator:
///   F = first column (-b_2, ..., -b_d), superdiagonal identity block;
///   G = same pattern widened by a trailing identity column.
/// The eigenvalues of F are exactly the roots b came from.
[[nodiscard]] FilterMatrices build_F_G(const Vec& b);

/// Output-injection vector K = shift(b) + lambda * b, i.e.
/// K_i = b_{i+1} + lambda b_i with b_{d+1} = 0.
[[nodiscard]] Vec compute_K(const Vec& b, double lambda);

/// Stable, distinct, order-one filter roots: {-1, -2, ..., -(d-1)}.
[[nodiscard]] std::vector<double> default_roots(int d);

/// Dead-zone amplitude covering every parameter vector the box can produce:
/// 1.1 x the largest |theta(rho)| over a 9-per-axis grid.
[[nodiscard]] double default_ell(const model::ImmersionData& im,
                                 const model::ParamBox& box);

/// Complete gain set for one regulator instance. b, F, G, K are derived from
/// roots and lambda at construction. blend is the dead-zone transition width,
/// fixed at 1 by the dead zone's breakpoints (ell and ell + 1).
struct RegulatorGains {
  std::vector<double> roots;
  double lambda = 10.0;
  double k = 10.0;
  double ell = 1.0;
  double blend = 1.0;

  Vec b;
  Mat F;
  Mat G;
  Vec K;
};

/// Validates and derives a full gain set. k = 0 is accepted: it switches the
/// stabilizing term off, which diagnostic runs use as a negative control;
/// such runs are expected to fail the regulation thresholds downstream.
[[nodiscard]] RegulatorGains make_gains(int d, const std::vector<double>& roots,
                                        double lambda, double k, double ell);

}  // namespace aimreg::regulator
