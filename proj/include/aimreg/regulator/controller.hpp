#pragma once

#include "aimreg/model/immersion.hpp"
#include "aimreg/regulator/gains.hpp"
#include "aimreg/numerics/types.hpp"

namespace aimreg::regulator {

using model::ImmersionData;
using model::SystemDims;

/// Internal state of one regulator instance.
struct RegulatorState {
  Vec xi;         // d
  Vec theta_hat;  // q
  Mat X;          // (d-1) x q

  [[nodiscard]] static RegulatorState zero(const SystemDims& dims);
  void validate(const SystemDims& dims) const;
};

/// M(X): X with a zero row stacked on top, d x q. The zero top row is what
/// keeps the first internal-model channel free of filter feedthrough.
[[nodiscard]] Mat m_of_x(const Mat& X);

/// Regressor beta(X, xi1), the first row of M(X) shifted once plus the first
/// row of the clamped omega: beta^T = CA M(X) + C omega(xi1).
[[nodiscard]] Vec beta_map(const Mat& X, double xi1, const ImmersionData& im);

/// Injection gain H(X, xi1) = M(X) beta(X, xi1) + K. Its first component is
/// always K_1 because M(X) has a zero top row.
[[nodiscard]] Vec h_map(const Mat& X, double xi1, const Vec& K,
                        const ImmersionData& im);

/// Structural corruptions used only by the algebra-validation oracles as
/// negative controls; `none` is the real controller.
enum class HMutation { none, drop_K };

struct RegulatorRates {
  double u = 0.0;
  double v = 0.0;
  RegulatorState dot;
};

/// One derivative evaluation of the regulator at tracking error e:
///   v = -k e,  u = xi_1 + v,
///   xi'        = A xi + phi(xi_1) + omega(xi_1) theta_hat + H v - M(X) dzv(theta_hat),
///   theta_hat' = beta v - dzv(theta_hat),
///   X'         = F X + G omega(xi_1),
/// with phi and omega always evaluated through the clamp.
[[nodiscard]] RegulatorRates regulator_derivative(
    const RegulatorState& rs, double e, const RegulatorGains& gains,
    const ImmersionData& im, HMutation mutation = HMutation::none);

}  // namespace aimreg::regulator
