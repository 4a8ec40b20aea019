#pragma once

#include <functional>

#include "aimreg/model/dims.hpp"
#include "aimreg/numerics/types.hpp"

namespace aimreg::model {

using numerics::Mat;
using numerics::Vec;

/// Observability-canonical pair: A is the d x d upper shift, C = (1, 0, ..., 0).
struct CanonicalAC {
  Mat A;
  Mat C;  // 1 x d
};

[[nodiscard]] CanonicalAC canonical_AC(int d);

/// C^1 compact-support clamp: identity on |y| <= Y, quadratic ease-out on
/// Y < |y| < Y + blend, constant sign(y) * (Y + blend/2) beyond. Odd in y.
[[nodiscard]] double clamp_injection(double y, double Y, double blend);

/// Output-injection internal-model data. phi and omega are the raw maps;
/// the regulator always evaluates them through the clamp (phi_sat/omega_sat),
/// which leaves them untouched wherever |y| <= sat_level.
struct ImmersionData {
  SystemDims dims;
  double sat_level = 0.0;
  double sat_blend = 0.0;

  std::function<Vec(double y)> phi;    // R -> R^d
  std::function<Mat(double y)> omega;  // R -> R^{d x q}
  std::function<Vec(const Vec& rho)> theta;
  std::function<Vec(const Vec& rho, const Vec& w, const Vec& z)> tau;
  std::function<double(const Vec& rho, const Vec& w, const Vec& z)> c;

  [[nodiscard]] double sat(double y) const {
    return clamp_injection(y, sat_level, sat_blend);
  }
  [[nodiscard]] Vec phi_sat(double y) const;
  [[nodiscard]] Mat omega_sat(double y) const;

  void validate() const;
};

}  // namespace aimreg::model
