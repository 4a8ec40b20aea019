#include "aimreg/model/immersion.hpp"

#include <cmath>
#include <stdexcept>

namespace aimreg::model {

CanonicalAC canonical_AC(int d) {
  if (d < 1) {
    throw std::invalid_argument("canonical_AC: d must be >= 1");
  }
  CanonicalAC out;
  out.A = Mat::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) out.A(i, i + 1) = 1.0;
  out.C = Mat::Zero(1, d);
  out.C(0, 0) = 1.0;
  return out;
}

double clamp_injection(double y, double Y, double blend) {
  if (!(Y > 0.0) || !(blend > 0.0)) {
    throw std::invalid_argument("clamp_injection: Y and blend must be positive");
  }
  const double a = std::abs(y);
  if (a <= Y) return y;
  const double sign = (y < 0.0) ? -1.0 : 1.0;
  if (a >= Y + blend) return sign * (Y + 0.5 * blend);
  // quadratic ease-out: slope 1 at the inner joint, 0 at the outer one
  const double t = (a - Y) / blend;
  return sign * (Y + blend * t * (1.0 - 0.5 * t));
}

Vec ImmersionData::phi_sat(double y) const {
  Vec out = phi(sat(y));
  numerics::require_size(out, dims.d, "ImmersionData::phi");
  return out;
}

Mat ImmersionData::omega_sat(double y) const {
  Mat out = omega(sat(y));
  numerics::require_shape(out, dims.d, dims.q, "ImmersionData::omega");
  return out;
}

void ImmersionData::validate() const {
  dims.validate();
  if (!(sat_level > 0.0) || !(sat_blend > 0.0)) {
    throw std::invalid_argument("ImmersionData: sat_level and sat_blend must be positive");
  }
  if (!phi || !omega || !theta || !tau || !c) {
    throw std::invalid_argument("ImmersionData: phi, omega, theta, tau, c must all be set");
  }
}

}  // namespace aimreg::model
