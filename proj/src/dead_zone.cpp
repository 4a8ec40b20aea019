#include "aimreg/regulator/dead_zone.hpp"

#include <cmath>
#include <stdexcept>

namespace aimreg::regulator {

double dead_zone(double x, double ell) {
  if (!(ell > 0.0) || !std::isfinite(ell)) {
    throw std::invalid_argument("dead_zone: ell must be positive");
  }
  const double a = std::abs(x);
  if (a <= ell) return 0.0;
  if (a >= ell + 1.0) return x;
  // Blend slope stays in (0, 1.5 ell + 1.25]; monotone for every ell > 0.
  const double t = a - ell;
  const double blend = (ell + 1.0) * t * t * (3.0 - 2.0 * t) + t * t * (t - 1.0);
  return std::copysign(blend, x);
}

Vec dzv(const Vec& v, double ell) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = dead_zone(v(i), ell);
  return out;
}

}  // namespace aimreg::regulator
