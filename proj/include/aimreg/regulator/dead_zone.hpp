#pragma once

#include "aimreg/numerics/types.hpp"

namespace aimreg::regulator {

using numerics::Vec;

/// Scalar dead zone: exactly 0 on |x| <= ell, exactly x on |x| >= ell + 1,
/// cubic Hermite blend in between (value/slope 0 at ell, value ell + 1 and
/// slope 1 at ell + 1). C^1, odd, non-decreasing for every ell > 0.
[[nodiscard]] double dead_zone(double x, double ell);

/// Componentwise vector dead zone.
[[nodiscard]] Vec dzv(const Vec& v, double ell);

}  // namespace aimreg::regulator
