#pragma once

#include <functional>

#include "aimreg/numerics/types.hpp"

namespace aimreg::numerics {

using VecMap = std::function<Vec(const Vec& x)>;

/// Central-difference directional derivative D map(x)[dir], using step
/// h = h_rel * max(1, |x|). The direction is not normalized, so the result
/// scales linearly with |dir|.
Vec directional_derivative(const VecMap& map, const Vec& x, const Vec& dir,
                           double h_rel = 1e-5);

}  // namespace aimreg::numerics
