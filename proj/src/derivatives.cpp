#include "aimreg/numerics/derivatives.hpp"

#include <algorithm>
#include <cmath>

namespace aimreg::numerics {

Vec directional_derivative(const VecMap& map, const Vec& x, const Vec& dir,
                           double h_rel) {
  if (!(h_rel > 0.0) || !std::isfinite(h_rel)) {
    throw std::invalid_argument("directional_derivative: h_rel must be positive");
  }
  require_finite(x, "directional_derivative: x");
  require_finite(dir, "directional_derivative: dir");
  if (dir.size() != x.size()) {
    throw std::invalid_argument("directional_derivative: dir/x length mismatch");
  }
  const double h = h_rel * std::max(1.0, x.norm());
  const Vec fp = map(x + h * dir);
  const Vec fm = map(x - h * dir);
  if (fp.size() != fm.size()) {
    throw std::invalid_argument("directional_derivative: map output length varies");
  }
  Vec out = (fp - fm) / (2.0 * h);
  require_finite(out, "directional_derivative: result");
  return out;
}

}  // namespace aimreg::numerics
