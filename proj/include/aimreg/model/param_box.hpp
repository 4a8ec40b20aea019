#pragma once

#include <vector>

#include "aimreg/numerics/types.hpp"

namespace aimreg::model {

using numerics::Vec;

/// Compact axis-aligned box of admissible parameter vectors.
class ParamBox {
 public:
  /// Empty placeholder box (dim 0); rejected by consumers that validate.
  ParamBox() = default;
  ParamBox(Vec lo, Vec hi);

  [[nodiscard]] const Vec& lo() const { return lo_; }
  [[nodiscard]] const Vec& hi() const { return hi_; }
  [[nodiscard]] Eigen::Index dim() const { return lo_.size(); }
  [[nodiscard]] bool contains(const Vec& rho) const;
  [[nodiscard]] Vec center() const { return 0.5 * (lo_ + hi_); }

  /// Tensor grid with per_axis points per axis, endpoints included
  /// (per_axis == 1 yields the box center).
  [[nodiscard]] std::vector<Vec> grid(int per_axis) const;

 private:
  Vec lo_;
  Vec hi_;
};

}  // namespace aimreg::model
