#include "aimreg/model/param_box.hpp"

#include <stdexcept>

namespace aimreg::model {

ParamBox::ParamBox(Vec lo, Vec hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() == 0 || lo_.size() != hi_.size()) {
    throw std::invalid_argument("ParamBox: lo/hi must be non-empty and equal length");
  }
  numerics::require_finite(lo_, "ParamBox: lo");
  numerics::require_finite(hi_, "ParamBox: hi");
  for (Eigen::Index i = 0; i < lo_.size(); ++i) {
    if (!(lo_(i) <= hi_(i))) {
      throw std::invalid_argument("ParamBox: lo > hi on axis " + std::to_string(i));
    }
  }
}

bool ParamBox::contains(const Vec& rho) const {
  if (rho.size() != lo_.size()) return false;
  for (Eigen::Index i = 0; i < lo_.size(); ++i) {
    if (!(rho(i) >= lo_(i) && rho(i) <= hi_(i))) return false;
  }
  return true;
}

std::vector<Vec> ParamBox::grid(int per_axis) const {
  if (per_axis < 1) {
    throw std::invalid_argument("ParamBox::grid: per_axis must be >= 1");
  }
  const auto p = static_cast<std::size_t>(lo_.size());
  if (per_axis == 1) return {center()};

  std::size_t total = 1;
  for (std::size_t i = 0; i < p; ++i) total *= static_cast<std::size_t>(per_axis);

  std::vector<Vec> out;
  out.reserve(total);
  std::vector<int> idx(p, 0);
  while (true) {
    Vec point(lo_.size());
    for (std::size_t i = 0; i < p; ++i) {
      const double frac = static_cast<double>(idx[i]) / (per_axis - 1);
      point(static_cast<Eigen::Index>(i)) =
          lo_(static_cast<Eigen::Index>(i)) +
          frac * (hi_(static_cast<Eigen::Index>(i)) - lo_(static_cast<Eigen::Index>(i)));
    }
    out.push_back(std::move(point));
    std::size_t axis = 0;
    while (axis < p && ++idx[axis] == per_axis) {
      idx[axis] = 0;
      ++axis;
    }
    if (axis == p) break;
  }
  return out;
}

}  // namespace aimreg::model
