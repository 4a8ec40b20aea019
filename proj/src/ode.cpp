#include "aimreg/numerics/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aimreg::numerics {

namespace {

Vec eval_checked(const Field& f, double t, const Vec& x) {
  Vec dx = f(t, x);
  if (dx.size() != x.size()) {
    throw IntegrationError(t, x,
                           "rk4_step: field returned length " +
                               std::to_string(dx.size()) + " for state length " +
                               std::to_string(x.size()) + " at t=" +
                               std::to_string(t));
  }
  if (!dx.allFinite()) {
    throw IntegrationError(
        t, x, "rk4_step: non-finite derivative at t=" + std::to_string(t));
  }
  return dx;
}

}  // namespace

Vec rk4_step(const Field& f, const Vec& x, double t, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("rk4_step: step size must be positive and finite");
  }
  if (!x.allFinite()) {
    throw IntegrationError(t, x,
                           "rk4_step: non-finite state at t=" + std::to_string(t));
  }
  const Vec k1 = eval_checked(f, t, x);
  const Vec k2 = eval_checked(f, t + 0.5 * h, x + (0.5 * h) * k1);
  const Vec k3 = eval_checked(f, t + 0.5 * h, x + (0.5 * h) * k2);
  const Vec k4 = eval_checked(f, t + h, x + h * k3);
  Vec out = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!out.allFinite()) {
    throw IntegrationError(
        t, x, "rk4_step: non-finite result for step at t=" + std::to_string(t));
  }
  return out;
}

void Trajectory::append(double t, Vec x) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("Trajectory::append: non-finite time");
  }
  if (!x.allFinite()) {
    throw std::invalid_argument("Trajectory::append: non-finite state");
  }
  if (!t_.empty() && !(t > t_.back())) {
    throw std::invalid_argument("Trajectory::append: times must be strictly increasing");
  }
  if (dim_ < 0) {
    dim_ = x.size();
  } else if (x.size() != dim_) {
    throw std::invalid_argument("Trajectory::append: state dimension changed");
  }
  t_.push_back(t);
  x_.push_back(std::move(x));
}

void Trajectory::set_channel(const std::string& name, double value) {
  if (t_.empty()) {
    throw std::logic_error("Trajectory::set_channel: no sample appended yet");
  }
  std::size_t idx = names_.size();
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) {
      idx = i;
      break;
    }
  }
  if (idx == names_.size()) {
    names_.push_back(name);
    values_.emplace_back(t_.size() - 1,
                         std::numeric_limits<double>::quiet_NaN());
  }
  auto& col = values_[idx];
  if (col.size() >= t_.size()) {
    throw std::logic_error("Trajectory::set_channel: channel '" + name +
                           "' already set for the current sample");
  }
  col.resize(t_.size() - 1, std::numeric_limits<double>::quiet_NaN());
  col.push_back(value);
}

const std::vector<double>& Trajectory::channel(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return values_[i];
  }
  throw std::out_of_range("Trajectory::channel: no channel named '" + name + "'");
}

bool Trajectory::has_channel(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

void Trajectory::check_aligned() const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (values_[i].size() != t_.size()) {
      throw std::logic_error("Trajectory: channel '" + names_[i] + "' holds " +
                             std::to_string(values_[i].size()) + " values for " +
                             std::to_string(t_.size()) + " samples");
    }
  }
}

Trajectory simulate(const Field& f, const Vec& x0, double t0, double t1,
                    double h, const StepObserver& observer) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("simulate: step size must be positive and finite");
  }
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 >= t0)) {
    throw std::invalid_argument("simulate: need finite t1 >= t0");
  }
  require_finite(x0, "simulate: x0");

  Trajectory out;
  out.append(t0, x0);
  if (observer) observer(t0, x0, out);

  const double total = t1 - t0;
  const auto n_full = static_cast<std::size_t>(std::floor(total / h + 1e-9));
  Vec x = x0;
  try {
    for (std::size_t i = 1; i <= n_full; ++i) {
      const double t_prev = t0 + static_cast<double>(i - 1) * h;
      x = rk4_step(f, x, t_prev, h);
      const double t = (i == n_full && t0 + static_cast<double>(n_full) * h >= t1)
                           ? t1
                           : t0 + static_cast<double>(i) * h;
      out.append(t, x);
      if (observer) observer(t, x, out);
    }
    const double t_last = out.times().back();
    const double rem = t1 - t_last;
    if (rem > h * 1e-9) {
      x = rk4_step(f, x, t_last, rem);
      out.append(t1, x);
      if (observer) observer(t1, x, out);
    }
  } catch (const IntegrationError& err) {
    throw SimulationError(err, std::move(out));
  }
  return out;
}

}  // namespace aimreg::numerics
