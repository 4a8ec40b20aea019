#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "aimreg/numerics/types.hpp"

namespace aimreg::numerics {

/// Right-hand side of an autonomous-in-form ODE x' = f(t, x).
using Field = std::function<Vec(double t, const Vec& x)>;

/// Raised when a step produces or receives a non-finite state/derivative.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(double t, Vec state, const std::string& msg)
      : std::runtime_error(msg), t_(t), state_(std::move(state)) {}

  [[nodiscard]] double t() const { return t_; }
  [[nodiscard]] const Vec& state() const { return state_; }

 private:
  double t_;
  Vec state_;
};

/// One classical fourth-order Runge-Kutta step of size h taken at time t.
Vec rk4_step(const Field& f, const Vec& x, double t, double h);

/// Sampled solution: strictly increasing times, one state per time and
/// optional named scalar channels aligned with the time grid.
class Trajectory {
 public:
  void append(double t, Vec x);

  /// Records a channel value for the most recently appended sample.
  /// A channel created after samples already exist is back-filled with NaN.
  void set_channel(const std::string& name, double value);

  [[nodiscard]] std::size_t size() const { return t_.size(); }
  [[nodiscard]] bool empty() const { return t_.empty(); }
  [[nodiscard]] double time(std::size_t i) const { return t_.at(i); }
  [[nodiscard]] const Vec& state(std::size_t i) const { return x_.at(i); }
  [[nodiscard]] const std::vector<double>& times() const { return t_; }
  [[nodiscard]] const std::vector<Vec>& states() const { return x_; }
  [[nodiscard]] const std::vector<std::string>& channel_names() const {
    return names_;
  }
  [[nodiscard]] const std::vector<double>& channel(
      const std::string& name) const;
  [[nodiscard]] bool has_channel(const std::string& name) const;

  /// Throws unless every channel holds exactly one value per sample.
  void check_aligned() const;

 private:
  std::vector<double> t_;
  std::vector<Vec> x_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> values_;
  Eigen::Index dim_ = -1;
};

/// Raised by simulate(); carries whatever was integrated before the failure.
class SimulationError : public IntegrationError {
 public:
  SimulationError(const IntegrationError& cause, Trajectory partial)
      : IntegrationError(cause.t(), cause.state(), cause.what()),
        partial_(std::move(partial)) {}

  [[nodiscard]] const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Called once per recorded sample, after it has been appended.
using StepObserver =
    std::function<void(double t, const Vec& x, Trajectory& out)>;

/// Fixed-step RK4 driver over [t0, t1]. The final step is shortened so the
/// last sample lands exactly on t1.
Trajectory simulate(const Field& f, const Vec& x0, double t0, double t1,
                    double h, const StepObserver& observer = nullptr);

}  // namespace aimreg::numerics
