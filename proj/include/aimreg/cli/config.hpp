#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "aimreg/numerics/types.hpp"

namespace aimreg::cli {

using numerics::Mat;
using numerics::Vec;

/// One experiment, fully determined: system parameters, initial conditions,
/// gains, integration grid, metric thresholds, sweep grids, output locations.
struct ExperimentConfig {
  // [system]
  double omega = 2.0;
  double sigma = 1.0;
  double mu = 1.5;
  double sat_level = 0.0;  // 0 = calibrate from a zero-dynamics rollout

  // [initial]
  Vec z0;
  Vec w0;
  double e0 = 0.5;
  Vec theta_hat0;  // empty = zeros
  Vec xi0;         // empty = zeros
  Mat X0;          // empty = zeros
  bool start_on_attractor = false;
  Vec z_box_lo;  // admissible box for z(0)
  Vec z_box_hi;
  double e_max = 1.0;  // |e(0)| <= e_max

  // [gains]
  std::vector<double> roots;  // empty = default ladder
  double lambda = 10.0;
  double k = 10.0;
  double ell = 0.0;  // 0 = auto from the parameter box

  // [integrator]
  double h = 1e-3;
  double horizon = 100.0;

  // [metrics]
  double settle_eps = 1e-2;
  double window_fraction = 0.2;
  double bound_factor = 10.0;
  bool extras = true;  // steady-state excitation + immersion diagnostics

  // [sweep]
  std::vector<double> lambda_grid;
  std::vector<double> k_grid;
  bool sweep_corners = false;  // also sweep the parameter-box corners

  // [coupling]
  double coupling_rho = 0.0;  // error-coupling magnitudes, 0 = autonomous
  double coupling_w = 0.0;

  // [output]
  std::string out_dir = "out";
  int stride = 100;  // every Nth integration step goes to the CSV
};

/// All validation problems of a config file, reported at once.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  [[nodiscard]] const std::vector<std::string>& issues() const {
    return issues_;
  }

 private:
  std::vector<std::string> issues_;
};

/// Config with the worked example's defaults filled in.
[[nodiscard]] ExperimentConfig default_config();

/// Parses the [section] / key = value format. Unknown sections or keys,
/// malformed values, and semantic violations are all collected and thrown
/// together as one ConfigError.
[[nodiscard]] ExperimentConfig parse_config(std::istream& in);
[[nodiscard]] ExperimentConfig parse_config_file(const std::string& path);

/// Re-checks the semantic invariants (used after CLI overrides).
void validate_config(const ExperimentConfig& cfg);

}  // namespace aimreg::cli
