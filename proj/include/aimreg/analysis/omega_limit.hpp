#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "aimreg/model/plant.hpp"
#include "aimreg/numerics/ode.hpp"

namespace aimreg::analysis {

using model::PlantModel;
using numerics::Vec;

/// Raised when a simulation contradicts one of the standing assumptions the
/// design rests on (bounded forward trajectories, compact invariant sets).
class AssumptionViolation : public std::runtime_error {
 public:
  explicit AssumptionViolation(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// Post-transient sample cloud of the zero dynamics, approximating the
/// steady-state attractor, with its bounding box.
struct OmegaLimitSamples {
  std::vector<Vec> w;
  std::vector<Vec> z;
  Vec lo;  // bounding box over stacked (w, z)
  Vec hi;

  [[nodiscard]] std::size_t size() const { return z.size(); }
  [[nodiscard]] Vec stacked(std::size_t i) const;
};

/// Integrates the unforced (e = 0) dynamics
///   w' = s(rho, w),  z' = f0(rho, w, z)
/// from each seed (stacked (w, z) vectors), discards [0, t_transient), and
/// returns every stride-th sample over the following t_window. Trajectories
/// whose norm exceeds norm_cap violate the bounded-orbits assumption and
/// throw.
[[nodiscard]] OmegaLimitSamples sample_omega_limit(
    const PlantModel& plant, const Vec& rho, const std::vector<Vec>& seeds,
    double t_transient = 200.0, double t_window = 50.0, double h = 1e-3,
    double norm_cap = 1e6, int stride = 1);

/// Symmetric Hausdorff distance between two stacked-sample clouds.
[[nodiscard]] double hausdorff_distance(const std::vector<Vec>& a,
                                        const std::vector<Vec>& b);

/// Convenience: stacked (w, z) vectors of a sample cloud.
[[nodiscard]] std::vector<Vec> stacked_samples(const OmegaLimitSamples& s);

}  // namespace aimreg::analysis
