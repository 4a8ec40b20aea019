#pragma once

#include "aimreg/model/immersion.hpp"
#include "aimreg/model/plant.hpp"
#include "aimreg/numerics/ode.hpp"

namespace aimreg::analysis {

using model::ImmersionData;
using model::PlantModel;
using numerics::Mat;
using numerics::Vec;

/// Joint rollout of the unforced dynamics and the estimator filter
///   w' = s(rho, w),  z' = f0(rho, w, z),  X' = F X + G omega(tau_1(z)),
/// from X(0) = 0. Because F is Hurwitz, X(t) forgets the zero initial
/// condition exponentially and converges onto the steady-state filter graph
/// over the attractor; the tail of a long rollout therefore evaluates that
/// graph along the trajectory.
struct SigmaRollout {
  numerics::Trajectory traj;  // stacked (w, z, X row-major)
  int s = 0;
  int n = 0;
  int d = 0;
  int q = 0;

  [[nodiscard]] Vec w_at(std::size_t i) const;
  [[nodiscard]] Vec z_at(std::size_t i) const;
  [[nodiscard]] Mat X_at(std::size_t i) const;
};

/// X0 empty (0 x 0) starts the filter at zero; any other shape must be
/// (d-1) x q. Distinct starts contract together at the rate of F's slowest
/// eigenvalue, which is how the rollout length is chosen.
[[nodiscard]] SigmaRollout sigma_rollout(const PlantModel& plant, const Vec& rho,
                                         const Mat& F, const Mat& G,
                                         const ImmersionData& im, const Vec& w0,
                                         const Vec& z0, double t_total,
                                         double h = 1e-3, const Mat& X0 = Mat());

}  // namespace aimreg::analysis
