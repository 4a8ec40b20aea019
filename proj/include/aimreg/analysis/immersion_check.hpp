#pragma once

#include "aimreg/analysis/omega_limit.hpp"
#include "aimreg/model/immersion.hpp"
#include "aimreg/model/plant.hpp"

namespace aimreg::analysis {

using model::ImmersionData;

/// Pointwise defect of the internal-model identities at (rho, w, z):
///   r_dyn: time derivative of tau along the unforced flow minus
///          A tau + phi(tau_1) + omega(tau_1) theta(rho), maps clamped;
///   r_out: c(rho, w, z) - tau_1(rho, w, z).
/// Both vanish (to finite-difference accuracy) on the steady-state attractor;
/// away from it the clamp deliberately breaks r_dyn.
struct ImmersionResidual {
  Vec r_dyn;
  double r_out = 0.0;
};

[[nodiscard]] ImmersionResidual immersion_residual(const Vec& rho, const Vec& w,
                                                   const Vec& z,
                                                   const ImmersionData& im,
                                                   const PlantModel& plant);

/// Worst-case residual magnitudes over a sample cloud.
struct ImmersionSweepStats {
  std::size_t count = 0;
  double max_r_dyn = 0.0;
  double max_r_out = 0.0;
};

[[nodiscard]] ImmersionSweepStats immersion_sweep(const OmegaLimitSamples& samples,
                                                  const Vec& rho,
                                                  const ImmersionData& im,
                                                  const PlantModel& plant);

}  // namespace aimreg::analysis
