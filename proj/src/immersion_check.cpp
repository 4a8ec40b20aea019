#include "aimreg/analysis/immersion_check.hpp"

#include <algorithm>
#include <cmath>

#include "aimreg/model/immersion.hpp"
#include "aimreg/numerics/derivatives.hpp"

namespace aimreg::analysis {

ImmersionResidual immersion_residual(const Vec& rho, const Vec& w, const Vec& z,
                                     const ImmersionData& im,
                                     const PlantModel& plant) {
  const auto& dims = plant.dims;
  numerics::require_size(rho, dims.p, "immersion_residual: rho");
  numerics::require_size(w, dims.s, "immersion_residual: w");
  numerics::require_size(z, dims.n, "immersion_residual: z");

  Vec point(dims.p + dims.s + dims.n);
  point << rho, w, z;
  numerics::VecMap tau_stacked = [&](const Vec& x) {
    return im.tau(x.head(dims.p), x.segment(dims.p, dims.s), x.tail(dims.n));
  };
  Vec flow(dims.p + dims.s + dims.n);
  flow << Vec::Zero(dims.p), plant.s(rho, w), plant.f0(rho, w, z);

  const Vec tau = im.tau(rho, w, z);
  const auto [A, C] = model::canonical_AC(dims.d);

  ImmersionResidual r;
  r.r_dyn = numerics::directional_derivative(tau_stacked, point, flow) -
            (A * tau + im.phi_sat(tau(0)) + im.omega_sat(tau(0)) * im.theta(rho));
  r.r_out = im.c(rho, w, z) - tau(0);
  return r;
}

ImmersionSweepStats immersion_sweep(const OmegaLimitSamples& samples,
                                    const Vec& rho, const ImmersionData& im,
                                    const PlantModel& plant) {
  ImmersionSweepStats stats;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto r = immersion_residual(rho, samples.w[i], samples.z[i], im, plant);
    stats.max_r_dyn =
        std::max(stats.max_r_dyn, r.r_dyn.lpNorm<Eigen::Infinity>());
    stats.max_r_out = std::max(stats.max_r_out, std::abs(r.r_out));
    ++stats.count;
  }
  return stats;
}

}  // namespace aimreg::analysis
