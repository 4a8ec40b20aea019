#include "aimreg/analysis/omega_limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aimreg::analysis {

Vec OmegaLimitSamples::stacked(std::size_t i) const {
  Vec out(w.at(i).size() + z.at(i).size());
  out << w[i], z[i];
  return out;
}

OmegaLimitSamples sample_omega_limit(const PlantModel& plant, const Vec& rho,
                                     const std::vector<Vec>& seeds,
                                     double t_transient, double t_window,
                                     double h, double norm_cap, int stride) {
  plant.validate();
  if (seeds.empty()) {
    throw std::invalid_argument("sample_omega_limit: no seeds");
  }
  if (stride < 1) {
    throw std::invalid_argument("sample_omega_limit: stride must be >= 1");
  }
  const int sdim = plant.dims.s;
  const int n = plant.dims.n;

  numerics::Field zero_dynamics = [&](double, const Vec& x) {
    const Vec w = x.head(sdim);
    const Vec z = x.tail(n);
    Vec dot(sdim + n);
    dot << plant.s(rho, w), plant.f0(rho, w, z);
    return dot;
  };

  OmegaLimitSamples out;
  out.lo = Vec::Constant(sdim + n, std::numeric_limits<double>::infinity());
  out.hi = Vec::Constant(sdim + n, -std::numeric_limits<double>::infinity());

  for (const Vec& seed : seeds) {
    numerics::require_size(seed, sdim + n, "sample_omega_limit: seed");
    auto guard = [&](double t, const Vec& x, numerics::Trajectory&) {
      if (x.norm() > norm_cap) {
        throw AssumptionViolation(
            "sample_omega_limit: trajectory norm " + std::to_string(x.norm()) +
            " exceeded cap " + std::to_string(norm_cap) + " at t = " +
            std::to_string(t) + "; forward orbits of the exosystem/zero "
            "dynamics must stay bounded");
      }
    };
    numerics::Trajectory traj;
    try {
      traj = numerics::simulate(zero_dynamics, seed, 0.0,
                                t_transient + t_window, h, guard);
    } catch (const numerics::SimulationError& err) {
      throw AssumptionViolation(
          std::string("sample_omega_limit: integration failed (") + err.what() +
          "); forward orbits of the exosystem/zero dynamics must stay bounded");
    }
    std::size_t kept = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      if (traj.time(i) < t_transient) continue;
      const Vec& x = traj.state(i);
      out.lo = out.lo.cwiseMin(x);
      out.hi = out.hi.cwiseMax(x);
      if (kept++ % static_cast<std::size_t>(stride) != 0) continue;
      out.w.push_back(x.head(sdim));
      out.z.push_back(x.tail(n));
    }
  }
  return out;
}

double hausdorff_distance(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("hausdorff_distance: empty sample cloud");
  }
  auto directed = [](const std::vector<Vec>& from, const std::vector<Vec>& to) {
    double worst = 0.0;
    for (const Vec& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& q : to) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

std::vector<Vec> stacked_samples(const OmegaLimitSamples& s) {
  std::vector<Vec> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.stacked(i));
  return out;
}

}  // namespace aimreg::analysis
