#include "aimreg/analysis/cross_coordinate.hpp"

#include <cmath>

#include "aimreg/analysis/transforms.hpp"
#include "aimreg/regulator/dead_zone.hpp"

namespace aimreg::analysis {

namespace {

using model::SystemDims;
using numerics::Vec;

std::vector<std::string> transformed_names(const SystemDims& dims) {
  std::vector<std::string> names;
  for (int i = 0; i < dims.p; ++i) names.push_back("rho" + std::to_string(i + 1));
  for (int i = 0; i < dims.s; ++i) names.push_back("w" + std::to_string(i + 1));
  for (int i = 0; i < dims.n; ++i) names.push_back("z" + std::to_string(i + 1));
  names.push_back("e");
  for (int i = 0; i < dims.d; ++i) names.push_back("eta" + std::to_string(i + 1));
  for (int i = 0; i < dims.q; ++i)
    names.push_back("theta_tilde" + std::to_string(i + 1));
  for (int i = 0; i < dims.d - 1; ++i)
    for (int j = 0; j < dims.q; ++j)
      names.push_back("X" + std::to_string(i + 1) + std::to_string(j + 1));
  return names;
}

/// Derivative field of the estimator-error chart:
///   e'           = qfun + eta_1 + v
///   eta'         = A eta + b beta^T theta_tilde + K v + phi + omega theta
///   theta_tilde' = beta v - dzv(theta_tilde + theta)
///   X'           = F X + G omega(eta_1)
/// with v = -k e and the plant/exosystem equations unchanged.
numerics::Field transformed_field(const ClosedLoop& loop) {
  const SystemDims dims = loop.plant.dims;
  return [loop, dims](double, const Vec& x) {
    const auto s = regulator::unpack_state(x, dims);  // xi slot holds eta here
    const Vec& eta = s.reg.xi;
    const Vec& tilde = s.reg.theta_hat;
    const double eta1 = eta(0);
    const double v = -loop.gains.k * s.e;

    const Vec theta = loop.im.theta(s.rho);
    const Vec beta = regulator::beta_map(s.reg.X, eta1, loop.im);
    const Mat omega = loop.im.omega_sat(eta1);

    regulator::ClosedLoopState dot;
    dot.rho = loop.plant.s_rho_at(s.rho, s.w, s.z, s.e) * s.e;
    dot.w = loop.plant.s(s.rho, s.w) +
            loop.plant.s_w_at(s.rho, s.w, s.z, s.e) * s.e;
    dot.z = loop.plant.f0(s.rho, s.w, s.z) +
            loop.plant.f1(s.rho, s.w, s.z, s.e) * s.e;
    dot.e = loop.plant.qfun(s.rho, s.w, s.z, s.e) + eta1 + v;

    dot.reg.xi = Vec::Zero(dims.d);
    dot.reg.xi.head(dims.d - 1) = eta.tail(dims.d - 1);
    dot.reg.xi += loop.gains.b * beta.dot(tilde) + loop.gains.K * v +
                  loop.im.phi_sat(eta1) + omega * theta;
    dot.reg.theta_hat =
        beta * v - regulator::dzv(tilde + theta, loop.gains.ell);
    dot.reg.X = loop.gains.F * s.reg.X + loop.gains.G * omega;
    return regulator::pack_state(dot);
  };
}

}  // namespace

CrossCoordinateResult cross_coordinate_oracle(const ClosedLoop& loop,
                                              const ClosedLoopState& init,
                                              double t_total, double h,
                                              HMutation mutation,
                                              double fail_tol) {
  const SystemDims dims = loop.plant.dims;
  init.validate(dims);

  const auto raw =
      numerics::simulate(regulator::closed_loop_field(loop, mutation),
                         regulator::pack_state(init), 0.0, t_total, h);

  regulator::ClosedLoopState tr0 = init;
  const EtaTheta et0 = to_eta_theta(init.reg, init.rho, loop.im);
  tr0.reg.xi = et0.eta;
  tr0.reg.theta_hat = et0.theta_tilde;
  const auto transformed = numerics::simulate(
      transformed_field(loop), regulator::pack_state(tr0), 0.0, t_total, h);

  const auto names = transformed_names(dims);
  CrossCoordinateResult result;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto s = regulator::unpack_state(raw.state(i), dims);
    const EtaTheta et = to_eta_theta(s.reg, s.rho, loop.im);
    regulator::ClosedLoopState mapped = s;
    mapped.reg.xi = et.eta;
    mapped.reg.theta_hat = et.theta_tilde;

    const Vec diff =
        (regulator::pack_state(mapped) - transformed.state(i)).cwiseAbs();
    Eigen::Index worst = 0;
    const double dev = diff.maxCoeff(&worst);
    if (dev > result.max_deviation) {
      result.max_deviation = dev;
      result.worst_channel = names[static_cast<std::size_t>(worst)];
      result.t_worst = raw.time(i);
    }
    if (!result.exceeded && dev > fail_tol) {
      result.exceeded = true;
      result.first_channel = names[static_cast<std::size_t>(worst)];
      result.t_first = raw.time(i);
    }
  }
  return result;
}

}  // namespace aimreg::analysis
