#include "aimreg/regulator/closed_loop.hpp"

#include <cmath>
#include <stdexcept>

namespace aimreg::regulator {

void ClosedLoopState::validate(const SystemDims& dims) const {
  numerics::require_size(rho, dims.p, "ClosedLoopState::rho");
  numerics::require_size(w, dims.s, "ClosedLoopState::w");
  numerics::require_size(z, dims.n, "ClosedLoopState::z");
  if (!std::isfinite(e)) {
    throw std::invalid_argument("ClosedLoopState: e is not finite");
  }
  reg.validate(dims);
}

int state_dim(const SystemDims& dims) {
  return dims.p + dims.s + dims.n + 1 + dims.d + dims.q + (dims.d - 1) * dims.q;
}

Vec pack_state(const ClosedLoopState& s) {
  const Eigen::Index p = s.rho.size();
  const Eigen::Index sn = s.w.size();
  const Eigen::Index n = s.z.size();
  const Eigen::Index d = s.reg.xi.size();
  const Eigen::Index q = s.reg.theta_hat.size();
  Vec x(p + sn + n + 1 + d + q + s.reg.X.size());
  Eigen::Index at = 0;
  x.segment(at, p) = s.rho;
  at += p;
  x.segment(at, sn) = s.w;
  at += sn;
  x.segment(at, n) = s.z;
  at += n;
  x(at++) = s.e;
  x.segment(at, d) = s.reg.xi;
  at += d;
  x.segment(at, q) = s.reg.theta_hat;
  at += q;
  for (Eigen::Index i = 0; i < s.reg.X.rows(); ++i) {
    x.segment(at, q) = s.reg.X.row(i);
    at += q;
  }
  return x;
}

ClosedLoopState unpack_state(const Vec& x, const SystemDims& dims) {
  numerics::require_size(x, state_dim(dims), "unpack_state: x");
  ClosedLoopState s;
  Eigen::Index at = 0;
  s.rho = x.segment(at, dims.p);
  at += dims.p;
  s.w = x.segment(at, dims.s);
  at += dims.s;
  s.z = x.segment(at, dims.n);
  at += dims.n;
  s.e = x(at++);
  s.reg.xi = x.segment(at, dims.d);
  at += dims.d;
  s.reg.theta_hat = x.segment(at, dims.q);
  at += dims.q;
  s.reg.X = Mat(dims.d - 1, dims.q);
  for (Eigen::Index i = 0; i < dims.d - 1; ++i) {
    s.reg.X.row(i) = x.segment(at, dims.q);
    at += dims.q;
  }
  return s;
}

std::vector<std::string> channel_names(const SystemDims& dims) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(state_dim(dims)));
  for (int i = 0; i < dims.p; ++i) names.push_back("rho" + std::to_string(i + 1));
  for (int i = 0; i < dims.s; ++i) names.push_back("w" + std::to_string(i + 1));
  for (int i = 0; i < dims.n; ++i) names.push_back("z" + std::to_string(i + 1));
  names.push_back("e");
  for (int i = 0; i < dims.d; ++i) names.push_back("xi" + std::to_string(i + 1));
  for (int i = 0; i < dims.q; ++i)
    names.push_back("theta_hat" + std::to_string(i + 1));
  for (int i = 0; i < dims.d - 1; ++i)
    for (int j = 0; j < dims.q; ++j)
      names.push_back("X" + std::to_string(i + 1) + std::to_string(j + 1));
  return names;
}

numerics::Field closed_loop_field(const ClosedLoop& loop, HMutation mutation) {
  loop.plant.validate();
  loop.im.validate();
  const SystemDims dims = loop.plant.dims;
  return [loop, dims, mutation](double, const Vec& x) {
    const ClosedLoopState s = unpack_state(x, dims);
    const RegulatorRates rates =
        regulator_derivative(s.reg, s.e, loop.gains, loop.im, mutation);

    ClosedLoopState dot;
    dot.rho = loop.plant.s_rho_at(s.rho, s.w, s.z, s.e) * s.e;
    dot.w = loop.plant.s(s.rho, s.w) + loop.plant.s_w_at(s.rho, s.w, s.z, s.e) * s.e;
    dot.z = loop.plant.f0(s.rho, s.w, s.z) +
            loop.plant.f1(s.rho, s.w, s.z, s.e) * s.e;
    dot.e = loop.plant.qfun(s.rho, s.w, s.z, s.e) + rates.u;
    dot.reg = rates.dot;
    return pack_state(dot);
  };
}

}  // namespace aimreg::regulator
