#include "aimreg/analysis/sigma_map.hpp"

namespace aimreg::analysis {

Vec SigmaRollout::w_at(std::size_t i) const { return traj.state(i).head(s); }

Vec SigmaRollout::z_at(std::size_t i) const {
  return traj.state(i).segment(s, n);
}

Mat SigmaRollout::X_at(std::size_t i) const {
  Mat X(d - 1, q);
  const Vec& x = traj.state(i);
  for (int r = 0; r < d - 1; ++r) X.row(r) = x.segment(s + n + r * q, q);
  return X;
}

SigmaRollout sigma_rollout(const PlantModel& plant, const Vec& rho, const Mat& F,
                           const Mat& G, const ImmersionData& im, const Vec& w0,
                           const Vec& z0, double t_total, double h,
                           const Mat& X0) {
  plant.validate();
  const auto& dims = plant.dims;
  numerics::require_shape(F, dims.d - 1, dims.d - 1, "sigma_rollout: F");
  numerics::require_shape(G, dims.d - 1, dims.d, "sigma_rollout: G");
  numerics::require_size(w0, dims.s, "sigma_rollout: w0");
  numerics::require_size(z0, dims.n, "sigma_rollout: z0");

  const int s = dims.s;
  const int n = dims.n;
  const int q = dims.q;
  const int xlen = (dims.d - 1) * q;

  numerics::Field field = [&plant, &rho, &F, &G, &im, s, n, q,
                           xlen](double, const Vec& x) {
    const Vec w = x.head(s);
    const Vec z = x.segment(s, n);
    const double tau1 = im.tau(rho, w, z)(0);
    const Mat omega = im.omega_sat(tau1);

    Mat X(F.rows(), q);
    for (Eigen::Index r = 0; r < F.rows(); ++r)
      X.row(r) = x.segment(s + n + r * q, q);
    const Mat Xdot = F * X + G * omega;

    Vec dot(s + n + xlen);
    dot.head(s) = plant.s(rho, w);
    dot.segment(s, n) = plant.f0(rho, w, z);
    for (Eigen::Index r = 0; r < F.rows(); ++r)
      dot.segment(s + n + r * q, q) = Xdot.row(r);
    return dot;
  };

  Vec x0 = Vec::Zero(s + n + xlen);
  x0.head(s) = w0;
  x0.segment(s, n) = z0;
  if (X0.size() > 0) {
    numerics::require_shape(X0, dims.d - 1, q, "sigma_rollout: X0");
    for (Eigen::Index r = 0; r < X0.rows(); ++r)
      x0.segment(s + n + r * q, q) = X0.row(r);
  }

  SigmaRollout out;
  out.traj = numerics::simulate(field, x0, 0.0, t_total, h);
  out.s = s;
  out.n = n;
  out.d = dims.d;
  out.q = q;
  return out;
}

}  // namespace aimreg::analysis
