#include "aimreg/regulator/controller.hpp"

#include <cmath>
#include <stdexcept>

#include "aimreg/regulator/dead_zone.hpp"

namespace aimreg::regulator {

RegulatorState RegulatorState::zero(const SystemDims& dims) {
  RegulatorState rs;
  rs.xi = Vec::Zero(dims.d);
  rs.theta_hat = Vec::Zero(dims.q);
  rs.X = Mat::Zero(dims.d - 1, dims.q);
  return rs;
}

void RegulatorState::validate(const SystemDims& dims) const {
  numerics::require_size(xi, dims.d, "RegulatorState::xi");
  numerics::require_size(theta_hat, dims.q, "RegulatorState::theta_hat");
  numerics::require_shape(X, dims.d - 1, dims.q, "RegulatorState::X");
}

Mat m_of_x(const Mat& X) {
  Mat m = Mat::Zero(X.rows() + 1, X.cols());
  m.bottomRows(X.rows()) = X;
  return m;
}

Vec beta_map(const Mat& X, double xi1, const ImmersionData& im) {
  // CA M(X) picks row 1 of X (row 2 of M); C omega picks row 1 of omega.
  Vec beta = im.omega_sat(xi1).row(0).transpose();
  if (X.rows() > 0) beta += X.row(0).transpose();
  return beta;
}

Vec h_map(const Mat& X, double xi1, const Vec& K, const ImmersionData& im) {
  return m_of_x(X) * beta_map(X, xi1, im) + K;
}

RegulatorRates regulator_derivative(const RegulatorState& rs, double e,
                                    const RegulatorGains& gains,
                                    const ImmersionData& im,
                                    HMutation mutation) {
  const SystemDims& dims = im.dims;
  rs.validate(dims);
  if (!std::isfinite(e)) {
    throw std::invalid_argument("regulator_derivative: e is not finite");
  }

  const double xi1 = rs.xi(0);
  const Mat M = m_of_x(rs.X);
  const Vec beta = beta_map(rs.X, xi1, im);
  Vec H = M * beta + gains.K;
  if (mutation == HMutation::drop_K) H -= gains.K;

  const Vec dz_theta = dzv(rs.theta_hat, gains.ell);
  const Mat omega = im.omega_sat(xi1);

  RegulatorRates rates;
  rates.v = -gains.k * e;
  rates.u = xi1 + rates.v;

  rates.dot.xi = Vec::Zero(dims.d);
  rates.dot.xi.head(dims.d - 1) = rs.xi.tail(dims.d - 1);  // A is the shift
  rates.dot.xi += im.phi_sat(xi1) + omega * rs.theta_hat + H * rates.v -
                  M * dz_theta;
  rates.dot.theta_hat = beta * rates.v - dz_theta;
  rates.dot.X = gains.F * rs.X + gains.G * omega;
  return rates;
}

}  // namespace aimreg::regulator
