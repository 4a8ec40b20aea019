#include "aimreg/analysis/transforms.hpp"

#include "aimreg/numerics/quadrature.hpp"

namespace aimreg::analysis {

using regulator::beta_map;
using regulator::m_of_x;

EtaTheta to_eta_theta(const RegulatorState& rs, const Vec& rho,
                      const ImmersionData& im) {
  rs.validate(im.dims);
  EtaTheta et;
  et.theta_tilde = rs.theta_hat - im.theta(rho);
  et.eta = rs.xi - m_of_x(rs.X) * et.theta_tilde;
  return et;
}

RegulatorState from_eta_theta(const EtaTheta& et, const Mat& X, const Vec& rho,
                              const ImmersionData& im) {
  RegulatorState rs;
  rs.theta_hat = et.theta_tilde + im.theta(rho);
  rs.xi = et.eta + m_of_x(X) * et.theta_tilde;
  rs.X = X;
  return rs;
}

EtaTheta to_normal_form(const RegulatorState& rs, double e, const Vec& rho,
                        const RegulatorGains& gains, const ImmersionData& im,
                        double quad_tol) {
  EtaTheta et = to_eta_theta(rs, rho, im);
  const double k1 = gains.K(0);
  const double xi1 = rs.xi(0);
  const Vec correction = numerics::integrate_adaptive(
      [&](double s) { return beta_map(rs.X, xi1 - k1 * e + k1 * s, im); }, 0.0,
      e, quad_tol);
  et.theta_tilde -= correction;
  et.eta -= gains.K * e;
  return et;
}

TransformedState to_chi_zeta(const EtaTheta& et, const Vec& tau, const Vec& b) {
  const Eigen::Index d = et.eta.size();
  numerics::require_size(tau, d, "to_chi_zeta: tau");
  numerics::require_size(b, d, "to_chi_zeta: b");
  TransformedState ts;
  ts.chi = et.eta - tau;
  ts.zeta = -b.tail(d - 1) * ts.chi(0) + ts.chi.tail(d - 1);
  ts.theta_tilde = et.theta_tilde;
  return ts;
}

Vec delta_term(double chi1, double tau1, const Vec& theta,
               const ImmersionData& im) {
  return im.phi_sat(chi1 + tau1) - im.phi_sat(chi1) +
         (im.omega_sat(chi1 + tau1) - im.omega_sat(chi1)) * theta;
}

}  // namespace aimreg::analysis
