#pragma once

#include "aimreg/model/immersion.hpp"
#include "aimreg/regulator/controller.hpp"
#include "aimreg/regulator/gains.hpp"

namespace aimreg::analysis {

using model::ImmersionData;
using numerics::Mat;
using numerics::Vec;
using regulator::RegulatorGains;
using regulator::RegulatorState;

/// Estimator coordinates relative to the true parameter vector:
///   theta_tilde = theta_hat - theta(rho),  eta = xi - M(X) theta_tilde.
/// eta_1 always equals xi_1 because M(X) has a zero top row.
struct EtaTheta {
  Vec eta;
  Vec theta_tilde;
};

[[nodiscard]] EtaTheta to_eta_theta(const RegulatorState& rs, const Vec& rho,
                                    const ImmersionData& im);

/// Inverse of to_eta_theta for the same X and rho.
[[nodiscard]] RegulatorState from_eta_theta(const EtaTheta& et, const Mat& X,
                                            const Vec& rho,
                                            const ImmersionData& im);

/// Relative-degree-one normal-form coordinates: like to_eta_theta but with
/// the error-dependent corrections
///   theta_tilde -= integral_0^e beta(X, xi_1 - K_1 e + K_1 s) ds
///   eta         -= K e,
/// the integral evaluated by adaptive quadrature to quad_tol.
[[nodiscard]] EtaTheta to_normal_form(const RegulatorState& rs, double e,
                                      const Vec& rho,
                                      const RegulatorGains& gains,
                                      const ImmersionData& im,
                                      double quad_tol = 1e-10);

/// Attractor-relative coordinates used by the energy diagnostics:
///   chi = eta - tau,  zeta = bhat chi_1 + (chi_2, ..., chi_d),
/// with bhat = -(b_2, ..., b_d).
struct TransformedState {
  Vec chi;
  Vec zeta;
  Vec theta_tilde;
};

[[nodiscard]] TransformedState to_chi_zeta(const EtaTheta& et, const Vec& tau,
                                           const Vec& b);

/// Injection mismatch between a perturbed and an attractor evaluation point:
///   delta = phi(chi1 + tau1) - phi(chi1) + [omega(chi1 + tau1) - omega(chi1)] theta,
/// through the clamp. Vanishes at tau1 = 0 and is Lipschitz in tau1.
[[nodiscard]] Vec delta_term(double chi1, double tau1, const Vec& theta,
                             const ImmersionData& im);

}  // namespace aimreg::analysis
