#include "aimreg/analysis/lyapunov_series.hpp"

namespace aimreg::analysis {

double lyapunov_value(const TransformedState& ts, const Mat& P) {
  numerics::require_shape(P, ts.zeta.size(), ts.zeta.size(),
                          "lyapunov_value: P");
  return ts.chi(0) * ts.chi(0) + ts.zeta.dot(P * ts.zeta) +
         ts.theta_tilde.squaredNorm();
}

std::vector<double> lyapunov_series(const std::vector<TransformedState>& states,
                                    const Mat& P) {
  std::vector<double> V;
  V.reserve(states.size());
  for (const auto& ts : states) V.push_back(lyapunov_value(ts, P));
  return V;
}

int count_increase_violations(const std::vector<double>& V,
                              double per_step_tol) {
  int violations = 0;
  for (std::size_t i = 1; i < V.size(); ++i) {
    if (V[i] - V[i - 1] > per_step_tol) ++violations;
  }
  return violations;
}

}  // namespace aimreg::analysis
