#include "aimreg/analysis/pe.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "aimreg/regulator/controller.hpp"

namespace aimreg::analysis {

Mat pe_gram(const std::vector<Vec>& gamma, double dt) {
  if (gamma.empty()) throw std::invalid_argument("pe_gram: no samples");
  if (!(dt > 0.0)) throw std::invalid_argument("pe_gram: dt must be positive");
  Mat gram = Mat::Zero(gamma.front().size(), gamma.front().size());
  for (const Vec& g : gamma) gram += g * g.transpose() * dt;
  return gram;
}

double pe_check(const std::vector<Vec>& gamma, double dt) {
  const Mat gram = pe_gram(gamma, dt);
  Eigen::SelfAdjointEigenSolver<Mat> es(gram);
  return es.eigenvalues().minCoeff();
}

std::vector<Vec> regressor_series(const SigmaRollout& roll, const Vec& rho,
                                  const ImmersionData& im, double t_from) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < roll.traj.size(); ++i) {
    if (roll.traj.time(i) < t_from) continue;
    const double tau1 = im.tau(rho, roll.w_at(i), roll.z_at(i))(0);
    out.push_back(regulator::beta_map(roll.X_at(i), tau1, im));
  }
  return out;
}

}  // namespace aimreg::analysis
