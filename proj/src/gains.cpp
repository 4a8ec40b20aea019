#include "aimreg/regulator/gains.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aimreg::regulator {

Vec poly_to_b(const std::vector<double>& roots) {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!std::isfinite(roots[i])) {
      throw std::invalid_argument("poly_to_b: root " + std::to_string(i) +
                                  " is not finite");
    }
    if (roots[i] >= 0.0) {
      throw std::domain_error("poly_to_b: root " + std::to_string(roots[i]) +
                              " is not strictly negative");
    }
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (roots[i] == roots[j]) {
        throw std::domain_error("poly_to_b: repeated root " +
                                std::to_string(roots[i]));
      }
    }
  }

  // Multiply out prod (x - r) one root at a time; coeffs[j] is the
  // coefficient of x^{degree - j}, so coeffs stays monic in front.
  Vec b = Vec::Zero(static_cast<Eigen::Index>(roots.size()) + 1);
  b(0) = 1.0;
  Eigen::Index degree = 0;
  for (double r : roots) {
    ++degree;
    for (Eigen::Index j = degree; j >= 1; --j) {
      b(j) -= r * b(j - 1);
    }
  }
  return b;
}

FilterMatrices build_F_G(const Vec& b) {
  numerics::require_finite(b, "build_F_G: b");
  const Eigen::Index d = b.size();
  if (d < 1 || b(0) != 1.0) {
    throw std::invalid_argument("build_F_G: b must be monic, b(0) = 1");
  }
  FilterMatrices fg;
  fg.F = Mat::Zero(d - 1, d - 1);
  fg.G = Mat::Zero(d - 1, d);
  for (Eigen::Index i = 0; i < d - 1; ++i) {
    fg.F(i, 0) = -b(i + 1);
    fg.G(i, 0) = -b(i + 1);
    if (i + 1 < d - 1) fg.F(i, i + 1) = 1.0;
    fg.G(i, i + 1) = 1.0;
  }
  return fg;
}

Vec compute_K(const Vec& b, double lambda) {
  numerics::require_finite(b, "compute_K: b");
  if (!std::isfinite(lambda)) {
    throw std::invalid_argument("compute_K: lambda is not finite");
  }
  const Eigen::Index d = b.size();
  Vec K = lambda * b;
  K.head(d - 1) += b.tail(d - 1);
  return K;
}

std::vector<double> default_roots(int d) {
  if (d < 1) throw std::invalid_argument("default_roots: d must be >= 1");
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(d - 1));
  for (int i = 1; i < d; ++i) roots.push_back(-static_cast<double>(i));
  return roots;
}

double default_ell(const model::ImmersionData& im, const model::ParamBox& box) {
  double peak = 0.0;
  for (const auto& rho : box.grid(9)) {
    const Vec th = im.theta(rho);
    numerics::require_finite(th, "default_ell: theta(rho)");
    peak = std::max(peak, th.norm());
  }
  return 1.1 * peak;
}

RegulatorGains make_gains(int d, const std::vector<double>& roots,
                          double lambda, double k, double ell) {
  if (d < 1) throw std::invalid_argument("make_gains: d must be >= 1");
  if (roots.size() != static_cast<std::size_t>(d - 1)) {
    throw std::invalid_argument("make_gains: expected " + std::to_string(d - 1) +
                                " roots, got " + std::to_string(roots.size()));
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("make_gains: lambda must be positive");
  }
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("make_gains: k must be >= 0");
  }
  if (!(ell > 0.0) || !std::isfinite(ell)) {
    throw std::invalid_argument("make_gains: ell must be positive");
  }
  RegulatorGains g;
  g.roots = roots;
  g.lambda = lambda;
  g.k = k;
  g.ell = ell;
  g.blend = 1.0;
  g.b = poly_to_b(roots);
  auto fg = build_F_G(g.b);
  g.F = std::move(fg.F);
  g.G = std::move(fg.G);
  g.K = compute_K(g.b, lambda);
  return g;
}

}  // namespace aimreg::regulator
