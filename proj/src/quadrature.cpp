#include "aimreg/numerics/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace aimreg::numerics {

namespace {

Vec simpson(const Vec& fa, const Vec& fm, const Vec& fb, double a, double b) {
  return ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
}

Vec adapt(const std::function<Vec(double)>& f, double a, double b,
          const Vec& fa, const Vec& fm, const Vec& fb, const Vec& whole,
          double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const Vec flm = f(lm);
  const Vec frm = f(rm);
  const Vec left = simpson(fa, flm, fm, a, m);
  const Vec right = simpson(fm, frm, fb, m, b);
  const Vec delta = left + right - whole;
  if (depth <= 0) {
    throw std::runtime_error("integrate_adaptive: max refinement depth reached");
  }
  if (delta.lpNorm<Eigen::Infinity>() <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

Vec integrate_adaptive(const std::function<Vec(double)>& f, double a, double b,
                       double tol, int max_depth) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("integrate_adaptive: non-finite bounds");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("integrate_adaptive: tol must be positive");
  }
  if (a > b) {
    return -integrate_adaptive(f, b, a, tol, max_depth);
  }
  const Vec fa = f(a);
  if (a == b) return Vec::Zero(fa.size());
  const double m = 0.5 * (a + b);
  const Vec fm = f(m);
  const Vec fb = f(b);
  const Vec whole = simpson(fa, fm, fb, a, b);
  Vec out = adapt(f, a, b, fa, fm, fb, whole, tol, max_depth);
  require_finite(out, "integrate_adaptive: result");
  return out;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth) {
  auto wrap = [&f](double t) {
    Vec v(1);
    v(0) = f(t);
    return v;
  };
  return integrate_adaptive(wrap, a, b, tol, max_depth)(0);
}

}  // namespace aimreg::numerics
