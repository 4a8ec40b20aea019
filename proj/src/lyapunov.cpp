#include "aimreg/numerics/lyapunov.hpp"

#include <complex>
#include <sstream>
#include <stdexcept>

namespace aimreg::numerics {

Mat solve_lyapunov(const Mat& F) {
  const Eigen::Index n = F.rows();
  if (F.cols() != n || n == 0) {
    throw std::invalid_argument("solve_lyapunov: F must be square and non-empty");
  }
  require_finite(F, "solve_lyapunov: F");

  Eigen::EigenSolver<Mat> es(F);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("solve_lyapunov: eigenvalue computation failed");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> ev = es.eigenvalues()(i);
    if (!(ev.real() < 0.0)) {
      std::ostringstream msg;
      msg << "solve_lyapunov: F is not Hurwitz, eigenvalue " << ev.real();
      if (ev.imag() != 0.0) msg << (ev.imag() < 0 ? "" : "+") << ev.imag() << "i";
      msg << " has nonnegative real part";
      throw std::domain_error(msg.str());
    }
  }

  // vec(P F) = (F^T (x) I) vec(P), vec(F^T P) = (I (x) F^T) vec(P)
  // with column-major vec, so (F^T (x) I + I (x) F^T) vec(P) = -vec(I).
  Mat lhs = Mat::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double ftij = F(j, i);  // (F^T)(i, j)
      for (Eigen::Index k = 0; k < n; ++k) {
        lhs(i * n + k, j * n + k) += ftij;  // F^T (x) I
        lhs(k * n + i, k * n + j) += ftij;  // I (x) F^T
      }
    }
  }
  Vec rhs = Vec::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i * n + i) = -1.0;

  const Vec p = lhs.partialPivLu().solve(rhs);
  Mat P = Eigen::Map<const Mat>(p.data(), n, n);
  P = (0.5 * (P + P.transpose())).eval();

  const double residual = (P * F + F.transpose() * P + Mat::Identity(n, n)).norm();
  if (!(residual <= 1e-10)) {
    throw std::runtime_error("solve_lyapunov: residual " + std::to_string(residual) +
                             " exceeds 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<Mat> sa(P);
  if (sa.info() != Eigen::Success || !(sa.eigenvalues().minCoeff() > 0.0)) {
    throw std::runtime_error("solve_lyapunov: computed P is not positive definite");
  }
  return P;
}

}  // namespace aimreg::numerics
