#pragma once

#include <functional>

#include "aimreg/numerics/types.hpp"

namespace aimreg::numerics {

/// Adaptive Simpson quadrature of a vector-valued integrand over [a, b]
/// (a > b integrates with the usual sign flip). The refinement criterion is
/// the max-norm Richardson error estimate against tol.
Vec integrate_adaptive(const std::function<Vec(double)>& f, double a, double b,
                       double tol = 1e-10, int max_depth = 48);

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-10, int max_depth = 48);

}  // namespace aimreg::numerics
