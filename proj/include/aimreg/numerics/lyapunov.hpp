#pragma once

#include "aimreg/numerics/types.hpp"

namespace aimreg::numerics {

/// Solves P F + F^T P = -I for symmetric positive definite P.
/// F must be square and Hurwitz; otherwise a std::domain_error naming the
/// offending eigenvalue is thrown. Solved by vectorizing to a dense n^2
/// linear system; the result is symmetrized and verified (residual, symmetry,
/// positive definiteness) before it is returned.
Mat solve_lyapunov(const Mat& F);

}  // namespace aimreg::numerics
