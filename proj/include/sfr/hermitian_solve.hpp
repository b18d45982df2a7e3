#pragma once

#include "sfr/types.hpp"

namespace sfr {

/// Outcome of a regularized Hermitian solve.
struct SolveReport {
  double rcond = 0.0;              // reciprocal condition estimate of the system matrix
  double relative_residual = 0.0;  // ||B - A X||_F / ||B||_F after refinement
  bool used_fallback = false;      // Cholesky failed; pivoted LDL^T (or LU) was used
  bool refined = false;            // one step of iterative refinement was applied
};

/// Solves A X = B for Hermitian A.
///
/// Tries Cholesky first; if A is not numerically positive definite falls back
/// to pivoted LDL^T, then to full-pivot LU. One step of iterative refinement
/// is applied when the relative residual exceeds 1e-12.
///
/// When `regularized` is false (no diagonal loading was added), a reciprocal
/// condition estimate below 1e-12 raises SingularSystemError.
ComplexMatrix solve_hermitian(const ComplexMatrix& a, const ComplexMatrix& b, bool regularized,
                              SolveReport* report = nullptr);

/// Relative residual ||B - A X||_F / ||B||_F (0 if B is zero).
double relative_residual(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b);

}  // namespace sfr
