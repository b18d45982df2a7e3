#include "sfr/hermitian_solve.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <algorithm>

namespace sfr {
namespace {

constexpr double kMinRcond = 1e-12;
constexpr double kRefineThreshold = 1e-12;

}  // namespace

double relative_residual(const ComplexMatrix& a, const ComplexMatrix& x, const ComplexMatrix& b) {
  const double bn = b.norm();
  if (bn == 0.0) return (a * x).norm();
  return (b - a * x).norm() / bn;
}

ComplexMatrix solve_hermitian(const ComplexMatrix& a, const ComplexMatrix& b, bool regularized,
                              SolveReport* report) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) {
    throw DimensionError("solve_hermitian: incompatible system dimensions");
  }
  SolveReport rep;
  if (b.norm() == 0.0 && regularized) {
    if (report) *report = rep;
    return ComplexMatrix::Zero(a.cols(), b.cols());
  }

  Eigen::LLT<ComplexMatrix> llt(a);
  Eigen::LDLT<ComplexMatrix> ldlt;
  Eigen::FullPivLU<ComplexMatrix> lu;
  enum class Route { Llt, Ldlt, Lu } route = Route::Llt;

  if (llt.info() == Eigen::Success) {
    rep.rcond = llt.rcond();
  } else {
    rep.used_fallback = true;
    ldlt.compute(a);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
      route = Route::Ldlt;
      // LDLT::rcond() skips zero pivots, so a singular matrix can look
      // well-conditioned. Take the pivot spread into account as well.
      const Eigen::VectorXd d = ldlt.vectorD().real().cwiseAbs();
      const double spread = d.maxCoeff() > 0.0 ? d.minCoeff() / d.maxCoeff() : 0.0;
      rep.rcond = std::min(ldlt.rcond(), spread);
    } else {
      route = Route::Lu;
      lu.compute(a);
      rep.rcond = lu.rcond();
    }
  }
  if (!regularized && !(rep.rcond >= kMinRcond)) {
    throw SingularSystemError("system is singular or ill-conditioned (rcond = " +
                              std::to_string(rep.rcond) + "); add regularization");
  }

  auto apply = [&](const ComplexMatrix& rhs) -> ComplexMatrix {
    switch (route) {
      case Route::Llt:
        return llt.solve(rhs);
      case Route::Ldlt:
        return ldlt.solve(rhs);
      case Route::Lu:
        break;
    }
    return lu.solve(rhs);
  };

  ComplexMatrix x = apply(b);
  rep.relative_residual = relative_residual(a, x, b);
  if (rep.relative_residual > kRefineThreshold) {
    const ComplexMatrix r = b - a * x;
    x += apply(r);
    rep.refined = true;
    rep.relative_residual = relative_residual(a, x, b);
  }
  if (report) *report = rep;
  return x;
}

}  // namespace sfr
