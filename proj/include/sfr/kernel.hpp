#pragma once

#include <optional>
#include <vector>

#include "sfr/hermitian_solve.hpp"
#include "sfr/types.hpp"

namespace sfr {

enum class KernelFamily { Uniform, Directional };

/// How a ridge parameter (lambda for interpolation, eta for driving signals)
/// is added to a system diagonal.
enum class RidgeMode {
  Absolute,  // value added as-is
  Relative,  // value * trace(A) / n
};

/// Reproducing kernel of the space of Helmholtz solutions whose plane-wave
/// amplitudes are weighted by gamma(xi) = exp(rho xi.prior).
///
///   3D uniform      j0(k |r1 - r2|)
///   3D directional  j0( sqrt( sum_i (j rho prior_i - k (r1 - r2)_i)^2 ) )
///   2D uniform      J0(k |r1 - r2|)
///   2D directional  J0( sqrt( sum_i (j rho prior_i - k (r1 - r2)_i)^2 ) )
///
/// The kernel is not normalized: kappa(r, r) is sinh(rho)/rho in 3D and
/// I0(rho) in 2D. Scaling a kernel only rescales the effective lambda.
struct KernelSpec {
  int dimension = 2;
  KernelFamily family = KernelFamily::Uniform;
  double rho = 0.0;
  std::optional<Direction> prior;  // arrival direction, required for Directional

  static KernelSpec uniform(int dim) { return {dim, KernelFamily::Uniform, 0.0, std::nullopt}; }
  static KernelSpec directional(double rho, const Direction& prior) {
    return {prior.dim(), KernelFamily::Directional, rho, prior};
  }

  void validate() const;
  bool operator==(const KernelSpec&) const = default;
};

Complex kernel_eval(const KernelSpec& spec, Wavenumber k, const Position& r1, const Position& r2);

/// Kernel matrix with entries kappa(rows[i], cols[j]).
ComplexMatrix kernel_matrix(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& rows,
                            const std::vector<Position>& cols);

struct GramMatrix {
  ComplexMatrix entries;
  KernelSpec kernel;
  std::vector<Position> points;
};

/// Gram matrix K(m, m') = kappa(r_m, r_m'). Hermitian by construction.
GramMatrix gram_assemble(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& points);

/// Kernel ridge regression fit: alpha = (K + lambda I)^{-1} s.
class Interpolant {
 public:
  Complex operator()(const Position& r) const;

  const ComplexVector& coefficients() const { return alpha_; }
  const KernelSpec& kernel() const { return spec_; }
  const std::vector<Position>& points() const { return points_; }
  double lambda() const { return lambda_; }
  Wavenumber wavenumber() const { return k_; }
  const SolveReport& report() const { return report_; }

 private:
  friend Interpolant fit_interpolant(const KernelSpec&, Wavenumber, const std::vector<Position>&,
                                     const ComplexVector&, double, RidgeMode);
  Interpolant(KernelSpec spec, Wavenumber k, std::vector<Position> points, double lambda)
      : spec_(std::move(spec)), k_(k), points_(std::move(points)), lambda_(lambda) {}

  KernelSpec spec_;
  Wavenumber k_;
  std::vector<Position> points_;
  double lambda_;
  ComplexVector alpha_;
  SolveReport report_;
};

/// Fits samples s at points. lambda = 0 requires a numerically nonsingular
/// Gram matrix (SingularSystemError otherwise, e.g. with duplicated points).
Interpolant fit_interpolant(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& points,
                            const ComplexVector& samples, double lambda,
                            RidgeMode mode = RidgeMode::Absolute);

/// kappa(r)^T alpha.
Complex interp_eval(const Interpolant& f, const Position& r);

/// z(r) with z(r)^T = kappa(r)^T (K + lambda I)^{-1}, so that the
/// interpolated value of any sample vector s is z(r)^T s.
ComplexVector interp_weight_row(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& points,
                                double lambda, const Position& r, RidgeMode mode = RidgeMode::Absolute);

/// Stacked rows z(r_q)^T for every query point; shape Q x N.
ComplexMatrix interp_weight_rows(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& points,
                                 double lambda, const std::vector<Position>& queries,
                                 RidgeMode mode = RidgeMode::Absolute);

/// Effective diagonal load for a ridge parameter applied to a square matrix.
double effective_ridge(double value, RidgeMode mode, const ComplexMatrix& a);

}  // namespace sfr
