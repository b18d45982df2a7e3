#include "sfr/kernel.hpp"

#include <string>

#include "sfr/special_functions.hpp"

namespace sfr {

void KernelSpec::validate() const {
  if (dimension != 2 && dimension != 3) throw ValidationError("kernel dimension must be 2 or 3");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw ValidationError("kernel rho must be >= 0");
  if (family == KernelFamily::Directional) {
    if (!prior) throw ValidationError("directional kernel needs a prior direction");
    if (prior->dim() != dimension) throw ValidationError("kernel prior direction has wrong dimension");
  }
}

Complex kernel_eval(const KernelSpec& spec, Wavenumber k, const Position& r1, const Position& r2) {
  if (r1.dim() != spec.dimension || r2.dim() != spec.dimension) {
    throw DimensionError("kernel_eval: position dimension does not match kernel dimension " +
                         std::to_string(spec.dimension));
  }
  const Position diff = r1 - r2;
  Complex arg;
  if (spec.family == KernelFamily::Uniform) {
    arg = k.k() * diff.norm();
  } else {
    // Sum of squares of (j rho prior_i - k diff_i). Branch of the square root
    // is irrelevant: j0 and J0 are even.
    Complex sq = 0.0;
    for (int i = 0; i < spec.dimension; ++i) {
      const Complex c(-k.k() * diff[i], spec.rho * (*spec.prior)[i]);
      sq += c * c;
    }
    arg = std::sqrt(sq);
  }
  return spec.dimension == 3 ? sph_bessel_j0(arg) : bessel_j0_complex(arg);
}

ComplexMatrix kernel_matrix(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& rows,
                            const std::vector<Position>& cols) {
  spec.validate();
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      m(i, j) = kernel_eval(spec, k, rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    }
  }
  return m;
}

GramMatrix gram_assemble(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& points) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(points.size());
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const Complex v = kernel_eval(spec, k, points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
    // kappa(r, r) is real; drop rounding residue so the diagonal is exactly Hermitian.
    g(j, j) = g(j, j).real();
  }
  return {std::move(g), spec, points};
}

double effective_ridge(double value, RidgeMode mode, const ComplexMatrix& a) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw ValidationError("ridge parameter must be >= 0");
  if (mode == RidgeMode::Absolute || a.rows() == 0) return value;
  return value * a.trace().real() / static_cast<double>(a.rows());
}

namespace {

ComplexMatrix regularized_gram(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& points,
                               double lambda, RidgeMode mode, bool* regularized) {
  if (points.empty()) throw ValidationError("kernel interpolation needs at least one point");
  ComplexMatrix a = gram_assemble(spec, k, points).entries;
  const double load = effective_ridge(lambda, mode, a);
  a.diagonal().array() += load;
  *regularized = load > 0.0;
  return a;
}

}  // namespace

Interpolant fit_interpolant(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& points,
                            const ComplexVector& samples, double lambda, RidgeMode mode) {
  if (samples.size() != static_cast<Eigen::Index>(points.size())) {
    throw DimensionError("fit_interpolant: sample count does not match point count");
  }
  bool regularized = false;
  const ComplexMatrix a = regularized_gram(spec, k, points, lambda, mode, &regularized);
  Interpolant f(spec, k, points, lambda);
  f.alpha_ = solve_hermitian(a, samples, regularized, &f.report_);
  return f;
}

Complex Interpolant::operator()(const Position& r) const {
  Complex sum = 0.0;
  for (std::size_t n = 0; n < points_.size(); ++n) {
    sum += kernel_eval(spec_, k_, r, points_[n]) * alpha_[static_cast<Eigen::Index>(n)];
  }
  return sum;
}

Complex interp_eval(const Interpolant& f, const Position& r) { return f(r); }

ComplexMatrix interp_weight_rows(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& points,
                                 double lambda, const std::vector<Position>& queries, RidgeMode mode) {
  bool regularized = false;
  const ComplexMatrix a = regularized_gram(spec, k, points, lambda, mode, &regularized);
  const ComplexMatrix kappa = kernel_matrix(spec, k, queries, points);  // Q x N
  // Z = kappa A^{-1}  <=>  Z^H = A^{-1} kappa^H for Hermitian A.
  const ComplexMatrix zh = solve_hermitian(a, kappa.adjoint(), regularized);
  return zh.adjoint();
}

ComplexVector interp_weight_row(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& points,
                                double lambda, const Position& r, RidgeMode mode) {
  return interp_weight_rows(spec, k, points, lambda, {r}, mode).row(0).transpose();
}

}  // namespace sfr
