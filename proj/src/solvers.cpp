#include "sfr/solvers.hpp"

#include <deque>
#include <string>

namespace sfr {

const char* solver_tag(SolverKind kind) {
  switch (kind) {
    case SolverKind::Pm:
      return "PM";
    case SolverKind::WpmShared:
      return "WPM";
    case SolverKind::WpmGeneral:
      return "WPM-general";
  }
  return "?";
}

TransferMatrix build_transfer_matrix(const Scene& scene, Wavenumber k) {
  return {source_field_matrix(scene, k, scene.control_points), k.omega()};
}

namespace {

DriveVector ridge_solve(ComplexMatrix a, const ComplexVector& b, double eta, RidgeMode mode, double omega,
                        SolverKind kind) {
  const double load = effective_ridge(eta, mode, a);
  a.diagonal().array() += load;
  DriveVector out;
  out.omega = omega;
  out.solver = kind;
  out.d = solve_hermitian(a, b, load > 0.0, &out.report);
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Z^H diag(w) Y over quadrature nodes.
ComplexMatrix weighted_gram(const ComplexMatrix& z, const std::vector<double>& weights, const ComplexMatrix& y) {
  const Eigen::Map<const Eigen::VectorXd> w(weights.data(), static_cast<Eigen::Index>(weights.size()));
  return z.adjoint() * (w.asDiagonal() * y);
}

void require_rows(const ComplexVector& v, Eigen::Index n, const char* what) {
  if (v.size() != n) throw DimensionError(std::string(what) + ": desired pressure vector has wrong length");
}

}  // namespace

DriveVector solve_pm(const TransferMatrix& g, const ComplexVector& u_des, double eta, RidgeMode mode) {
  require_rows(u_des, g.g.rows(), "solve_pm");
  return ridge_solve(g.g.adjoint() * g.g, g.g.adjoint() * u_des, eta, mode, g.omega, SolverKind::Pm);
}

WeightMatrix build_weight_shared(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& control_points,
                                 double lambda, const Region& region, const QuadratureSpec& quad, RidgeMode mode) {
  const QuadratureNodes nodes = quadrature_nodes(region, quad);
  const ComplexMatrix z = interp_weight_rows(spec, k, control_points, lambda, nodes.points, mode);
  return {hermitian_part(weighted_gram(z, nodes.weights, z)), quad};
}

GeneralWeights build_weights_general(const std::vector<KernelSpec>& source_kernels, const KernelSpec& desired,
                                     Wavenumber k, const TransferMatrix& g,
                                     const std::vector<Position>& control_points, double lambda,
                                     const Region& region, const QuadratureSpec& quad, RidgeMode mode) {
  if (source_kernels.size() != static_cast<std::size_t>(g.g.cols())) {
    throw DimensionError("build_weights_general: need one kernel per source");
  }
  if (g.g.rows() != static_cast<Eigen::Index>(control_points.size())) {
    throw DimensionError("build_weights_general: transfer matrix rows do not match control points");
  }
  const QuadratureNodes nodes = quadrature_nodes(region, quad);

  // Interpolation rows per distinct kernel.
  std::deque<KernelSpec> seen;
  std::deque<ComplexMatrix> rows;
  auto rows_for = [&](const KernelSpec& spec) -> const ComplexMatrix& {
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (seen[i] == spec) return rows[i];
    }
    seen.push_back(spec);
    rows.push_back(interp_weight_rows(spec, k, control_points, lambda, nodes.points, mode));
    return rows.back();
  };

  ComplexMatrix ghat(static_cast<Eigen::Index>(nodes.points.size()), g.g.cols());
  for (Eigen::Index l = 0; l < g.g.cols(); ++l) {
    ghat.col(l) = rows_for(source_kernels[static_cast<std::size_t>(l)]) * g.g.col(l);
  }
  const ComplexMatrix& zdes = rows_for(desired);
  return {hermitian_part(weighted_gram(ghat, nodes.weights, ghat)), weighted_gram(ghat, nodes.weights, zdes), quad};
}

DriveVector solve_wpm_shared(const TransferMatrix& g, const WeightMatrix& w, const ComplexVector& u_des, double eta,
                             RidgeMode mode) {
  require_rows(u_des, g.g.rows(), "solve_wpm_shared");
  if (w.w.rows() != g.g.rows() || w.w.cols() != g.g.rows()) {
    throw DimensionError("solve_wpm_shared: weight matrix does not match control point count");
  }
  const ComplexMatrix ghw = g.g.adjoint() * w.w;
  return ridge_solve(hermitian_part(ghw * g.g), ghw * u_des, eta, mode, g.omega, SolverKind::WpmShared);
}

DriveVector solve_wpm_general(const GeneralWeights& w, const ComplexVector& u_des, double eta, double omega,
                              RidgeMode mode) {
  if (w.w_gu.cols() != u_des.size() || w.w_gu.rows() != w.w_gg.rows()) {
    throw DimensionError("solve_wpm_general: weight shapes do not match");
  }
  return ridge_solve(w.w_gg, w.w_gu * u_des, eta, mode, omega, SolverKind::WpmGeneral);
}

ComplexVector synthesize_field(const Scene& scene, const DriveVector& d, const std::vector<Position>& eval_points) {
  if (d.d.size() != static_cast<Eigen::Index>(scene.num_sources())) {
    throw DimensionError("synthesize_field: drive vector length does not match loudspeaker count");
  }
  const Wavenumber k = Wavenumber::from_omega(d.omega, scene.medium);
  return source_field_matrix(scene, k, eval_points) * d.d;
}

double pm_objective(const ComplexMatrix& g, const ComplexVector& u_des, double eta, const ComplexVector& d) {
  return (g * d - u_des).squaredNorm() + eta * d.squaredNorm();
}

double wpm_shared_objective(const ComplexMatrix& g, const ComplexMatrix& w, const ComplexVector& u_des, double eta,
                            const ComplexVector& d) {
  const ComplexVector e = g * d - u_des;
  return e.dot(w * e).real() + eta * d.squaredNorm();
}

double wpm_general_objective(const ComplexMatrix& w_gg, const ComplexMatrix& w_gu, const ComplexVector& u_des,
                             double eta, const ComplexVector& d) {
  return d.dot(w_gg * d).real() - 2.0 * d.dot(w_gu * u_des).real() + eta * d.squaredNorm();
}

void MethodSpec::validate(int dim) const {
  if (name.empty()) throw ValidationError("method name must not be empty");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw ValidationError("method " + name + ": eta must be >= 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("method " + name + ": lambda must be >= 0");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw ValidationError("method " + name + ": rho must be >= 0");
  if (desired_prior && desired_prior->dim() != dim) {
    throw ValidationError("method " + name + ": desired prior direction has wrong dimension");
  }
}

FrequencyProblem make_frequency_problem(const Scene& scene, const DesiredField& desired, double frequency_hz) {
  const Wavenumber k = Wavenumber::from_frequency(frequency_hz, scene.medium);
  FrequencyProblem p{k, build_transfer_matrix(scene, k), ComplexVector(static_cast<Eigen::Index>(scene.num_control_points()))};
  for (std::size_t n = 0; n < scene.num_control_points(); ++n) {
    p.u_des[static_cast<Eigen::Index>(n)] = desired(k, scene.control_points[n]);
  }
  return p;
}

KernelSpec desired_kernel(const MethodSpec& method, const Scene& scene, const DesiredField& desired) {
  if (method.family == KernelFamily::Uniform) return KernelSpec::uniform(scene.dimension);
  const Direction prior = method.desired_prior ? *method.desired_prior : desired.arrival_direction(scene.region.center);
  return KernelSpec::directional(method.rho, prior);
}

KernelSpec source_kernel(const MethodSpec& method, const Scene& scene, std::size_t l) {
  if (method.family == KernelFamily::Uniform) return KernelSpec::uniform(scene.dimension);
  return KernelSpec::directional(method.rho, source_arrival_direction(scene, l));
}

DriveVector solve_method(const MethodSpec& method, const Scene& scene, const DesiredField& desired,
                         const FrequencyProblem& problem, const QuadratureSpec& quad, RidgeMode mode) {
  switch (method.solver) {
    case SolverKind::Pm:
      return solve_pm(problem.g, problem.u_des, method.eta, mode);
    case SolverKind::WpmShared: {
      const WeightMatrix w = build_weight_shared(desired_kernel(method, scene, desired), problem.k,
                                                 scene.control_points, method.lambda, scene.region, quad, mode);
      return solve_wpm_shared(problem.g, w, problem.u_des, method.eta, mode);
    }
    case SolverKind::WpmGeneral: {
      std::vector<KernelSpec> kernels;
      kernels.reserve(scene.num_sources());
      for (std::size_t l = 0; l < scene.num_sources(); ++l) kernels.push_back(source_kernel(method, scene, l));
      const GeneralWeights w =
          build_weights_general(kernels, desired_kernel(method, scene, desired), problem.k, problem.g,
                                scene.control_points, method.lambda, scene.region, quad, mode);
      return solve_wpm_general(w, problem.u_des, method.eta, problem.k.omega(), mode);
    }
  }
  throw ValidationError("unknown solver");
}

}  // namespace sfr
