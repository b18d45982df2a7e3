#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfr/kernel.hpp"
#include "sfr/scene.hpp"

namespace sfr {

/// G(n, l) = g_l(r_{c,n}), N x L.
struct TransferMatrix {
  ComplexMatrix g;
  double omega = 0.0;
};

/// Regional weight for the shared-kernel form: W = int_Omega z(r)^* z(r)^T dr.
struct WeightMatrix {
  ComplexMatrix w;  // N x N, Hermitian PSD
  QuadratureSpec quadrature;
};

/// Regional weights for the general form with per-source kernels:
///   W_gg = int ghat(r)^* ghat(r)^T dr        (L x L)
///   W_gu = int ghat(r)^* z_des(r)^T dr       (L x N)
/// where ghat_l(r) = z_l(r)^T g_l is the interpolated transfer function.
struct GeneralWeights {
  ComplexMatrix w_gg;
  ComplexMatrix w_gu;
  QuadratureSpec quadrature;
};

enum class SolverKind { Pm, WpmShared, WpmGeneral };

const char* solver_tag(SolverKind kind);

struct DriveVector {
  ComplexVector d;
  double omega = 0.0;
  SolverKind solver = SolverKind::Pm;
  SolveReport report;  // residual of the solver's normal equations
};

TransferMatrix build_transfer_matrix(const Scene& scene, Wavenumber k);

/// Pressure matching: d = (G^H G + eta I)^{-1} G^H u_des.
DriveVector solve_pm(const TransferMatrix& g, const ComplexVector& u_des, double eta,
                     RidgeMode mode = RidgeMode::Absolute);

/// Shared-kernel regional weight, accumulated over quadrature nodes.
WeightMatrix build_weight_shared(const KernelSpec& spec, Wavenumber k, const std::vector<Position>& control_points,
                                 double lambda, const Region& region, const QuadratureSpec& quad,
                                 RidgeMode mode = RidgeMode::Absolute);

/// General-form weights with one kernel per source (size L) and one for the
/// desired field. Sources that share a kernel share the interpolation rows.
GeneralWeights build_weights_general(const std::vector<KernelSpec>& source_kernels, const KernelSpec& desired_kernel,
                                     Wavenumber k, const TransferMatrix& g,
                                     const std::vector<Position>& control_points, double lambda,
                                     const Region& region, const QuadratureSpec& quad,
                                     RidgeMode mode = RidgeMode::Absolute);

/// Weighted pressure matching: d = (G^H W G + eta I)^{-1} G^H W u_des.
DriveVector solve_wpm_shared(const TransferMatrix& g, const WeightMatrix& w, const ComplexVector& u_des,
                             double eta, RidgeMode mode = RidgeMode::Absolute);

/// General weighted pressure matching: d = (W_gg + eta I)^{-1} W_gu u_des.
DriveVector solve_wpm_general(const GeneralWeights& w, const ComplexVector& u_des, double eta, double omega,
                              RidgeMode mode = RidgeMode::Absolute);

/// u_syn(r) = sum_l d_l g_l(r) at each evaluation point.
ComplexVector synthesize_field(const Scene& scene, const DriveVector& d, const std::vector<Position>& eval_points);

// Objectives minimized by the solvers. Used for optimality checks.

/// ||G d - u||^2 + eta ||d||^2
double pm_objective(const ComplexMatrix& g, const ComplexVector& u_des, double eta, const ComplexVector& d);
/// (G d - u)^H W (G d - u) + eta ||d||^2
double wpm_shared_objective(const ComplexMatrix& g, const ComplexMatrix& w, const ComplexVector& u_des,
                            double eta, const ComplexVector& d);
/// d^H W_gg d - 2 Re(d^H W_gu u) + eta ||d||^2. The constant term is dropped.
double wpm_general_objective(const ComplexMatrix& w_gg, const ComplexMatrix& w_gu, const ComplexVector& u_des,
                             double eta, const ComplexVector& d);

/// One reproduction method with its parameters.
struct MethodSpec {
  std::string name;
  SolverKind solver = SolverKind::Pm;
  KernelFamily family = KernelFamily::Uniform;
  double rho = 0.0;
  double lambda = 1e-6;
  double eta = 1e-6;
  std::optional<Direction> desired_prior;  // overrides the desired field's arrival direction

  void validate(int dim) const;
  bool operator==(const MethodSpec&) const = default;
};

/// Everything fixed per frequency that the methods share.
struct FrequencyProblem {
  Wavenumber k;
  TransferMatrix g;
  ComplexVector u_des;
};

FrequencyProblem make_frequency_problem(const Scene& scene, const DesiredField& desired, double frequency_hz);

/// Kernel for the desired field under a method (prior from the field unless overridden).
KernelSpec desired_kernel(const MethodSpec& method, const Scene& scene, const DesiredField& desired);

/// Kernel used to interpolate loudspeaker l's transfer function.
KernelSpec source_kernel(const MethodSpec& method, const Scene& scene, std::size_t l);

/// Builds the method's weights (if any) and solves for the driving signals.
DriveVector solve_method(const MethodSpec& method, const Scene& scene, const DesiredField& desired,
                         const FrequencyProblem& problem, const QuadratureSpec& quad,
                         RidgeMode mode = RidgeMode::Absolute);

}  // namespace sfr
