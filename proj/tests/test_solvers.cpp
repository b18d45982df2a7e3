#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "sfr/config.hpp"
#include "sfr/solvers.hpp"

using namespace sfr;

namespace {

const Experiment& preset() {
  static const Experiment exp = build_experiment(preset_paper_experiment());
  return exp;
}

const MethodSpec& method(const std::string& name) {
  for (const auto& m : preset().methods) {
    if (m.name == name) return m;
  }
  throw std::logic_error("no method " + name);
}

double min_eig_ratio(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  return es.eigenvalues().minCoeff() / (m.trace().real() / double(m.rows()));
}

ComplexVector random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
  return v;
}

double rel_diff(const ComplexVector& a, const ComplexVector& b) { return (a - b).norm() / b.norm(); }

// Local minimality under random perturbations of relative size 1e-3.
template <class Objective>
void check_local_minimum(const ComplexVector& d, Objective obj, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double base = obj(d);
  for (int i = 0; i < 50; ++i) {
    ComplexVector delta = random_vector(rng, d.size());
    delta *= 1e-3 * d.norm() / delta.norm();
    CHECK(obj(d + delta) >= base);
  }
}

struct Preset450 {
  Preset450() : problem(make_frequency_problem(preset().scene, preset().desired, 450.0)) {}
  FrequencyProblem problem;
};

}  // namespace

TEST_CASE("transfer matrix") {
  SUBCASE("single 3D source at one wavelength") {
    Scene s;
    s.dimension = 3;
    s.region = Region{Position(0, 0, 0), {0.5, 0.5, 0.5}};
    s.loudspeakers = {{Position(1.0, 0.0, 0.0), SourceModel::point(3)}};
    s.control_points = {Position(0.0, 0.0, 0.0)};
    s.validate();
    const auto g = build_transfer_matrix(s, Wavenumber::from_k(2 * kPi));
    REQUIRE(g.g.rows() == 1);
    CHECK(std::abs(g.g(0, 0) - 1.0 / (4 * kPi)) < 1e-15);
  }
  SUBCASE("preset scene") {
    const auto g = build_transfer_matrix(preset().scene, Wavenumber::from_frequency(450.0, Medium{}));
    CHECK(g.g.rows() == 16);
    CHECK(g.g.cols() == 12);
    CHECK(g.g.allFinite());
    CHECK(g.g(3, 5) == green_point_source(Wavenumber::from_frequency(450.0, Medium{}),
                                           preset().scene.loudspeakers[5].position, preset().scene.control_points[3]));
  }
}

TEST_CASE("pressure matching") {
  std::mt19937_64 rng(1);
  SUBCASE("zero target") {
    const TransferMatrix g{random_vector(rng, 20).reshaped(5, 4), 1.0};
    CHECK(solve_pm(g, ComplexVector::Zero(5), 1e-6).d.isZero(0.0));
  }
  SUBCASE("identity transfer, no regularization") {
    const TransferMatrix g{ComplexMatrix::Identity(4, 4), 1.0};
    const ComplexVector u = random_vector(rng, 4);
    CHECK(rel_diff(solve_pm(g, u, 0.0).d, u) < 1e-15);
  }
  SUBCASE("rank-deficient without regularization") {
    ComplexMatrix m = random_vector(rng, 12).reshaped(6, 2);
    ComplexMatrix g(6, 3);
    g << m, m.col(0);
    CHECK_THROWS_AS(solve_pm({g, 1.0}, random_vector(rng, 6), 0.0), SingularSystemError);
    CHECK_NOTHROW(solve_pm({g, 1.0}, random_vector(rng, 6), 1e-6));
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(solve_pm({ComplexMatrix::Identity(3, 3), 1.0}, ComplexVector::Ones(4), 0.0), DimensionError);
  }
}

TEST_CASE_FIXTURE(Preset450, "weight matrices are Hermitian PSD") {
  const auto& s = preset().scene;
  const auto& q = preset().quadrature;
  for (const auto* name : {"WPM", "WPM_directional"}) {
    const auto& m = method(name);
    const WeightMatrix w = build_weight_shared(desired_kernel(m, s, preset().desired), problem.k, s.control_points,
                                               m.lambda, s.region, q);
    CHECK((w.w - w.w.adjoint()).cwiseAbs().maxCoeff() <= 1e-10 * w.w.cwiseAbs().maxCoeff());
    CHECK(min_eig_ratio(w.w) >= -1e-8);
  }
  const auto& m = method("WPM_directional");
  std::vector<KernelSpec> kernels;
  for (std::size_t l = 0; l < s.num_sources(); ++l) kernels.push_back(source_kernel(m, s, l));
  const auto gw = build_weights_general(kernels, desired_kernel(m, s, preset().desired), problem.k, problem.g,
                                        s.control_points, m.lambda, s.region, q);
  CHECK(gw.w_gg.rows() == 12);
  CHECK(gw.w_gu.cols() == 16);
  CHECK((gw.w_gg - gw.w_gg.adjoint()).cwiseAbs().maxCoeff() <= 1e-10 * gw.w_gg.cwiseAbs().maxCoeff());
  CHECK(min_eig_ratio(gw.w_gg) >= -1e-8);
}

TEST_CASE_FIXTURE(Preset450, "reduction identities") {
  const auto& s = preset().scene;
  SUBCASE("identity weight gives pressure matching") {
    const WeightMatrix w{ComplexMatrix::Identity(16, 16), {}};
    CHECK(rel_diff(solve_wpm_shared(problem.g, w, problem.u_des, 1e-6).d, solve_pm(problem.g, problem.u_des, 1e-6).d) <
          1e-10);
  }
  SUBCASE("general form with a common kernel gives the shared form") {
    const auto spec = KernelSpec::directional(5.0, preset().desired.arrival_direction(s.region.center));
    const std::vector<KernelSpec> kernels(s.num_sources(), spec);
    const auto gw = build_weights_general(kernels, spec, problem.k, problem.g, s.control_points, 1e-6, s.region,
                                          preset().quadrature);
    const auto w = build_weight_shared(spec, problem.k, s.control_points, 1e-6, s.region, preset().quadrature);
    const auto dg = solve_wpm_general(gw, problem.u_des, 1e-6, problem.k.omega());
    const auto ds = solve_wpm_shared(problem.g, w, problem.u_des, 1e-6);
    CHECK(rel_diff(dg.d, ds.d) < 1e-8);
  }
  SUBCASE("quadrature on the control points with lambda = 0 gives scaled pressure matching") {
    // Cell-centred 4 x 4 control grid coincides with a 4 x 4 midpoint rule.
    ExperimentConfig cfg = preset_paper_experiment();
    cfg.control_points.placement = ControlLayout::Placement::Cell;
    const Experiment exp = build_experiment(cfg);
    // The Gram matrix must be invertible at lambda = 0, which rules out low frequencies.
    const auto p = make_frequency_problem(exp.scene, exp.desired, 600.0);
    const QuadratureSpec mid{QuadratureRule::Midpoint, 4};
    const auto w = build_weight_shared(KernelSpec::uniform(2), p.k, exp.scene.control_points, 0.0, exp.scene.region, mid);
    CHECK((w.w - ComplexMatrix::Identity(16, 16) / 16.0).cwiseAbs().maxCoeff() < 1e-10);
    const double eta = 1e-4;
    CHECK(rel_diff(solve_wpm_shared(p.g, w, p.u_des, eta / 16).d, solve_pm(p.g, p.u_des, eta).d) < 1e-8);
  }
}

TEST_CASE_FIXTURE(Preset450, "solutions minimize their objectives") {
  const auto& s = preset().scene;
  const auto& q = preset().quadrature;
  const double eta = 1e-6;

  const auto pm = solve_pm(problem.g, problem.u_des, eta);
  CHECK(pm.report.relative_residual <= 1e-10);
  check_local_minimum(pm.d, [&](const ComplexVector& d) { return pm_objective(problem.g.g, problem.u_des, eta, d); },
                      1);

  const auto& mu = method("WPM");
  const auto w = build_weight_shared(desired_kernel(mu, s, preset().desired), problem.k, s.control_points, mu.lambda,
                                     s.region, q);
  const auto ws = solve_wpm_shared(problem.g, w, problem.u_des, eta);
  CHECK(ws.report.relative_residual <= 1e-10);
  check_local_minimum(
      ws.d, [&](const ComplexVector& d) { return wpm_shared_objective(problem.g.g, w.w, problem.u_des, eta, d); }, 2);

  const auto& md = method("WPM_directional");
  std::vector<KernelSpec> kernels;
  for (std::size_t l = 0; l < s.num_sources(); ++l) kernels.push_back(source_kernel(md, s, l));
  const auto gw = build_weights_general(kernels, desired_kernel(md, s, preset().desired), problem.k, problem.g,
                                        s.control_points, md.lambda, s.region, q);
  const auto wg = solve_wpm_general(gw, problem.u_des, eta, problem.k.omega());
  CHECK(wg.report.relative_residual <= 1e-10);
  check_local_minimum(
      wg.d, [&](const ComplexVector& d) { return wpm_general_objective(gw.w_gg, gw.w_gu, problem.u_des, eta, d); }, 3);
}

TEST_CASE_FIXTURE(Preset450, "conjugated problems give conjugated drives") {
  const auto& s = preset().scene;
  const TransferMatrix gc{problem.g.g.conjugate(), problem.g.omega};
  const ComplexVector uc = problem.u_des.conjugate();
  CHECK(rel_diff(solve_pm(gc, uc, 1e-6).d, solve_pm(problem.g, problem.u_des, 1e-6).d.conjugate()) < 1e-10);

  const auto w = build_weight_shared(KernelSpec::uniform(2), problem.k, s.control_points, 1e-6, s.region,
                                     preset().quadrature);
  const WeightMatrix wc{w.w.conjugate(), w.quadrature};
  CHECK(rel_diff(solve_wpm_shared(gc, wc, uc, 1e-6).d, solve_wpm_shared(problem.g, w, problem.u_des, 1e-6).d.conjugate()) <
        1e-10);
}

TEST_CASE("weights on a tiny region around a control point") {
  const Wavenumber k = Wavenumber::from_frequency(300.0, Medium{});
  const std::vector<Position> cps = {Position(-0.3, -0.3), Position(0.3, -0.3), Position(-0.3, 0.3),
                                     Position(0.3, 0.3)};
  const double side = 1e-4;
  const Region tiny{cps[1], {side, side, 0.0}};
  SUBCASE("shared") {
    const auto w = build_weight_shared(KernelSpec::uniform(2), k, cps, 0.0, tiny, {QuadratureRule::GaussLegendre, 4});
    ComplexMatrix want = ComplexMatrix::Zero(4, 4);
    want(1, 1) = side * side;
    CHECK((w.w - want).cwiseAbs().maxCoeff() < 1e-3 * side * side);
  }
  SUBCASE("general, one source and one point") {
    const Position cp(0.1, 0.2);
    const Position src(1.5, 0.0);
    const Region r{cp, {side, side, 0.0}};
    const Complex g1 = green_point_source(k, src, cp);
    ComplexMatrix gm(1, 1);
    gm << g1;
    const auto spec = KernelSpec::uniform(2);
    const auto gw = build_weights_general({spec}, spec, k, {gm, k.omega()}, {cp}, 0.0, r,
                                          {QuadratureRule::GaussLegendre, 4});
    const double area = side * side;
    CHECK(std::abs(gw.w_gg(0, 0) - area * std::norm(g1)) < 1e-3 * area * std::norm(g1));
    CHECK(std::abs(gw.w_gu(0, 0) - area * std::conj(g1)) < 1e-3 * area * std::abs(g1));
  }
}

TEST_CASE("degenerate inputs") {
  GeneralWeights w{ComplexMatrix::Identity(3, 3), ComplexMatrix::Zero(3, 5), {}};
  CHECK(solve_wpm_general(w, ComplexVector::Ones(5), 1e-6, 1.0).d.isZero(0.0));
  const WeightMatrix wi{ComplexMatrix::Identity(5, 5), {}};
  std::mt19937_64 rng(3);
  const TransferMatrix g{random_vector(rng, 15).reshaped(5, 3), 1.0};
  CHECK(solve_wpm_shared(g, wi, ComplexVector::Zero(5), 1e-6).d.isZero(0.0));
  CHECK_THROWS_AS(solve_wpm_shared(g, wi, ComplexVector::Zero(5), -1.0), ValidationError);
}

TEST_CASE("synthesis") {
  const auto& s = preset().scene;
  const Wavenumber k = Wavenumber::from_frequency(450.0, Medium{});
  const std::vector<Position> pts = {Position(0.0, 0.0), Position(0.2, -0.35)};
  DriveVector d;
  d.omega = k.omega();
  d.d = ComplexVector::Zero(12);
  CHECK(synthesize_field(s, d, pts).isZero(0.0));
  d.d[4] = 1.0;
  const ComplexVector u = synthesize_field(s, d, pts);
  CHECK(std::abs(u[1] - green_point_source(k, s.loudspeakers[4].position, pts[1])) < 1e-15);
  CHECK_THROWS_AS(synthesize_field(s, d, {s.loudspeakers[0].position}), SingularityError);
}

TEST_CASE("per-source prior directions point from the region toward each loudspeaker") {
  const auto& s = preset().scene;
  for (std::size_t l = 0; l < s.num_sources(); ++l) {
    const Direction xi = source_arrival_direction(s, l);
    const Position v = s.loudspeakers[l].position - s.region.center;
    CHECK(xi.vec().dot(v) == doctest::Approx(v.norm()));
  }
}
