#include <doctest.h>

#include "oracles.hpp"
#include "sfr/wave_fields.hpp"

using namespace sfr;

TEST_CASE("plane wave phase convention") {
  const Wavenumber k = Wavenumber::from_frequency(450.0, Medium{});
  CHECK(k.k() == doctest::Approx(oracle::ref::k_450).epsilon(1e-15));
  const Direction d = Direction::from_angle(kPi / 4);
  CHECK(plane_wave(k, d, Position(0.0, 0.0)) == Complex(1.0, 0.0));
  const Complex p = plane_wave(k, d, Position(0.1, 0.0));
  CHECK(std::abs(p - oracle::ref::plane_450) < 1e-14);
  // Phase decreases along the propagation direction at fixed time.
  CHECK(std::arg(plane_wave(k, d, Position(0.01 * d[0], 0.01 * d[1]))) < 0.0);
}

TEST_CASE("plane wave rejects mixed dimensions") {
  const Wavenumber k = Wavenumber::from_k(1.0);
  CHECK_THROWS_AS(plane_wave(k, Direction::from_angle(0.0), Position(0.0, 0.0, 0.0)), DimensionError);
}

TEST_CASE("point-source Green's functions") {
  SUBCASE("3D full period") {
    const Complex g = green_point_source(Wavenumber::from_k(2 * kPi), Position(0, 0, 0), Position(1, 0, 0));
    CHECK(std::abs(g - Complex(1.0 / (4 * kPi), 0.0)) < 1e-15);
  }
  SUBCASE("2D at kd = 1") {
    const Complex g = green_point_source(Wavenumber::from_k(1.0), Position(0, 0), Position(0.6, 0.8));
    const Complex want = Complex(0.0, -0.25) * Complex(oracle::ref::j0_1, -oracle::ref::y0_1);
    CHECK(std::abs(g - want) < 1e-15);
  }
  SUBCASE("coincident points") {
    CHECK_THROWS_AS(green_point_source(Wavenumber::from_k(1.0), Position(0.3, 0.3), Position(0.3, 0.3)),
                    SingularityError);
  }
  SUBCASE("reciprocity is exact") {
    std::mt19937_64 rng(7);
    for (int dim : {2, 3}) {
      for (int i = 0; i < 20; ++i) {
        const Position a = oracle::random_point(rng, dim, 1.0), b = oracle::random_point(rng, dim, 1.0);
        const Wavenumber k = Wavenumber::from_k(3.0 + i);
        CHECK(green_point_source(k, a, b) == green_point_source(k, b, a));
      }
    }
  }
  SUBCASE("magnitude decays with distance") {
    const Wavenumber k = Wavenumber::from_frequency(300.0, Medium{});
    for (int dim : {2, 3}) {
      const Position o = Position::zero(dim);
      double prev = std::numeric_limits<double>::infinity();
      for (double r = 0.05; r < 5.0; r *= 1.3) {
        const Position p = dim == 2 ? Position(r, 0.0) : Position(r, 0.0, 0.0);
        const double m = std::abs(green_point_source(k, o, p));
        CHECK(m < prev);
        prev = m;
      }
    }
  }
}

TEST_CASE("elementary fields satisfy the Helmholtz equation with O(h^2) convergence") {
  const double kk = 7.0;
  const Wavenumber k = Wavenumber::from_k(kk);
  using Field = std::function<Complex(const Position&)>;
  const std::vector<std::pair<const char*, Field>> fields = {
      {"plane 2D", [&](const Position& r) { return plane_wave(k, Direction::from_angle(0.7), r); }},
      {"plane 3D", [&](const Position& r) { return plane_wave(k, Direction::from_angles(0.7, 1.1), r); }},
      {"green 2D", [&](const Position& r) { return green_point_source(k, Position(1.3, -0.4), r); }},
      {"green 3D", [&](const Position& r) { return green_point_source(k, Position(1.3, -0.4, 0.2), r); }},
  };
  for (const auto& [name, f] : fields) {
    CAPTURE(name);
    const bool is3d = std::string(name).find("3D") != std::string::npos;
    const Position r = is3d ? Position(0.1, 0.2, -0.1) : Position(0.1, 0.2);
    const double e1 = oracle::helmholtz_residual(f, r, kk, 1e-2);
    const double e2 = oracle::helmholtz_residual(f, r, kk, 5e-3);
    CHECK(e1 < 1e-3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
  }
}

TEST_CASE("desired field arrival direction") {
  const DesiredField pw = DesiredField::plane(Direction::from_angle(kPi / 4));
  const Direction xi = pw.arrival_direction(Position(0, 0));
  CHECK(xi[0] == doctest::Approx(-std::cos(kPi / 4)));
  CHECK(xi[1] == doctest::Approx(-std::sin(kPi / 4)));
  const DesiredField ps = DesiredField::point(Position(3.0, 4.0));
  const Direction xs = ps.arrival_direction(Position(0, 0));
  CHECK(xs[0] == doctest::Approx(0.6));
  CHECK(xs[1] == doctest::Approx(0.8));
}
