#include "sfr/quadrature.hpp"

#include <cmath>
#include <string>

namespace sfr {

double Region::measure() const {
  double m = 1.0;
  for (int i = 0; i < dim(); ++i) m *= size[static_cast<std::size_t>(i)];
  return m;
}

Position Region::lower_corner() const {
  const Position half = dim() == 2 ? Position(0.5 * size[0], 0.5 * size[1])
                                   : Position(0.5 * size[0], 0.5 * size[1], 0.5 * size[2]);
  return center - half;
}

bool Region::contains(const Position& p, double tol) const {
  if (p.dim() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (std::abs(p[i] - center[i]) > 0.5 * size[static_cast<std::size_t>(i)] + tol) return false;
  }
  return true;
}

void Region::validate() const {
  for (int i = 0; i < dim(); ++i) {
    const double s = size[static_cast<std::size_t>(i)];
    if (!(s > 0.0) || !std::isfinite(s)) throw ValidationError("region is empty: edge lengths must be positive");
  }
}

void QuadratureSpec::validate() const {
  if (nodes_per_axis < 2) throw ValidationError("quadrature needs at least 2 nodes per axis");
}

GaussLegendre1D gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: n must be >= 1");
  GaussLegendre1D rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_n from the Tricomi initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

QuadratureNodes quadrature_nodes(const Region& region, const QuadratureSpec& spec) {
  region.validate();
  spec.validate();
  const int dim = region.dim();
  const int n = spec.nodes_per_axis;

  // Per-axis nodes and weights.
  std::array<std::vector<double>, 3> x, w;
  for (int a = 0; a < dim; ++a) {
    const auto ax = static_cast<std::size_t>(a);
    const double lo = region.center[a] - 0.5 * region.size[ax];
    const double len = region.size[ax];
    x[ax].resize(static_cast<std::size_t>(n));
    w[ax].resize(static_cast<std::size_t>(n));
    if (spec.rule == QuadratureRule::GaussLegendre) {
      const GaussLegendre1D gl = gauss_legendre(n);
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        x[ax][i] = lo + 0.5 * len * (gl.nodes[i] + 1.0);
        w[ax][i] = 0.5 * len * gl.weights[i];
      }
    } else {
      const double h = len / n;
      for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        x[ax][i] = lo + (static_cast<double>(i) + 0.5) * h;
        w[ax][i] = h;
      }
    }
  }

  QuadratureNodes q;
  const std::size_t nn = static_cast<std::size_t>(n);
  const std::size_t nz = dim == 3 ? nn : 1;
  q.points.reserve(nn * nn * nz);
  q.weights.reserve(nn * nn * nz);
  for (std::size_t k = 0; k < nz; ++k) {
    for (std::size_t j = 0; j < nn; ++j) {
      for (std::size_t i = 0; i < nn; ++i) {
        if (dim == 2) {
          q.points.emplace_back(x[0][i], x[1][j]);
          q.weights.push_back(w[0][i] * w[1][j]);
        } else {
          q.points.emplace_back(x[0][i], x[1][j], x[2][k]);
          q.weights.push_back(w[0][i] * w[1][j] * w[2][k]);
        }
      }
    }
  }
  return q;
}

}  // namespace sfr
