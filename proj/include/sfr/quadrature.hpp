#pragma once

#include <vector>

#include "sfr/types.hpp"

namespace sfr {

/// Axis-aligned rectangle (2D) or box (3D).
struct Region {
  Position center{0.0, 0.0};
  std::array<double, 3> size{1.0, 1.0, 0.0};  // edge lengths, meters

  int dim() const { return center.dim(); }
  double measure() const;
  Position lower_corner() const;
  bool contains(const Position& p, double tol = 1e-12) const;
  void validate() const;
};

enum class QuadratureRule {
  GaussLegendre,  // tensor-product Gauss-Legendre
  Midpoint,       // cell-centred uniform grid, equal weights
};

struct QuadratureSpec {
  QuadratureRule rule = QuadratureRule::GaussLegendre;
  int nodes_per_axis = 40;

  void validate() const;
  bool operator==(const QuadratureSpec&) const = default;
};

/// Nodes and weights on [-1, 1], ascending nodes.
struct GaussLegendre1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre1D gauss_legendre(int n);

/// Quadrature nodes covering a region; weights sum to the region measure.
struct QuadratureNodes {
  std::vector<Position> points;
  std::vector<double> weights;
};

/// Row-major node order: x fastest, then y, then z.
QuadratureNodes quadrature_nodes(const Region& region, const QuadratureSpec& spec);

}  // namespace sfr
