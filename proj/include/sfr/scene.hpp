#pragma once

#include <vector>

#include "sfr/quadrature.hpp"
#include "sfr/wave_fields.hpp"

namespace sfr {

struct Loudspeaker {
  Position position;
  SourceModel model;
};

/// Loudspeakers around a target region with control points inside it.
struct Scene {
  int dimension = 2;
  Medium medium;
  std::vector<Loudspeaker> loudspeakers;
  std::vector<Position> control_points;
  Region region;

  std::size_t num_sources() const { return loudspeakers.size(); }
  std::size_t num_control_points() const { return control_points.size(); }

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;

  /// Rigid translation of every position in the scene.
  Scene translated(const Position& offset) const;
};

/// Field of each loudspeaker at each point: P x L.
ComplexMatrix source_field_matrix(const Scene& scene, Wavenumber k, const std::vector<Position>& points);

/// Arrival direction of loudspeaker l's direct sound inside the region: the
/// unit vector from the region centre toward the loudspeaker (point sources),
/// or the reverse of the propagation direction (plane-wave sources).
Direction source_arrival_direction(const Scene& scene, std::size_t l);

}  // namespace sfr
