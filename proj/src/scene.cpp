#include "sfr/scene.hpp"

#include <string>

namespace sfr {

void Scene::validate() const {
  if (dimension != 2 && dimension != 3) throw ValidationError("scene dimension must be 2 or 3");
  medium.validate();
  if (region.dim() != dimension) throw ValidationError("region dimension does not match scene");
  region.validate();
  if (loudspeakers.empty()) throw ValidationError("scene needs at least one loudspeaker");
  if (control_points.empty()) throw ValidationError("scene needs at least one control point");
  for (std::size_t l = 0; l < loudspeakers.size(); ++l) {
    const auto& s = loudspeakers[l];
    if (s.position.dim() != dimension) {
      throw ValidationError("loudspeaker " + std::to_string(l) + " has wrong dimension");
    }
    s.model.validate(dimension);
    if (s.model.kind != SourceKind::PlaneWave && region.contains(s.position, 0.0)) {
      throw ValidationError("loudspeaker " + std::to_string(l) + " lies inside the target region");
    }
  }
  for (std::size_t n = 0; n < control_points.size(); ++n) {
    const auto& p = control_points[n];
    if (p.dim() != dimension) throw ValidationError("control point " + std::to_string(n) + " has wrong dimension");
    if (!region.contains(p, 1e-9)) {
      throw ValidationError("control point " + std::to_string(n) + " lies outside the target region");
    }
  }
}

Scene Scene::translated(const Position& offset) const {
  Scene s = *this;
  for (auto& l : s.loudspeakers) l.position = l.position + offset;
  for (auto& p : s.control_points) p = p + offset;
  s.region.center = s.region.center + offset;
  return s;
}

ComplexMatrix source_field_matrix(const Scene& scene, Wavenumber k, const std::vector<Position>& points) {
  ComplexMatrix m(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(scene.num_sources()));
  for (std::size_t l = 0; l < scene.num_sources(); ++l) {
    const auto& s = scene.loudspeakers[l];
    for (std::size_t p = 0; p < points.size(); ++p) {
      m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(l)) = s.model.field(k, s.position, points[p]);
    }
  }
  return m;
}

Direction source_arrival_direction(const Scene& scene, std::size_t l) {
  const auto& s = scene.loudspeakers.at(l);
  if (s.model.kind == SourceKind::PlaneWave) return -*s.model.propagation;
  return Direction::normalized(s.position - scene.region.center);
}

}  // namespace sfr
