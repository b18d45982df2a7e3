#include "sfr/wave_fields.hpp"

#include <cmath>

#include "sfr/special_functions.hpp"

namespace sfr {

Complex plane_wave(Wavenumber k, const Direction& prop_dir, const Position& r) {
  if (prop_dir.dim() != r.dim()) throw DimensionError("plane_wave: direction and position dimensions differ");
  // Wave vector k*d for arrival direction xi = -d; value exp(-j kvec.r).
  const double phase = k.k() * prop_dir.vec().dot(r);
  return {std::cos(phase), -std::sin(phase)};
}

Complex green_point_source(Wavenumber k, const Position& src, const Position& r) {
  const double d = r.distance(src);
  if (d < kMinSourceDistance) {
    throw SingularityError("green_point_source: receiver coincides with source (distance " +
                           std::to_string(d) + " m)");
  }
  const double kd = k.k() * d;
  if (r.dim() == 2) {
    return Complex(0.0, -0.25) * hankel2_0(kd);
  }
  return Complex(std::cos(kd), -std::sin(kd)) / (4.0 * kPi * d);
}

void SourceModel::validate(int dim) const {
  switch (kind) {
    case SourceKind::PointSource2D:
      if (dim != 2) throw ValidationError("2D point source in a 3D scene");
      break;
    case SourceKind::PointSource3D:
      if (dim != 3) throw ValidationError("3D point source in a 2D scene");
      break;
    case SourceKind::PlaneWave:
      if (!propagation) throw ValidationError("plane-wave source needs a propagation direction");
      if (propagation->dim() != dim) throw ValidationError("plane-wave source direction has wrong dimension");
      break;
  }
}

Complex SourceModel::field(Wavenumber k, const Position& pos, const Position& r) const {
  switch (kind) {
    case SourceKind::PlaneWave:
      // Phase referenced to the source position.
      return plane_wave(k, *propagation, r - pos);
    case SourceKind::PointSource2D:
    case SourceKind::PointSource3D:
      break;
  }
  return green_point_source(k, pos, r);
}

Complex DesiredField::operator()(Wavenumber k, const Position& r) const {
  if (kind == Kind::PlaneWave) return plane_wave(k, *propagation, r);
  return green_point_source(k, *source, r);
}

Direction DesiredField::arrival_direction(const Position& region_center) const {
  if (kind == Kind::PlaneWave) return -*propagation;
  return Direction::normalized(*source - region_center);
}

int DesiredField::dim() const { return kind == Kind::PlaneWave ? propagation->dim() : source->dim(); }

}  // namespace sfr
