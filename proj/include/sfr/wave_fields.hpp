#pragma once

#include <optional>

#include "sfr/types.hpp"

namespace sfr {

// Time convention is e^{+j omega t} throughout. A plane wave with arrival
// direction xi has wave vector -k xi and value exp(j k xi.r); equivalently a
// wave propagating along d has value exp(-j k d.r). Outgoing point-source
// fields are (-j/4) H0^(2)(k d) in 2D and exp(-j k d) / (4 pi d) in 3D.

/// Coincidence threshold for source/receiver distance, meters.
inline constexpr double kMinSourceDistance = 1e-9;

/// Unit-amplitude plane wave propagating along prop_dir.
Complex plane_wave(Wavenumber k, const Direction& prop_dir, const Position& r);

/// Free-field Green's function of a point source at src, 2D or 3D by dimension.
/// Throws SingularityError if ||r - src|| < 1e-9 m.
Complex green_point_source(Wavenumber k, const Position& src, const Position& r);

enum class SourceKind { PointSource2D, PointSource3D, PlaneWave };

/// Radiation model of a secondary source.
struct SourceModel {
  SourceKind kind = SourceKind::PointSource2D;
  std::optional<Direction> propagation;  // PlaneWave only

  static SourceModel point(int dim) {
    return {dim == 3 ? SourceKind::PointSource3D : SourceKind::PointSource2D, std::nullopt};
  }
  static SourceModel plane(const Direction& d) { return {SourceKind::PlaneWave, d}; }

  /// Throws ValidationError if the model cannot be used in a scene of this dimension.
  void validate(int dim) const;

  /// Field at r radiated by a unit-driven source of this model placed at pos.
  Complex field(Wavenumber k, const Position& pos, const Position& r) const;
};

/// Target field: a plane wave or a point source.
struct DesiredField {
  enum class Kind { PlaneWave, PointSource };
  Kind kind = Kind::PlaneWave;
  std::optional<Direction> propagation;  // PlaneWave
  std::optional<Position> source;        // PointSource

  static DesiredField plane(const Direction& d) { return {Kind::PlaneWave, d, std::nullopt}; }
  static DesiredField point(const Position& p) { return {Kind::PointSource, std::nullopt, p}; }

  Complex operator()(Wavenumber k, const Position& r) const;

  /// Arrival direction of the field's energy as seen from region_center;
  /// used as the prior direction of directional kernels.
  Direction arrival_direction(const Position& region_center) const;

  int dim() const;
};

}  // namespace sfr
