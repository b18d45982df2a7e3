#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "sfr/solvers.hpp"

namespace sfr {

/// Cell-centred evaluation points covering a region at a fixed spacing. The
/// first point sits at the lower corner plus spacing/2; order is row-major
/// with x fastest.
class EvalGrid {
 public:
  EvalGrid(const Region& region, double spacing);

  const Region& region() const { return region_; }
  double spacing() const { return spacing_; }
  const std::vector<Position>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  /// Cells per axis.
  const std::array<std::size_t, 3>& counts() const { return counts_; }
  /// Area (2D) or volume (3D) of one cell.
  double cell_measure() const;

  bool operator==(const EvalGrid& o) const {
    return region_.center == o.region_.center && region_.size == o.region_.size && spacing_ == o.spacing_;
  }

 private:
  Region region_;
  double spacing_;
  std::array<std::size_t, 3> counts_{1, 1, 1};
  std::vector<Position> points_;
};

struct FieldMap {
  std::shared_ptr<const EvalGrid> grid;
  std::vector<Complex> values;
  double frequency = 0.0;
};

struct RealFieldMap {
  std::shared_ptr<const EvalGrid> grid;
  std::vector<double> values;
  double frequency = 0.0;
};

/// Returned by sdr() when the synthesized field equals the desired one.
inline constexpr double kSdrPerfect = std::numeric_limits<double>::infinity();

/// 10 log10( sum |u_des|^2 / sum |u_syn - u_des|^2 ) over the grid.
/// Throws ValidationError on grid mismatch or zero desired energy.
double sdr(const FieldMap& u_syn, const FieldMap& u_des);

/// Pointwise |u_syn - u_des|^2.
RealFieldMap error_map(const FieldMap& u_syn, const FieldMap& u_des);

struct SweepSpec {
  double f_start = 100.0;
  double f_end = 700.0;
  double f_step = 10.0;

  void validate() const;
  /// f_start + i f_step for every value <= f_end (with a 1e-9 relative slack).
  std::vector<double> frequencies() const;
  bool operator==(const SweepSpec&) const = default;
};

/// A complete reproduction problem minus the frequency.
struct Experiment {
  Scene scene;
  DesiredField desired;
  std::vector<MethodSpec> methods;
  QuadratureSpec quadrature;
  double eval_spacing = 0.01;
  RidgeMode ridge_mode = RidgeMode::Absolute;

  void validate() const;
};

/// Results of every method at one frequency.
struct FrequencyOutcome {
  double frequency = 0.0;
  FieldMap desired;
  std::vector<DriveVector> drives;
  std::vector<FieldMap> synthesized;
  std::vector<double> sdr_db;
};

FrequencyOutcome evaluate_frequency(const Experiment& exp, const std::shared_ptr<const EvalGrid>& grid,
                                    double frequency_hz);

struct SdrSeries {
  std::vector<double> frequencies;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> sdr_db;  // [method][frequency]
};

/// Solves and scores every method at every sweep frequency. Frequencies are
/// distributed over `threads` workers (0 = hardware concurrency); results do
/// not depend on the thread count.
SdrSeries frequency_sweep(const Experiment& exp, const SweepSpec& sweep, int threads = 1);

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = auto).
/// The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace sfr
