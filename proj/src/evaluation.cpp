#include "sfr/evaluation.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace sfr {

EvalGrid::EvalGrid(const Region& region, double spacing) : region_(region), spacing_(spacing) {
  region.validate();
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw ValidationError("evaluation spacing must be positive");
  const int dim = region.dim();
  for (int a = 0; a < dim; ++a) {
    const double cells = region.size[static_cast<std::size_t>(a)] / spacing;
    const auto n = static_cast<std::size_t>(std::floor(cells + 1e-9));
    if (n == 0) throw ValidationError("evaluation spacing exceeds the region size");
    counts_[static_cast<std::size_t>(a)] = n;
  }
  const Position lo = region.lower_corner();
  const double h = 0.5 * spacing;
  points_.reserve(counts_[0] * counts_[1] * counts_[2]);
  for (std::size_t k = 0; k < counts_[2]; ++k) {
    for (std::size_t j = 0; j < counts_[1]; ++j) {
      for (std::size_t i = 0; i < counts_[0]; ++i) {
        const double x = lo.x() + h + static_cast<double>(i) * spacing;
        const double y = lo.y() + h + static_cast<double>(j) * spacing;
        if (dim == 2) {
          points_.emplace_back(x, y);
        } else {
          points_.emplace_back(x, y, lo.z() + h + static_cast<double>(k) * spacing);
        }
      }
    }
  }
}

double EvalGrid::cell_measure() const { return std::pow(spacing_, region_.dim()); }

namespace {

void require_same_grid(const FieldMap& a, const FieldMap& b) {
  if (!a.grid || !b.grid) throw ValidationError("field map has no grid");
  if (a.grid != b.grid && !(*a.grid == *b.grid)) throw ValidationError("field maps are on different grids");
  if (a.values.size() != a.grid->size() || b.values.size() != b.grid->size()) {
    throw ValidationError("field map length does not match its grid");
  }
}

}  // namespace

RealFieldMap error_map(const FieldMap& u_syn, const FieldMap& u_des) {
  require_same_grid(u_syn, u_des);
  RealFieldMap out{u_des.grid, std::vector<double>(u_des.values.size()), u_des.frequency};
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = std::norm(u_syn.values[i] - u_des.values[i]);
  return out;
}

double sdr(const FieldMap& u_syn, const FieldMap& u_des) {
  require_same_grid(u_syn, u_des);
  double signal = 0.0;
  for (const Complex& v : u_des.values) signal += std::norm(v);
  if (!(signal > 0.0)) throw ValidationError("sdr: desired field has zero energy");
  // Same summation order as summing error_map() values.
  double distortion = 0.0;
  for (std::size_t i = 0; i < u_des.values.size(); ++i) distortion += std::norm(u_syn.values[i] - u_des.values[i]);
  if (distortion == 0.0) return kSdrPerfect;
  return 10.0 * std::log10(signal / distortion);
}

void SweepSpec::validate() const {
  if (!(f_start > 0.0)) throw ValidationError("sweep f_start must be > 0");
  if (!(f_step > 0.0)) throw ValidationError("sweep f_step must be > 0");
  if (!(f_end >= f_start)) throw ValidationError("sweep f_end must be >= f_start");
}

std::vector<double> SweepSpec::frequencies() const {
  validate();
  const auto n = static_cast<std::size_t>(std::floor((f_end - f_start) / f_step * (1.0 + 1e-9) + 1e-9)) + 1;
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = f_start + static_cast<double>(i) * f_step;
  return f;
}

void Experiment::validate() const {
  scene.validate();
  if (desired.dim() != scene.dimension) throw ValidationError("desired field dimension does not match scene");
  if (methods.empty()) throw ValidationError("at least one method is required");
  for (std::size_t i = 0; i < methods.size(); ++i) {
    methods[i].validate(scene.dimension);
    for (std::size_t j = 0; j < i; ++j) {
      if (methods[j].name == methods[i].name) throw ValidationError("duplicate method name " + methods[i].name);
    }
  }
  quadrature.validate();
  if (!(eval_spacing > 0.0)) throw ValidationError("evaluation spacing must be positive");
}

FrequencyOutcome evaluate_frequency(const Experiment& exp, const std::shared_ptr<const EvalGrid>& grid,
                                    double frequency_hz) {
  const FrequencyProblem problem = make_frequency_problem(exp.scene, exp.desired, frequency_hz);
  FrequencyOutcome out;
  out.frequency = frequency_hz;
  out.desired = {grid, std::vector<Complex>(grid->size()), frequency_hz};
  for (std::size_t i = 0; i < grid->size(); ++i) out.desired.values[i] = exp.desired(problem.k, grid->points()[i]);

  const ComplexMatrix fields = source_field_matrix(exp.scene, problem.k, grid->points());
  for (const MethodSpec& m : exp.methods) {
    DriveVector d = solve_method(m, exp.scene, exp.desired, problem, exp.quadrature, exp.ridge_mode);
    const ComplexVector syn = fields * d.d;
    FieldMap map{grid, std::vector<Complex>(syn.data(), syn.data() + syn.size()), frequency_hz};
    out.sdr_db.push_back(sdr(map, out.desired));
    out.synthesized.push_back(std::move(map));
    out.drives.push_back(std::move(d));
  }
  return out;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            const std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

SdrSeries frequency_sweep(const Experiment& exp, const SweepSpec& sweep, int threads) {
  exp.validate();
  const auto grid = std::make_shared<const EvalGrid>(exp.scene.region, exp.eval_spacing);
  SdrSeries series;
  series.frequencies = sweep.frequencies();
  for (const auto& m : exp.methods) series.methods.push_back(m.name);
  series.sdr_db.assign(exp.methods.size(), std::vector<double>(series.frequencies.size()));
  parallel_for(series.frequencies.size(), threads, [&](std::size_t i) {
    const FrequencyOutcome o = evaluate_frequency(exp, grid, series.frequencies[i]);
    for (std::size_t m = 0; m < o.sdr_db.size(); ++m) series.sdr_db[m][i] = o.sdr_db[m];
  });
  return series;
}

}  // namespace sfr
