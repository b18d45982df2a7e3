#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sfr/config.hpp"

namespace sfr {

inline constexpr const char* kToolVersion = "0.1.0";

struct OutputFile {
  std::size_t index = 0;
  std::string path;  // relative to the output directory
  std::string kind;  // sdr_sweep | field | error | drive | config
  std::string method;
  std::optional<double> frequency;
};

/// Written as manifest.json next to the outputs.
struct RunManifest {
  std::string config_hash;  // sha256 of the canonical config JSON
  std::string tool_version = kToolVersion;
  std::string timestamp;    // UTC, ISO 8601
  int threads = 1;
  std::vector<OutputFile> files;
};

struct RunOptions {
  std::filesystem::path out_dir;
  int threads = 0;  // 0 = auto
  bool write_sweep = true;
  bool write_fields = true;
  std::optional<SweepSpec> sweep;                       // overrides the config's sweep
  std::optional<std::vector<double>> field_frequencies; // overrides the config's list
};

/// Thread count from SFR_THREADS (0 or unset = auto).
int threads_from_env();

/// Runs the experiment and writes:
///   config.json                       resolved configuration
///   sdr_sweep.csv                     frequency, one SDR column per method
///   field_<method>_<freq>.csv         x, y, re, im
///   error_<method>_<freq>.csv         x, y, sq_err
///   drive_<method>_<freq>.csv         source, re, im
///   manifest.json
/// CSVs are byte-identical for identical configs regardless of thread count.
RunManifest run(const ExperimentConfig& config, const RunOptions& options);

/// SHA-256 of the canonical JSON serialization.
std::string config_hash(const ExperimentConfig& config);

/// 17-significant-digit, locale-independent formatting; +inf becomes "null".
std::string format_number(double v);

}  // namespace sfr
