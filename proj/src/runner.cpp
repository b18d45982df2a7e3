#include "sfr/runner.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace sfr {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isinf(v) && v > 0.0) return "null";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

int threads_from_env() {
  const char* s = std::getenv("SFR_THREADS");
  if (!s || !*s) return 0;
  char* end = nullptr;
  const long n = std::strtol(s, &end, 10);
  if (*end != '\0' || n < 0) throw ValidationError(std::string("SFR_THREADS must be a non-negative integer, got ") + s);
  return static_cast<int>(n);
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string text = config_to_json(config).dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return "sha256:" + out.str();
}

namespace {

std::string frequency_tag(double f) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, f);
  return {buf, res.ptr};
}

std::string file_safe(const std::string& name) {
  std::string s = name;
  for (char& c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
    if (!ok) c = '_';
  }
  return s;
}

class CsvFile {
 public:
  explicit CsvFile(const fs::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot write " + path.string());
  }
  CsvFile& row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) out_ << ',';
      out_ << c;
      first = false;
    }
    out_ << '\n';
    return *this;
  }
  CsvFile& row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
    return *this;
  }
  void close() {
    out_.close();
    if (!out_) throw IoError("error writing " + path_.string());
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::vector<std::string> coord_cells(const Position& p) {
  std::vector<std::string> cells;
  for (int i = 0; i < p.dim(); ++i) cells.push_back(format_number(p[i]));
  return cells;
}

std::vector<std::string> coord_header(int dim) {
  if (dim == 2) return {"x", "y"};
  return {"x", "y", "z"};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest_json(const RunManifest& m) {
  json j;
  j["tool"] = "sfr";
  j["tool_version"] = m.tool_version;
  j["config_hash"] = m.config_hash;
  j["timestamp"] = m.timestamp;
  j["threads"] = m.threads;
  j["files"] = json::array();
  for (const auto& f : m.files) {
    json e{{"index", f.index}, {"path", f.path}, {"kind", f.kind}};
    if (!f.method.empty()) e["method"] = f.method;
    if (f.frequency) e["frequency"] = *f.frequency;
    j["files"].push_back(e);
  }
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace

RunManifest run(const ExperimentConfig& config, const RunOptions& options) {
  const Experiment exp = build_experiment(config);
  const int threads = options.threads;

  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + options.out_dir.string() + ": " + ec.message());

  RunManifest manifest;
  manifest.config_hash = config_hash(config);
  manifest.timestamp = utc_timestamp();
  manifest.threads = threads;
  auto record = [&](std::string path, std::string kind, std::string method, std::optional<double> f) {
    manifest.files.push_back({manifest.files.size(), std::move(path), std::move(kind), std::move(method), f});
  };

  write_text(options.out_dir / "config.json", config_to_json(config).dump(2) + "\n");
  record("config.json", "config", "", std::nullopt);

  if (options.write_sweep) {
    const SweepSpec sweep = options.sweep.value_or(config.sweep);
    const SdrSeries series = frequency_sweep(exp, sweep, threads);
    CsvFile csv(options.out_dir / "sdr_sweep.csv");
    std::vector<std::string> header{"frequency"};
    header.insert(header.end(), series.methods.begin(), series.methods.end());
    csv.row(header);
    for (std::size_t i = 0; i < series.frequencies.size(); ++i) {
      std::vector<std::string> cells{format_number(series.frequencies[i])};
      for (const auto& col : series.sdr_db) cells.push_back(format_number(col[i]));
      csv.row(cells);
    }
    csv.close();
    record("sdr_sweep.csv", "sdr_sweep", "", std::nullopt);
  }

  if (options.write_fields) {
    const auto freqs = options.field_frequencies.value_or(config.field_frequencies);
    const auto grid = std::make_shared<const EvalGrid>(exp.scene.region, exp.eval_spacing);
    std::vector<FrequencyOutcome> outcomes(freqs.size());
    parallel_for(freqs.size(), threads, [&](std::size_t i) { outcomes[i] = evaluate_frequency(exp, grid, freqs[i]); });

    const auto coords = coord_header(exp.scene.dimension);
    for (const FrequencyOutcome& o : outcomes) {
      const std::string ftag = frequency_tag(o.frequency);
      for (std::size_t m = 0; m < exp.methods.size(); ++m) {
        const std::string mtag = file_safe(exp.methods[m].name);
        const std::string& mname = exp.methods[m].name;

        const std::string field_name = "field_" + mtag + "_" + ftag + ".csv";
        CsvFile field(options.out_dir / field_name);
        auto h = coords;
        h.insert(h.end(), {"re", "im"});
        field.row(h);
        const FieldMap& syn = o.synthesized[m];
        for (std::size_t p = 0; p < grid->size(); ++p) {
          auto cells = coord_cells(grid->points()[p]);
          cells.push_back(format_number(syn.values[p].real()));
          cells.push_back(format_number(syn.values[p].imag()));
          field.row(cells);
        }
        field.close();
        record(field_name, "field", mname, o.frequency);

        const std::string error_name = "error_" + mtag + "_" + ftag + ".csv";
        CsvFile err(options.out_dir / error_name);
        h = coords;
        h.push_back("sq_err");
        err.row(h);
        const RealFieldMap emap = error_map(syn, o.desired);
        for (std::size_t p = 0; p < grid->size(); ++p) {
          auto cells = coord_cells(grid->points()[p]);
          cells.push_back(format_number(emap.values[p]));
          err.row(cells);
        }
        err.close();
        record(error_name, "error", mname, o.frequency);

        const std::string drive_name = "drive_" + mtag + "_" + ftag + ".csv";
        CsvFile drive(options.out_dir / drive_name);
        drive.row({"source", "re", "im"});
        const ComplexVector& d = o.drives[m].d;
        for (Eigen::Index l = 0; l < d.size(); ++l) {
          drive.row({std::to_string(l), format_number(d[l].real()), format_number(d[l].imag())});
        }
        drive.close();
        record(drive_name, "drive", mname, o.frequency);
      }
    }
  }

  write_text(options.out_dir / "manifest.json", manifest_json(manifest).dump(2) + "\n");
  return manifest;
}

}  // namespace sfr
