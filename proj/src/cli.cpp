#include "sfr/cli.hpp"

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sfr/runner.hpp"

namespace sfr {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

void report(std::ostream& out, const RunManifest& m, const std::string& dir) {
  out << "wrote " << m.files.size() + 1 << " files to " << dir << " (" << m.config_hash << ")\n";
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sound field reproduction: pressure matching and weighted pressure matching", "sfr"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string config_path;
  std::string out_dir;
  std::optional<int> threads;
  bool no_run = false;
  double f_start = 0.0, f_end = 0.0, f_step = 0.0, freq = 0.0;

  auto* run_cmd = app.add_subcommand("run", "Run the sweep and write field maps for a config");
  run_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run_cmd->add_option("--out", out_dir, "Output directory")->required();
  run_cmd->add_option("--threads", threads, "Worker threads (default: SFR_THREADS, 0 = auto)");

  auto* preset_cmd = app.add_subcommand("preset-paper", "Write the free-field square-array preset config and run it");
  preset_cmd->add_option("--out", out_dir, "Output directory")->required();
  preset_cmd->add_option("--threads", threads, "Worker threads (default: SFR_THREADS, 0 = auto)");
  preset_cmd->add_flag("--no-run", no_run, "Only write config.json");

  auto* sweep_cmd = app.add_subcommand("sweep", "Write only the SDR-vs-frequency table");
  sweep_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
  sweep_cmd->add_option("--out", out_dir, "Output directory")->required();
  auto* fs_opt = sweep_cmd->add_option("--f-start", f_start, "First frequency, Hz");
  auto* fe_opt = sweep_cmd->add_option("--f-end", f_end, "Last frequency, Hz");
  auto* fp_opt = sweep_cmd->add_option("--f-step", f_step, "Frequency step, Hz");
  sweep_cmd->add_option("--threads", threads, "Worker threads (default: SFR_THREADS, 0 = auto)");

  auto* field_cmd = app.add_subcommand("field", "Write field, error and drive CSVs at one frequency");
  field_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
  field_cmd->add_option("--out", out_dir, "Output directory")->required();
  field_cmd->add_option("--freq", freq, "Frequency, Hz")->required()->check(CLI::PositiveNumber);

  auto* validate_cmd = app.add_subcommand("validate", "Check a config and exit");
  validate_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    RunOptions opts;
    opts.out_dir = out_dir;
    opts.threads = threads ? *threads : threads_from_env();

    if (*validate_cmd) {
      const ExperimentConfig cfg = load_config(config_path);
      const Experiment exp = build_experiment(cfg);
      out << "ok: " << exp.scene.num_sources() << " loudspeakers, " << exp.scene.num_control_points()
          << " control points, " << exp.methods.size() << " methods\n";
      return kExitOk;
    }
    if (*preset_cmd) {
      ExperimentConfig cfg = preset_paper_experiment();
      cfg.output_dir = out_dir;
      if (no_run) {
        std::filesystem::create_directories(opts.out_dir);
        std::ofstream f(opts.out_dir / "config.json");
        f << config_to_json(cfg).dump(2) << "\n";
        if (!f) throw IoError("cannot write " + (opts.out_dir / "config.json").string());
        out << "wrote " << (opts.out_dir / "config.json").string() << "\n";
        return kExitOk;
      }
      report(out, run(cfg, opts), out_dir);
      return kExitOk;
    }

    ExperimentConfig cfg = load_config(config_path);
    if (*run_cmd) {
      report(out, run(cfg, opts), out_dir);
    } else if (*sweep_cmd) {
      SweepSpec s = cfg.sweep;
      if (*fs_opt) s.f_start = f_start;
      if (*fe_opt) s.f_end = f_end;
      if (*fp_opt) s.f_step = f_step;
      s.validate();
      opts.sweep = s;
      opts.write_fields = false;
      report(out, run(cfg, opts), out_dir);
    } else if (*field_cmd) {
      opts.write_sweep = false;
      opts.field_frequencies = std::vector<double>{freq};
      report(out, run(cfg, opts), out_dir);
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace sfr
