// Command-line front end: experiment runs, mode tables, and property suites.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "waveobs/experiment.hpp"
#include "waveobs/io.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  int modes = -1;
  int iterations = -1;
  double tol = -1.0;
  double horizon = -1.0;
  bool plot_data = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_control_knobs) {
  cmd->add_option("--config", flags.config_path, "JSON config file; flags override its values")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--modes", flags.modes, "number of retained modes (G)");
  if (with_control_knobs) {
    cmd->add_option("--iterations", flags.iterations, "time-reversal iterations (N)");
    cmd->add_option("--tol", flags.tol, "solver tolerance");
    cmd->add_option("--horizon", flags.horizon, "control horizon (T)");
  }
  cmd->add_flag("--plot-data", flags.plot_data,
                "also write gnuplot-style whitespace tables next to the CSVs");
}

waveobs::ExperimentConfig resolve(const CommonFlags& flags,
                                  const waveobs::ExperimentConfig& defaults) {
  waveobs::ExperimentConfig cfg = defaults;
  if (!flags.config_path.empty()) cfg = waveobs::load_config_file(flags.config_path);
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (flags.modes > 0) cfg.modes = flags.modes;
  if (flags.iterations >= 0) cfg.iterations = flags.iterations;
  if (flags.tol > 0.0) cfg.tolerance = flags.tol;
  if (flags.horizon > 0.0) cfg.horizon = flags.horizon;
  if (flags.plot_data) cfg.plot_data = true;
  return cfg;
}

void report_run(const waveobs::RunResult& res) {
  std::printf("wrote %s\n", res.dir.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral wave observability and time-reversal control experiments"};
  app.require_subcommand(1);

  CommonFlags modes_flags, ex1_flags, ex2_flags, control_flags, freq_flags, verify_flags;

  CLI::App* modes_cmd = app.add_subcommand("modes", "export the retained mode table");
  add_common(modes_cmd, modes_flags, false);

  CLI::App* ex1_cmd = app.add_subcommand("example1", "low-frequency control experiment");
  add_common(ex1_cmd, ex1_flags, true);

  CLI::App* ex2_cmd = app.add_subcommand("example2", "high-frequency gaussian-beam experiment");
  add_common(ex2_cmd, ex2_flags, true);

  CLI::App* control_cmd =
      app.add_subcommand("control", "custom control problem from a config file");
  add_common(control_cmd, control_flags, true);

  CLI::App* freq_cmd = app.add_subcommand("freq", "frequency-function suite and profiles");
  add_common(freq_cmd, freq_flags, false);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run all property suites; nonzero exit on failure");
  add_common(verify_cmd, verify_flags, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (modes_cmd->parsed()) {
      waveobs::ExperimentConfig defaults;
      defaults.modes = 100;
      defaults.out_dir = "runs/modes";
      report_run(waveobs::run_modes(resolve(modes_flags, defaults)));
      return 0;
    }
    if (ex1_cmd->parsed()) {
      auto res = waveobs::run_example1(resolve(ex1_flags, waveobs::example1_defaults()));
      report_run(res);
      return 0;
    }
    if (ex2_cmd->parsed()) {
      auto res = waveobs::run_example2(resolve(ex2_flags, waveobs::example2_defaults()));
      report_run(res);
      return 0;
    }
    if (control_cmd->parsed()) {
      if (control_flags.config_path.empty()) {
        std::fprintf(stderr, "control: --config is required\n");
        return 2;
      }
      waveobs::ExperimentConfig defaults;
      auto res = waveobs::run_control(resolve(control_flags, defaults));
      report_run(res);
      return 0;
    }
    if (freq_cmd->parsed()) {
      waveobs::ExperimentConfig defaults;
      defaults.out_dir = "runs/freq";
      auto res = waveobs::run_frequency(resolve(freq_flags, defaults));
      report_run(res);
      if (!res.ok) {
        std::fprintf(stderr, "frequency suite reported failures; see checks.json\n");
        return 1;
      }
      return 0;
    }
    if (verify_cmd->parsed()) {
      waveobs::ExperimentConfig defaults;
      defaults.out_dir = "";
      waveobs::ExperimentConfig cfg = resolve(verify_flags, defaults);
      auto rep = waveobs::run_property_suites(cfg);
      for (const auto& c : rep.checks)
        std::printf("%-34s %s  measured=%s threshold=%s\n", c.name.c_str(),
                    c.passed ? "pass" : "FAIL", waveobs::format_double(c.measured).c_str(),
                    waveobs::format_double(c.threshold).c_str());
      if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        waveobs::write_text_file(std::filesystem::path(cfg.out_dir) / "report.json", rep.json);
      }
      std::printf("%s\n", rep.all_passed ? "all checks passed" : "CHECK FAILURES");
      return rep.all_passed ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
