#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "waveobs/control_loop.hpp"
#include "waveobs/verification.hpp"

namespace waveobs {

// Gaussian beam used by the high-frequency experiment.  The profile is
//   g0 = amplitude * exp(-k_o*a_o/2 (x1-x_o1)^2) * exp(-k_o*b_o/2 (x2-x_o2)^2)
//        * cos(k_o (x2-x_o2)/2)
// and g1 is its time derivative for a beam travelling in the +x2 direction.
struct BeamParams {
  double k_o = 200.0;
  double a_o = 0.5;
  double b_o = 10000.0;
  double x_o1 = 0.5;
  double x_o2 = 0.5;
  double amplitude = 1.0;
};

bool operator==(const BeamParams& a, const BeamParams& b);

double beam_g0(const BeamParams& p, double x1, double x2);
double beam_g1(const BeamParams& p, double x1, double x2);

struct ExperimentConfig {
  std::string experiment = "custom";  // example1 | example2 | custom
  int modes = 100;
  int iterations = 30;
  double horizon = 4.0;
  Region region = Region::strip(0.0, 0.2);
  double tolerance = 1e-9;
  int samples_per_unit = 0;  // 0 = derive from the mode set
  std::uint64_t seed = 2026;
  std::string out_dir = "runs/out";
  int snapshot_resolution = 101;
  bool plot_data = false;
  int quad_order = 32;
  BeamParams beam;
  // Leading state coefficients; shorter-than-G vectors are zero padded.
  std::vector<double> initial_a, initial_b, target_a, target_b;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

ExperimentConfig example1_defaults();
ExperimentConfig example2_defaults();

std::string serialize_config(const ExperimentConfig& cfg);
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::filesystem::path& path);

struct RunResult {
  std::filesystem::path dir;
  bool ok = true;
  std::string summary_json;
};

// Control experiments.  Each writes into cfg.out_dir: a copy of the effective
// config, a JSON summary, energy/cost/error-curve tables, and field snapshots
// on a snapshot_resolution^2 grid.  Solver failures leave the artifacts
// written so far in place and rethrow.
RunResult run_example1(const ExperimentConfig& cfg);
RunResult run_example2(const ExperimentConfig& cfg);
RunResult run_control(const ExperimentConfig& cfg);

// Frequency-function suite: check report plus radial profile tables.
RunResult run_frequency(const ExperimentConfig& cfg);

// Mode table export.
RunResult run_modes(const ExperimentConfig& cfg);

struct PropertyReport {
  bool all_passed = false;
  std::vector<CheckResult> checks;
  std::string json;
};

// Cross-module invariant suites (conservation, dissipation, solver oracle,
// telescoping, mass-matrix oracle, frequency function).
PropertyReport run_property_suites(const ExperimentConfig& cfg);

}  // namespace waveobs
