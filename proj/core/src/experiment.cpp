#include "waveobs/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "waveobs/io.hpp"

namespace waveobs {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kConfigSchema = "waveobs-config-v1";
constexpr const char* kSummarySchema = "waveobs-summary-v1";
constexpr const char* kVerifySchema = "waveobs-verify-v1";
constexpr const char* kFreqSchema = "waveobs-freq-v1";
constexpr const char* kModesSchema = "waveobs-modes-v1";

ordered_json region_to_json(const Region& r) {
  ordered_json j;
  if (r.kind == Region::Kind::FullDomain) {
    j["kind"] = "full";
  } else {
    j["kind"] = "strip";
    j["x1_lo"] = r.x1_lo;
    j["x1_hi"] = r.x1_hi;
  }
  return j;
}

Region region_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("config: region must be an object with a 'kind'");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "full") return Region::full();
  if (kind == "strip")
    return Region::strip(j.at("x1_lo").get<double>(), j.at("x1_hi").get<double>());
  throw std::invalid_argument("config: unknown region kind '" + kind + "'");
}

ordered_json beam_to_json(const BeamParams& b) {
  ordered_json j;
  j["k_o"] = b.k_o;
  j["a_o"] = b.a_o;
  j["b_o"] = b.b_o;
  j["x_o1"] = b.x_o1;
  j["x_o2"] = b.x_o2;
  j["amplitude"] = b.amplitude;
  return j;
}

BeamParams beam_from_json(const ordered_json& j) {
  BeamParams b;
  for (const auto& [key, val] : j.items()) {
    if (key == "k_o") b.k_o = val.get<double>();
    else if (key == "a_o") b.a_o = val.get<double>();
    else if (key == "b_o") b.b_o = val.get<double>();
    else if (key == "x_o1") b.x_o1 = val.get<double>();
    else if (key == "x_o2") b.x_o2 = val.get<double>();
    else if (key == "amplitude") b.amplitude = val.get<double>();
    else throw std::invalid_argument("config: unknown beam key '" + key + "'");
  }
  return b;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.experiment != "example1" && cfg.experiment != "example2" && cfg.experiment != "custom")
    throw std::invalid_argument("config: experiment must be example1, example2, or custom");
  if (cfg.modes < 1) throw std::invalid_argument("config: modes must be >= 1");
  if (cfg.iterations < 0) throw std::invalid_argument("config: iterations must be >= 0");
  if (!(cfg.horizon > 0.0)) throw std::invalid_argument("config: horizon must be positive");
  if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
  if (cfg.samples_per_unit < 0)
    throw std::invalid_argument("config: samples_per_unit must be >= 0");
  if (cfg.snapshot_resolution < 2)
    throw std::invalid_argument("config: snapshot_resolution must be >= 2");
  if (cfg.quad_order < 4) throw std::invalid_argument("config: quad_order must be >= 4");
  if (!(cfg.beam.k_o > 0.0) || !(cfg.beam.a_o > 0.0) || !(cfg.beam.b_o > 0.0))
    throw std::invalid_argument("config: beam k_o, a_o, b_o must be positive");
  if (cfg.out_dir.empty()) throw std::invalid_argument("config: out_dir must not be empty");
  auto check_len = [&](const std::vector<double>& v, const char* which) {
    if (static_cast<int>(v.size()) > cfg.modes)
      throw std::invalid_argument(std::string("config: ") + which +
                                  " has more coefficients than modes");
  };
  check_len(cfg.initial_a, "initial_a");
  check_len(cfg.initial_b, "initial_b");
  check_len(cfg.target_a, "target_a");
  check_len(cfg.target_b, "target_b");
}

SpectralState padded_state(const ModeSet& ms, const std::vector<double>& a,
                           const std::vector<double>& b) {
  Eigen::VectorXd av = Eigen::VectorXd::Zero(ms.size());
  Eigen::VectorXd bv = Eigen::VectorXd::Zero(ms.size());
  for (std::size_t i = 0; i < a.size(); ++i) av[static_cast<Eigen::Index>(i)] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) bv[static_cast<Eigen::Index>(i)] = b[i];
  return make_state(ms, std::move(av), std::move(bv));
}

// Position field sum_j c_j e_j on a uniform res x res grid, via the separable
// structure: field = SX * C * SY^T with SX(p, k-1) = sin(pi k x_p).
Eigen::MatrixXd synthesize_field(const ModeSet& ms, const Eigen::VectorXd& coeff, int res) {
  int max_k = 0, max_l = 0;
  for (const auto& m : ms.modes()) {
    max_k = std::max(max_k, m.k);
    max_l = std::max(max_l, m.l);
  }
  Eigen::MatrixXd sx(res, max_k), sy(res, max_l);
  for (int p = 0; p < res; ++p) {
    double x = static_cast<double>(p) / (res - 1);
    for (int k = 1; k <= max_k; ++k) sx(p, k - 1) = std::sin(M_PI * k * x);
    for (int l = 1; l <= max_l; ++l) sy(p, l - 1) = std::sin(M_PI * l * x);
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(max_k, max_l);
  for (int j = 0; j < ms.size(); ++j) {
    const auto& m = ms.mode(j);
    c(m.k - 1, m.l - 1) = 2.0 * coeff[j];
  }
  Eigen::MatrixXd field = sx * c * sy.transpose();
  return field;
}

// CSV always; gnuplot whitespace variant alongside when requested.
void emit_table(const std::filesystem::path& dir, const std::string& stem,
                const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows, bool plot_data) {
  write_table(dir / (stem + ".csv"), TableSpec{header, false}, rows);
  if (plot_data) write_table(dir / (stem + ".dat"), TableSpec{header, true}, rows);
}

void emit_field(const std::filesystem::path& dir, const std::string& stem, const ModeSet& ms,
                const Eigen::VectorXd& coeff, int res, bool plot_data) {
  Eigen::MatrixXd field = synthesize_field(ms, coeff, res);
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(res) * res);
  for (int p = 0; p < res; ++p) {
    double x1 = static_cast<double>(p) / (res - 1);
    for (int q = 0; q < res; ++q) {
      double x2 = static_cast<double>(q) / (res - 1);
      rows.push_back({x1, x2, field(p, q)});
    }
  }
  emit_table(dir, stem, {"x1", "x2", "value"}, rows, plot_data);
}

ordered_json check_to_json(const CheckResult& c) {
  ordered_json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["measured"] = c.measured;
  j["threshold"] = c.threshold;
  j["detail"] = c.detail;
  return j;
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

// Shared tail of the control experiments: iterate, verify, persist.
// `snapshots` are (file stem, position coefficients) pairs written next to the
// achieved terminal field.  Throws after preserving whatever was written.
RunResult run_control_pipeline(const ExperimentConfig& cfg, const ModeSet& ms,
                               const ControlProblem& problem, ordered_json extra,
                               const std::vector<std::pair<std::string, Eigen::VectorXd>>& snapshots) {
  RunResult res;
  res.dir = cfg.out_dir;
  std::filesystem::create_directories(res.dir);
  write_text_file(res.dir / "config.json", serialize_config(cfg));

  ordered_json summary;
  summary["schema"] = kSummarySchema;
  summary["experiment"] = cfg.experiment;
  summary["modes"] = cfg.modes;
  summary["iterations"] = problem.iterations;
  summary["horizon"] = problem.horizon;
  summary["region"] = region_to_json(problem.region);
  summary["tolerance"] = problem.solver_tol;
  summary["seed"] = cfg.seed;

  try {
    ControlRun run = iterate(ms, problem);
    ControlVerification ver = verify_controlled(ms, problem, run);
    double cost = control_cost(ms, run);

    MassMatrix mass = omega_mass_matrix(ms, problem.region);
    MassApply mass_apply(ms, mass);
    std::vector<SpectralState> controlled =
        evolve_forced(ms, problem.initial, run.control, mass, run.control.times);

    summary["samples_per_unit"] = run.samples_per_unit;
    summary["status"] = "ok";
    summary["initial_energy"] = energy(ms, problem.initial);
    summary["target_energy"] = energy(ms, problem.target);
    summary["terminal_energy"] = energy(ms, controlled.back());
    if (sobolev_norm(ms, problem.target, NormLevel::H01_L2) > 0.0)
      summary["target_lambda_ratio"] = lambda_ratio(ms, problem.target);
    summary["d"] = run.d;
    summary["m_bound"] = run.m_bound;
    summary["m_bound_ratio"] = run.m_bound_ratio;
    summary["m_bound_flag"] = run.m_bound_flag;
    summary["pair_cost"] = run.pair_cost;
    summary["control_cost"] = cost;
    summary["predicted_error"] = ver.predicted_error;
    summary["achieved_error"] = ver.achieved_error;
    summary["mismatch"] = ver.mismatch;
    for (auto& [key, val] : extra.items()) summary[key] = val;

    // energy of the controlled trajectory along the record grid
    {
      std::vector<std::vector<double>> rows;
      rows.reserve(controlled.size());
      for (std::size_t i = 0; i < controlled.size(); ++i)
        rows.push_back({run.control.times[static_cast<Eigen::Index>(i)],
                        energy(ms, controlled[i])});
      emit_table(res.dir, "energy", {"t", "energy"}, rows, cfg.plot_data);
    }
    // control cost as a function of the truncation iteration
    {
      std::vector<std::vector<double>> rows;
      for (std::size_t l = 0; l < run.pair_cost.size(); ++l)
        rows.push_back({static_cast<double>(l), run.pair_cost[l]});
      emit_table(res.dir, "cost", {"iterations", "cost"}, rows, cfg.plot_data);
    }
    // terminal energies of the damped passes, indexed as the recursion counts
    {
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < run.d.size(); ++i)
        rows.push_back({static_cast<double>(i) - 1.0, run.d[i]});
      emit_table(res.dir, "error_curve", {"j", "d"}, rows, cfg.plot_data);
    }
    // instantaneous masked L2 norm of the control force
    {
      std::vector<std::vector<double>> rows;
      rows.reserve(static_cast<std::size_t>(run.control.times.size()));
      for (Eigen::Index i = 0; i < run.control.times.size(); ++i) {
        double q = mass_apply.quadratic(run.control.g.row(i).transpose());
        rows.push_back({run.control.times[i], std::sqrt(std::max(0.0, q))});
      }
      emit_table(res.dir, "control_norm", {"t", "norm"}, rows, cfg.plot_data);
    }
    for (const auto& [stem, coeff] : snapshots)
      emit_field(res.dir, stem, ms, coeff, cfg.snapshot_resolution, cfg.plot_data);
    emit_field(res.dir, "achieved_position", ms, controlled.back().a, cfg.snapshot_resolution,
               cfg.plot_data);

    res.summary_json = dump_json(summary);
    write_text_file(res.dir / "summary.json", res.summary_json);
    res.ok = true;
    return res;
  } catch (const std::exception& e) {
    summary["status"] = "failed";
    summary["error"] = e.what();
    write_text_file(res.dir / "summary.json", dump_json(summary));
    throw;
  }
}

// Panel counts that resolve both the beam envelope (width sigma) and the
// highest retained wavenumber on a unit axis: about four Gauss-Legendre nodes
// per envelope standard deviation and eight per mode period.
int beam_panels(double sigma, int max_wavenumber, int order) {
  double for_envelope = 4.0 / (sigma * order);
  double for_modes = 4.0 * max_wavenumber / order;
  double need = std::max({8.0, for_envelope, for_modes});
  return static_cast<int>(std::ceil(need));
}

}  // namespace

bool operator==(const BeamParams& a, const BeamParams& b) {
  return a.k_o == b.k_o && a.a_o == b.a_o && a.b_o == b.b_o && a.x_o1 == b.x_o1 &&
         a.x_o2 == b.x_o2 && a.amplitude == b.amplitude;
}

double beam_g0(const BeamParams& p, double x1, double x2) {
  double d1 = x1 - p.x_o1;
  double d2 = x2 - p.x_o2;
  double env = std::exp(-0.5 * p.k_o * p.a_o * d1 * d1) * std::exp(-0.5 * p.k_o * p.b_o * d2 * d2);
  return p.amplitude * env * std::cos(0.5 * p.k_o * d2);
}

double beam_g1(const BeamParams& p, double x1, double x2) {
  double d1 = x1 - p.x_o1;
  double d2 = x2 - p.x_o2;
  double env = std::exp(-0.5 * p.k_o * p.a_o * d1 * d1) * std::exp(-0.5 * p.k_o * p.b_o * d2 * d2);
  double phase = 0.5 * p.k_o * d2;
  double bracket = p.k_o * p.b_o * d2 * std::cos(phase) +
                   (0.5 * p.k_o + p.a_o) * std::sin(phase) -
                   p.k_o * p.a_o * p.a_o * d1 * d1 * std::sin(phase);
  return p.amplitude * env * bracket;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.experiment == b.experiment && a.modes == b.modes && a.iterations == b.iterations &&
         a.horizon == b.horizon && a.region == b.region && a.tolerance == b.tolerance &&
         a.samples_per_unit == b.samples_per_unit && a.seed == b.seed && a.out_dir == b.out_dir &&
         a.snapshot_resolution == b.snapshot_resolution && a.plot_data == b.plot_data &&
         a.quad_order == b.quad_order && a.beam == b.beam && a.initial_a == b.initial_a &&
         a.initial_b == b.initial_b && a.target_a == b.target_a && a.target_b == b.target_b;
}

ExperimentConfig example1_defaults() {
  ExperimentConfig cfg;
  cfg.experiment = "example1";
  cfg.modes = 100;
  cfg.iterations = 30;
  cfg.horizon = 4.0;
  cfg.region = Region::strip(0.0, 0.2);
  cfg.out_dir = "runs/example1";
  cfg.target_a = {1.0, 1.0};
  cfg.target_b = {1.0};
  return cfg;
}

ExperimentConfig example2_defaults() {
  ExperimentConfig cfg;
  cfg.experiment = "example2";
  cfg.modes = 1000;
  cfg.iterations = 100;
  cfg.horizon = 4.0;
  cfg.region = Region::strip(0.0, 0.2);
  cfg.out_dir = "runs/example2";
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  ordered_json j;
  j["schema"] = kConfigSchema;
  j["experiment"] = cfg.experiment;
  j["modes"] = cfg.modes;
  j["iterations"] = cfg.iterations;
  j["horizon"] = cfg.horizon;
  j["region"] = region_to_json(cfg.region);
  j["tolerance"] = cfg.tolerance;
  j["samples_per_unit"] = cfg.samples_per_unit;
  j["seed"] = cfg.seed;
  j["out_dir"] = cfg.out_dir;
  j["snapshot_resolution"] = cfg.snapshot_resolution;
  j["plot_data"] = cfg.plot_data;
  j["quad_order"] = cfg.quad_order;
  j["beam"] = beam_to_json(cfg.beam);
  j["initial_a"] = cfg.initial_a;
  j["initial_b"] = cfg.initial_b;
  j["target_a"] = cfg.target_a;
  j["target_b"] = cfg.target_b;
  return dump_json(j);
}

ExperimentConfig parse_config(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text);
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "schema") {
      std::string schema = val.get<std::string>();
      if (schema != kConfigSchema)
        throw std::invalid_argument("config: unsupported schema '" + schema + "'");
    } else if (key == "experiment") cfg.experiment = val.get<std::string>();
    else if (key == "modes") cfg.modes = val.get<int>();
    else if (key == "iterations") cfg.iterations = val.get<int>();
    else if (key == "horizon") cfg.horizon = val.get<double>();
    else if (key == "region") cfg.region = region_from_json(val);
    else if (key == "tolerance") cfg.tolerance = val.get<double>();
    else if (key == "samples_per_unit") cfg.samples_per_unit = val.get<int>();
    else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
    else if (key == "out_dir") cfg.out_dir = val.get<std::string>();
    else if (key == "snapshot_resolution") cfg.snapshot_resolution = val.get<int>();
    else if (key == "plot_data") cfg.plot_data = val.get<bool>();
    else if (key == "quad_order") cfg.quad_order = val.get<int>();
    else if (key == "beam") cfg.beam = beam_from_json(val);
    else if (key == "initial_a") cfg.initial_a = val.get<std::vector<double>>();
    else if (key == "initial_b") cfg.initial_b = val.get<std::vector<double>>();
    else if (key == "target_a") cfg.target_a = val.get<std::vector<double>>();
    else if (key == "target_b") cfg.target_b = val.get<std::vector<double>>();
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  return parse_config(read_text_file(path));
}

RunResult run_example1(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.experiment = "example1";
  validate_config(cfg);
  ModeSet ms = enumerate_modes(cfg.modes);
  ControlProblem problem;
  problem.region = cfg.region;
  problem.horizon = cfg.horizon;
  problem.iterations = cfg.iterations;
  problem.initial = padded_state(ms, cfg.initial_a, cfg.initial_b);
  problem.target = padded_state(ms, cfg.target_a, cfg.target_b);
  problem.solver_tol = cfg.tolerance;
  problem.samples_per_unit = cfg.samples_per_unit;
  return run_control_pipeline(cfg, ms, problem, ordered_json::object(),
                              {{"target_position", problem.target.a}});
}

RunResult run_control(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.experiment = "custom";
  validate_config(cfg);
  ModeSet ms = enumerate_modes(cfg.modes);
  ControlProblem problem;
  problem.region = cfg.region;
  problem.horizon = cfg.horizon;
  problem.iterations = cfg.iterations;
  problem.initial = padded_state(ms, cfg.initial_a, cfg.initial_b);
  problem.target = padded_state(ms, cfg.target_a, cfg.target_b);
  problem.solver_tol = cfg.tolerance;
  problem.samples_per_unit = cfg.samples_per_unit;
  return run_control_pipeline(cfg, ms, problem, ordered_json::object(),
                              {{"target_position", problem.target.a}});
}

RunResult run_example2(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.experiment = "example2";
  validate_config(cfg);
  ModeSet ms = enumerate_modes(cfg.modes);

  int max_k = 0, max_l = 0;
  for (const auto& m : ms.modes()) {
    max_k = std::max(max_k, m.k);
    max_l = std::max(max_l, m.l);
  }
  const BeamParams& beam = cfg.beam;
  double sigma1 = 1.0 / std::sqrt(beam.k_o * beam.a_o);
  double sigma2 = 1.0 / std::sqrt(beam.k_o * beam.b_o);

  auto project_beam = [&](int order) {
    QuadSpec quad;
    quad.order = order;
    quad.panels_x = beam_panels(sigma1, max_k, order);
    quad.panels_y = beam_panels(sigma2, max_l, order);
    Eigen::VectorXd a =
        project([&](double x1, double x2) { return beam_g0(beam, x1, x2); }, ms, quad);
    Eigen::VectorXd b =
        project([&](double x1, double x2) { return beam_g1(beam, x1, x2); }, ms, quad);
    return std::make_pair(std::move(a), std::move(b));
  };

  auto [a_lo, b_lo] = project_beam(cfg.quad_order);
  auto [a_hi, b_hi] = project_beam(2 * cfg.quad_order);

  const Eigen::VectorXd& lambda = ms.eigenvalues();
  double norm_hi = std::sqrt((lambda.array() * a_hi.array().square() + b_hi.array().square()).sum());
  double diff = std::sqrt((lambda.array() * (a_hi - a_lo).array().square() +
                           (b_hi - b_lo).array().square()).sum());
  double discrepancy = norm_hi > 0.0 ? diff / norm_hi : diff;
  if (norm_hi > 0.0 && discrepancy > 1e-6)
    throw std::runtime_error(
        "beam projection did not converge: doubled-order discrepancy " +
        format_double(discrepancy) + " exceeds 1e-6; raise quad_order");

  // How much of the projected pair lives in the mode band the beam's x2
  // oscillation selects.
  double band_lo = beam.k_o / M_PI - 40.0;
  double band_hi = beam.k_o / M_PI + 40.0;
  double in_band = 0.0, total = 0.0;
  for (int j = 0; j < ms.size(); ++j) {
    double part = lambda[j] * a_hi[j] * a_hi[j] + b_hi[j] * b_hi[j];
    total += part;
    if (ms.mode(j).l >= band_lo && ms.mode(j).l <= band_hi) in_band += part;
  }

  ControlProblem problem;
  problem.region = cfg.region;
  problem.horizon = cfg.horizon;
  problem.iterations = cfg.iterations;
  problem.initial = make_state(ms, a_hi, b_hi);
  problem.target = padded_state(ms, cfg.target_a, cfg.target_b);
  problem.solver_tol = cfg.tolerance;
  problem.samples_per_unit = cfg.samples_per_unit;

  ordered_json extra;
  extra["beam"] = beam_to_json(beam);
  extra["projection_discrepancy"] = discrepancy;
  extra["band_l_lo"] = band_lo;
  extra["band_l_hi"] = band_hi;
  extra["band_fraction"] = total > 0.0 ? in_band / total : 0.0;
  return run_control_pipeline(cfg, ms, problem, std::move(extra),
                              {{"initial_position", problem.initial.a}});
}

RunResult run_frequency(const ExperimentConfig& cfg) {
  RunResult res;
  res.dir = cfg.out_dir;
  std::filesystem::create_directories(res.dir);
  write_text_file(res.dir / "config.json", serialize_config(cfg));

  FrequencySuiteParams params;
  params.seed = cfg.seed;
  std::vector<CheckResult> checks = frequency_suite(params);

  // radial profiles of the lowest pure-degree harmonics, both geometries
  std::vector<std::vector<double>> rows;
  const int n_radii = 33;
  for (int half = 0; half <= 1; ++half) {
    double outer = half ? 0.9 : 1.0;
    for (int m = 1; m <= 4; ++m) {
      std::vector<HarmonicTerm> terms{{m, 1.0, {0.0, 0.0}, half == 1}};
      HarmonicSample h =
          half ? HarmonicSample::half_disk(harmonic_value(terms), harmonic_gradient(terms), 0.0,
                                           outer)
               : HarmonicSample::interior(harmonic_value(terms), harmonic_gradient(terms),
                                          {0.0, 0.0}, outer);
      Eigen::VectorXd radii(n_radii);
      for (int i = 0; i < n_radii; ++i)
        radii[i] = outer * (0.1 + 0.8 * static_cast<double>(i) / (n_radii - 1));
      RadialProfile prof = profile(h, radii, params.quad);
      for (int i = 0; i < n_radii; ++i)
        rows.push_back({static_cast<double>(m), static_cast<double>(half), prof.radii[i],
                        prof.h[i], prof.d[i], prof.phi[i]});
    }
  }
  emit_table(res.dir, "profiles", {"degree", "half_disk", "r", "H", "D", "Phi"}, rows,
             cfg.plot_data);

  bool all = true;
  ordered_json report;
  report["schema"] = kFreqSchema;
  report["seed"] = cfg.seed;
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    arr.push_back(check_to_json(c));
  }
  report["all_passed"] = all;
  report["checks"] = arr;
  res.summary_json = dump_json(report);
  write_text_file(res.dir / "checks.json", res.summary_json);
  res.ok = all;
  return res;
}

RunResult run_modes(const ExperimentConfig& cfg) {
  RunResult res;
  res.dir = cfg.out_dir;
  std::filesystem::create_directories(res.dir);
  write_text_file(res.dir / "config.json", serialize_config(cfg));
  ModeSet ms = enumerate_modes(cfg.modes);

  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(ms.size()));
  for (int j = 0; j < ms.size(); ++j) {
    const auto& m = ms.mode(j);
    rows.push_back({static_cast<double>(j), static_cast<double>(m.k), static_cast<double>(m.l),
                    m.lambda});
  }
  emit_table(res.dir, "modes", {"index", "k", "l", "lambda"}, rows, cfg.plot_data);

  ordered_json j;
  j["schema"] = kModesSchema;
  j["count"] = ms.size();
  j["fingerprint"] = ms.fingerprint();
  ordered_json arr = ordered_json::array();
  for (const auto& m : ms.modes()) {
    ordered_json mj;
    mj["k"] = m.k;
    mj["l"] = m.l;
    mj["lambda"] = m.lambda;
    arr.push_back(mj);
  }
  j["modes"] = arr;
  res.summary_json = dump_json(j);
  write_text_file(res.dir / "modes.json", res.summary_json);
  res.ok = true;
  return res;
}

PropertyReport run_property_suites(const ExperimentConfig& cfg) {
  PropertyReport rep;
  Region strip = Region::strip(0.0, 0.2);

  {
    ModeSet ms = enumerate_modes(50);
    rep.checks.push_back(
        check_mass_matrix_oracle(ms, strip, omega_mass_matrix(ms, strip), QuadSpec{}, 1e-10));
    rep.checks.push_back(check_mass_matrix_oracle(ms, Region::full(),
                                                  omega_mass_matrix(ms, Region::full()),
                                                  QuadSpec{}, 1e-10));
  }
  rep.checks.push_back(
      check_free_energy_conservation(enumerate_modes(25), 50, 10.0, cfg.seed, 1e-12));
  rep.checks.push_back(
      check_dissipation_identity(enumerate_modes(100), strip, 4.0, cfg.tolerance, cfg.seed));
  rep.checks.push_back(check_solver_oracle(enumerate_modes(50), strip, 4.0, 1e-10, cfg.seed, 1e-7));
  {
    ModeSet ms = enumerate_modes(25);
    ControlProblem problem;
    problem.region = strip;
    problem.horizon = 4.0;
    problem.iterations = 5;
    problem.initial = zero_state(ms);
    Eigen::VectorXd ta = Eigen::VectorXd::Zero(ms.size()), tb = Eigen::VectorXd::Zero(ms.size());
    ta[0] = 1.0;
    ta[1] = 1.0;
    tb[0] = 1.0;
    problem.target = make_state(ms, ta, tb);
    problem.solver_tol = 1e-9;
    problem.samples_per_unit = 280;
    rep.checks.push_back(check_telescoping(ms, problem, 1e-5));
  }
  {
    FrequencySuiteParams params;
    params.seed = cfg.seed;
    for (auto& c : frequency_suite(params)) rep.checks.push_back(std::move(c));
  }

  rep.all_passed = true;
  ordered_json report;
  report["schema"] = kVerifySchema;
  report["seed"] = cfg.seed;
  report["tolerance"] = cfg.tolerance;
  ordered_json arr = ordered_json::array();
  for (const auto& c : rep.checks) {
    rep.all_passed = rep.all_passed && c.passed;
    arr.push_back(check_to_json(c));
  }
  report["all_passed"] = rep.all_passed;
  report["checks"] = arr;
  rep.json = dump_json(report);
  return rep;
}

}  // namespace waveobs
