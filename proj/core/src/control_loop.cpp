#include "waveobs/control_loop.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "waveobs/ode.hpp"

namespace waveobs {

namespace {

void check_problem(const ModeSet& ms, const ControlProblem& p, const char* where) {
  if (!(p.horizon > 0.0)) throw std::invalid_argument(std::string(where) + ": horizon must be > 0");
  if (p.iterations < 0) throw std::invalid_argument(std::string(where) + ": iterations must be >= 0");
  if (!(p.solver_tol > 0.0)) throw std::invalid_argument(std::string(where) + ": tolerance must be > 0");
  if (p.initial.a.size() != ms.size() || p.initial.b.size() != ms.size() ||
      p.target.a.size() != ms.size() || p.target.b.size() != ms.size())
    throw std::invalid_argument(std::string(where) + ": state sizes do not match mode set");
}

int effective_samples_per_unit(const ModeSet& ms, const ControlProblem& p) {
  if (p.samples_per_unit > 0) return p.samples_per_unit;
  const double per_period = 64.0;
  const double fastest = std::sqrt(ms.max_eigenvalue()) / (2.0 * M_PI);  // cycles per unit time
  return std::max(40, static_cast<int>(std::ceil(per_period * fastest)));
}

double h2_surrogate_squared(const ModeSet& ms, const SpectralState& s) {
  const double v = sobolev_norm(ms, s, NormLevel::H2_H01);
  return v * v;
}

}  // namespace

SpectralState seed_zero(const ModeSet& ms, const ControlProblem& problem) {
  check_problem(ms, problem, "seed_zero");
  const SpectralState u_t = evolve_free(ms, problem.initial, problem.horizon);
  SpectralState seed = zero_state(ms);
  seed.a = problem.target.a - u_t.a;
  seed.b = -problem.target.b + u_t.b;
  return seed;
}

ControlRun iterate(const ModeSet& ms, const ControlProblem& problem) {
  check_problem(ms, problem, "iterate");
  const DampedSystem sys = assemble(ms, problem.region);
  const int n = ms.size();
  const int passes = 2 * problem.iterations + 2;
  const int spu = effective_samples_per_unit(ms, problem);
  const int count = std::max(2, static_cast<int>(std::lround(problem.horizon * spu)) + 1);

  ControlRun run;
  run.region = problem.region;
  run.horizon = problem.horizon;
  run.iterations = problem.iterations;
  run.solver_tol = problem.solver_tol;
  run.samples_per_unit = spu;
  run.modeset_fp = ms.fingerprint();
  run.seeds.reserve(static_cast<size_t>(passes));
  run.terminal.reserve(static_cast<size_t>(passes));
  run.d.reserve(static_cast<size_t>(passes));
  run.pair_cost.reserve(static_cast<size_t>(problem.iterations + 1));

  Eigen::VectorXd grid(count);
  for (int i = 0; i < count; ++i)
    grid[i] = problem.horizon * static_cast<double>(i) / (count - 1);

  // Control trace accumulators: rows index the grid, columns the modes.
  Eigen::MatrixXd sum_b = Eigen::MatrixXd::Zero(count, n);
  Eigen::MatrixXd sum_bdot = Eigen::MatrixXd::Zero(count, n);

  OdeRhs f = [&sys](double, const Eigen::VectorXd& x, Eigen::VectorXd& dxdt) {
    sys.rhs(x, dxdt);
  };

  SpectralState w = seed_zero(ms, problem);
  Eigen::MatrixXd samples;
  Eigen::VectorXd accel(n);
  const double lt = local_solver_tolerance(sys, problem.horizon, problem.solver_tol);
  for (int pass = 0; pass < passes; ++pass) {
    run.seeds.push_back(w);
    run.m_bound = std::max(run.m_bound, h2_surrogate_squared(ms, w));

    Eigen::VectorXd x0(2 * n);
    x0 << w.a, w.b;
    integrate_dopri5(f, std::move(x0), 0.0, problem.horizon, lt, lt,
                     /*keep_dense=*/false, &grid, &samples);

    // Per-pass contribution to the control trace.  Odd passes enter forward;
    // even passes enter time-reversed, which flips the sign of the stored
    // derivative.  The acceleration comes from the system itself, so the
    // derivative rows stay consistent with the samples.
    const bool forward = (pass % 2 == 1);
    for (int i = 0; i < count; ++i) {
      const int src = forward ? i : count - 1 - i;
      const auto a_col = samples.col(src).head(n);
      const auto b_col = samples.col(src).tail(n);
      sys.apply_damping(b_col, accel);
      accel = -sys.lambda.cwiseProduct(a_col) - accel;
      sum_b.row(i) += b_col.transpose();
      if (forward)
        sum_bdot.row(i) += accel.transpose();
      else
        sum_bdot.row(i) -= accel.transpose();
    }

    SpectralState term;
    term.a = samples.col(count - 1).head(n);
    term.b = samples.col(count - 1).tail(n);
    term.modeset_fp = ms.fingerprint();
    run.terminal.push_back(term);
    run.d.push_back(energy(ms, term));

    if (forward) {
      // A pair just completed: record the cost of the control truncated here.
      double c = 0.0;
      for (int i = 0; i < count; ++i)
        c = std::max(c, sys.damping_apply.quadratic(sum_b.row(i).transpose()));
      run.pair_cost.push_back(std::sqrt(c));
    }

    w.a = -term.a;
    w.b = term.b;
    w.modeset_fp = ms.fingerprint();
  }

  const double first = h2_surrogate_squared(ms, run.seeds.front());
  run.m_bound_ratio = first > 0.0
                          ? run.m_bound / first
                          : (run.m_bound > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  run.m_bound_flag = run.m_bound_ratio > 10.0;

  run.control.times = std::move(grid);
  run.control.g = std::move(sum_b);
  run.control.g_dot = std::move(sum_bdot);
  run.control.region = problem.region;
  run.control.modeset_fp = ms.fingerprint();
  run.predicted_error = 2.0 * run.d.back();
  return run;
}

ForcingRecord assemble_control(const ControlRun& run) {
  if (run.control.times.size() == 0 || run.d.empty())
    throw std::invalid_argument("assemble_control: run is incomplete");
  run.control.validate();
  return run.control;
}

ControlVerification verify_controlled(const ModeSet& ms, const ControlProblem& problem,
                                      const ControlRun& run) {
  check_problem(ms, problem, "verify_controlled");
  if (run.modeset_fp != ms.fingerprint())
    throw std::invalid_argument("verify_controlled: run built on a different mode set");
  const ForcingRecord record = assemble_control(run);
  const MassMatrix m = omega_mass_matrix(ms, run.region);

  Eigen::VectorXd t_out(1);
  t_out[0] = run.horizon;
  const SpectralState at_t = evolve_forced(ms, problem.initial, record, m, t_out).back();

  SpectralState diff = zero_state(ms);
  diff.a = at_t.a - problem.target.a;
  diff.b = at_t.b - problem.target.b;
  const double dist = sobolev_norm(ms, diff, NormLevel::H01_L2);

  ControlVerification v;
  v.achieved_error = dist * dist;
  v.predicted_error = run.predicted_error;
  const double denom = std::max(v.achieved_error, v.predicted_error);
  v.mismatch = denom > 0.0 ? std::abs(v.achieved_error - v.predicted_error) / denom : 0.0;
  return v;
}

double control_cost(const ModeSet& ms, const ControlRun& run) {
  if (run.modeset_fp != ms.fingerprint())
    throw std::invalid_argument("control_cost: run built on a different mode set");
  const ForcingRecord record = assemble_control(run);
  const MassApply mass(ms, omega_mass_matrix(ms, run.region));
  double c = 0.0;
  for (Eigen::Index i = 0; i < record.times.size(); ++i)
    c = std::max(c, mass.quadratic(record.g.row(i).transpose()));
  return std::sqrt(c);
}

SuggestedN suggest_n(double epsilon, double m_bound, double beta, double c) {
  if (!(epsilon > 0.0) || !(m_bound > 0.0) || !(c > 0.0))
    throw std::invalid_argument("suggest_n: inputs must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("suggest_n: beta must be in (0,1)");
  const double x = std::pow(std::sqrt(c * m_bound) / epsilon, 1.0 / beta);
  SuggestedN out;
  if (x > 700.0) {  // exp would overflow double
    out.value = std::numeric_limits<std::int64_t>::max();
    out.saturated = true;
    return out;
  }
  const double n = std::ceil((std::exp(x) - 1.0) / 2.0);
  if (n >= 9.0e18) {
    out.value = std::numeric_limits<std::int64_t>::max();
    out.saturated = true;
    return out;
  }
  out.value = static_cast<std::int64_t>(n);
  return out;
}

}  // namespace waveobs
