#pragma once

#include <cstdint>
#include <vector>

#include "waveobs/damped_dynamics.hpp"
#include "waveobs/spectral_basis.hpp"
#include "waveobs/wave_dynamics.hpp"

namespace waveobs {

// Steering problem: drive the free wave from (initial) to (target) at time
// `horizon`, up to a residual that shrinks as `iterations` grows.
struct ControlProblem {
  Region region = Region::strip(0.0, 0.2);
  double horizon = 4.0;
  int iterations = 30;  // N: the forcing sums 2(N+1) passes, solve count 2N+2
  SpectralState initial;
  SpectralState target;
  double solver_tol = 1e-9;
  // Forcing-record samples per unit time; 0 picks a density of 64 points per
  // period of the fastest retained mode, with a floor of 40, so the record's
  // cubic interpolant stays well below the verification tolerances.
  int samples_per_unit = 0;
};

// Everything produced by the iteration.  d has one entry per pass:
// d[i] = E(w_i, horizon) for the i-th damped pass, i = 0 .. 2N+1, which is
// nonincreasing because each pass starts with the previous terminal energy
// and can only dissipate.  predicted_error = 2 d.back() is the squared
// H01 x L2 distance the controlled trajectory will end at.
struct ControlRun {
  Region region;
  double horizon = 0.0;
  int iterations = 0;
  double solver_tol = 0.0;
  int samples_per_unit = 0;  // value actually used
  std::uint64_t modeset_fp = 0;

  std::vector<SpectralState> seeds;     // pass starting states, size 2N+2
  std::vector<SpectralState> terminal;  // pass states at horizon, size 2N+2
  std::vector<double> d;                // terminal energies per pass, size 2N+2
  double m_bound = 0.0;       // sup over passes of sum(lambda^2 a^2 + lambda b^2)
  double m_bound_ratio = 0.0; // m_bound relative to the first seed's value
  bool m_bound_flag = false;  // set when the ratio exceeds 10 (divergence hint)
  std::vector<double> pair_cost;  // cost of the control truncated after pair l
  ForcingRecord control;          // g(t), with derivative rows
  double predicted_error = 0.0;
};

// Starting state of the first pass: target minus the free evolution of the
// initial data at the horizon, with the velocity sign flipped:
//   (target_a - u_a(T), -target_b + u_b(T)).
SpectralState seed_zero(const ModeSet& ms, const ControlProblem& problem);

// Runs the 2N+2 damped passes of the time-reversal recursion
//   next seed = (-a, b) at the horizon of the current pass,
// accumulating the control trace g(t) = sum over pairs of
// [b_odd(t) + b_even(T - t)] on the fly.  Throws on solver failure.
ControlRun iterate(const ModeSet& ms, const ControlProblem& problem);

// The accumulated forcing record of the full control.  The physical force is
// -1_region sum_i g_i(t) e_i; evolve_forced consumes exactly this record.
ForcingRecord assemble_control(const ControlRun& run);

struct ControlVerification {
  double achieved_error = 0.0;   // squared H01 x L2 distance to target at T
  double predicted_error = 0.0;  // 2 E(w_{2N+1}, T) from the run
  double mismatch = 0.0;         // relative gap between the two
};

// Drives the initial state with the assembled control and compares the
// terminal distance to target against the run's prediction.  The two agree
// up to quadrature and solver error; the identity behind the prediction is
// exact for the modal system.
ControlVerification verify_controlled(const ModeSet& ms, const ControlProblem& problem,
                                      const ControlRun& run);

// max over the record grid of sqrt(g^T M g), M the region mass matrix: the
// largest instantaneous L2 norm of the masked force.
double control_cost(const ModeSet& ms, const ControlRun& run);

// Iteration count that the error bound shape C / [ln(1 + 2N)]^(2 beta)
// suggests for a target error epsilon:  ceil((e^x - 1) / 2) with
// x = (sqrt(c m_bound) / epsilon)^(1/beta).  Saturates instead of
// overflowing; the result is a hint, since c is calibrated from runs.
struct SuggestedN {
  std::int64_t value = 0;
  bool saturated = false;
};
SuggestedN suggest_n(double epsilon, double m_bound, double beta, double c);

}  // namespace waveobs
