#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "waveobs/control_loop.hpp"
#include "waveobs/damped_dynamics.hpp"
#include "waveobs/frequency_function.hpp"
#include "waveobs/spectral_basis.hpp"
#include "waveobs/wave_dynamics.hpp"

namespace waveobs {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst observed value of the checked quantity
  double threshold = 0.0;  // bound it was compared against
  std::string detail;      // parameters, counts, context
};

// Dense matrix exponential (Pade scaling-and-squaring), used as a reference
// solution x(T) = exp(A T) x(0) for the damped system; entirely independent
// of the Runge-Kutta path.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a);

// Stacked first-order generator [[0, I], [-L, -B]] of a damped system.
Eigen::MatrixXd damped_generator(const DampedSystem& sys);

// Gram matrix by tensor Gauss-Legendre quadrature over the region; reference
// for the closed-form omega_mass_matrix.
MassMatrix quadrature_mass_matrix(const ModeSet& ms, const Region& region,
                                  const QuadSpec& quad = {});

// ---- property checks ----------------------------------------------------
// Each check returns its worst measured value against the threshold it was
// given; randomized checks are deterministic for a fixed seed.

// max entry difference between `candidate` and the quadrature Gram matrix.
CheckResult check_mass_matrix_oracle(const ModeSet& ms, const Region& region,
                                     const MassMatrix& candidate, const QuadSpec& quad,
                                     double threshold);

// max relative energy drift of evolve_free over random states and times in
// [0, horizon].
CheckResult check_free_energy_conservation(const ModeSet& ms, int n_states, double horizon,
                                           std::uint64_t seed, double threshold);

// |E(T) - E(0) + dissipation integral| / E(0) for one random smooth state;
// threshold scales with the solver tolerance.
CheckResult check_dissipation_identity(const ModeSet& ms, const Region& region, double horizon,
                                       double tol, std::uint64_t seed);

// damped solve terminal state against the matrix-exponential reference,
// relative in stacked-state norm.
CheckResult check_solver_oracle(const ModeSet& ms, const Region& region, double horizon,
                                double tol, std::uint64_t seed, double threshold);

// end-to-end control identity: achieved squared terminal error against the
// prediction 2 E(w_last, T); measured is the relative mismatch.
CheckResult check_telescoping(const ModeSet& ms, const ControlProblem& problem,
                              double threshold);

// Frequency-function suite: homogeneous profiles, monotonicity on random
// combinations, the log-derivative identity, three-ball inequalities on both
// geometries, equality for homogeneous cases, the Cauchy-Schwarz step, and
// screen rejection of a non-harmonic function.
struct FrequencySuiteParams {
  std::uint64_t seed = 2026;
  int monotonicity_cases = 50;
  int three_ball_interior_cases = 100;
  int three_ball_half_disk_cases = 50;
  int quad = 64;
  // geometry for the log-derivative identity: large radius keeps the O(dr^2)
  // truncation term of the central difference below the threshold
  double log_derivative_radius = 2.0;
  double log_derivative_outer = 3.0;
  double log_derivative_dr = 1e-3;
  double phi_tol = 1e-8;
  double monotonicity_tol = 1e-8;
  double log_derivative_tol = 1e-6;
  double equality_tol = 1e-8;
  double three_ball_tol = 1e-9;
};
std::vector<CheckResult> frequency_suite(const FrequencySuiteParams& params = {});

}  // namespace waveobs
