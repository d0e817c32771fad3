#pragma once

#include <Eigen/Core>

#include "waveobs/ode.hpp"
#include "waveobs/spectral_basis.hpp"
#include "waveobs/wave_dynamics.hpp"

namespace waveobs {

// Modal damped wave system
//   a' = b,   b' = -L a - B b,
// with L = diag(lambda) and B the region mass matrix acting on the velocity.
// B is symmetric positive semidefinite, so energy can only dissipate.
struct DampedSystem {
  Eigen::VectorXd lambda;
  MassMatrix damping;
  MassApply damping_apply;
  std::uint64_t modeset_fp = 0;

  int size() const { return static_cast<int>(lambda.size()); }
  // out = B v
  void apply_damping(const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
    damping_apply.apply(v, out);
  }
  // dxdt for the stacked vector x = [a; b]
  void rhs(const Eigen::VectorXd& x, Eigen::VectorXd& dxdt) const;
};

DampedSystem assemble(const ModeSet& ms, const Region& region);
// Same system with an explicit damping matrix; lets tests drive the solver
// with B = 0 or corrupted matrices.
DampedSystem assemble_with_matrix(const ModeSet& ms, MassMatrix damping);

struct DampedTrajectory {
  Eigen::VectorXd times;             // uniform grid over [0, T]
  std::vector<SpectralState> states;
  OdeDenseOutput dense;              // accepted integrator steps
  double requested_tol = 0.0;
  std::uint64_t modeset_fp = 0;

  double span() const { return times.size() ? times[times.size() - 1] : 0.0; }
  SpectralState state_at(double t) const;  // dense-output interpolation
};

// Per-step tolerance that makes `tol` a target for the global accuracy over
// the whole span: local error accumulates roughly linearly in the step count,
// which scales with the total phase horizon * sqrt(lambda_max), so the local
// control is tightened by that factor.  Floored near double roundoff.
double local_solver_tolerance(const DampedSystem& sys, double horizon, double tol);

// Integrates the system from s0 over [0, horizon] and samples out_samples
// uniformly spaced states (endpoints included).  `tol` is the global accuracy
// target (see local_solver_tolerance).  Deterministic for fixed inputs.
// Throws IntegrationError on step-size underflow.
DampedTrajectory solve(const DampedSystem& sys, const SpectralState& s0, double horizon,
                       int out_samples, double tol);

// E(t1) - E(t0) + integral over (t0, t1) of b(t)^T B b(t) dt, evaluated on the
// trajectory's dense output.  Exactly zero for the continuous flow; the size
// of the residual measures integration error.
double dissipation_residual(const DampedTrajectory& traj, const DampedSystem& sys, double t0,
                            double t1);

// Energy of the velocity pair (b, b') at t = 0:
//   (1/2) (sum_j lambda_j b_j^2 + |L a + B b|^2),
// the second term being the squared L2 norm of the initial acceleration.
double higher_energy_at_zero(const DampedSystem& sys, const SpectralState& s0);

// Least-squares slope of log E against log t over [t_lo, t_hi], using the
// trajectory's grid states.  delta_hat is the fitted power-law decay rate;
// fit_residual is the root-mean-square misfit in log E, which grows when the
// trace is not a power law.
struct DecayFit {
  double delta_hat = 0.0;
  double fit_residual = 0.0;
  int points_used = 0;
};
DecayFit decay_fit(const ModeSet& ms, const DampedTrajectory& traj, double t_lo, double t_hi);

// Energy-ratio observation window:
//   window = C * (higher_energy_at_zero / energy at 0)^(1/delta).
// Runs the damped system over the window and reports the observed dissipation
// integral next to the squared H01 x L2 norm of s0 being bounded.  The pair
// is diagnostic; no inequality is asserted because the constants are free.
struct ObservationWindow {
  double window = 0.0;
  double observed = 0.0;  // integral over (0, window) of b^T B b
  double lhs = 0.0;       // squared H01 x L2 norm of s0
};
ObservationWindow observation_window(const ModeSet& ms, const DampedSystem& sys,
                                     const SpectralState& s0, double c, double delta,
                                     double tol = 1e-9);

}  // namespace waveobs
