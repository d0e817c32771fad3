#include "waveobs/damped_dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace waveobs {

namespace {

double energy_of(const Eigen::VectorXd& lambda, const Eigen::Ref<const Eigen::VectorXd>& a,
                 const Eigen::Ref<const Eigen::VectorXd>& b) {
  return 0.5 * (lambda.cwiseProduct(a.cwiseAbs2()).sum() + b.squaredNorm());
}

// integral over (t0, t1) of b(t)^T B b(t) dt on the dense output, Gauss rule
// per integrator step so the quadrature is exact on the interpolant
double velocity_mass_integral(const DampedTrajectory& traj, const DampedSystem& sys, double t0,
                              double t1) {
  const QuadratureRule& gl = gauss_legendre(4);
  const Eigen::VectorXd& nt = traj.dense.node_times;
  const int n = sys.size();
  Eigen::VectorXd x(2 * n);
  double acc = 0.0;
  for (Eigen::Index i = 0; i + 1 < nt.size(); ++i) {
    const double lo = std::max(nt[i], t0);
    const double hi = std::min(nt[i + 1], t1);
    if (hi <= lo) continue;
    const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    for (Eigen::Index q = 0; q < gl.nodes.size(); ++q) {
      traj.dense.eval(mid + hw * gl.nodes[q], x);
      acc += hw * gl.weights[q] * sys.damping_apply.quadratic(x.tail(n));
    }
  }
  return acc;
}

}  // namespace

void DampedSystem::rhs(const Eigen::VectorXd& x, Eigen::VectorXd& dxdt) const {
  const int n = size();
  dxdt.resize(2 * n);
  dxdt.head(n) = x.tail(n);
  damping_apply.apply(x.tail(n), dxdt.tail(n));
  dxdt.tail(n) = -lambda.cwiseProduct(x.head(n)) - dxdt.tail(n);
}

DampedSystem assemble(const ModeSet& ms, const Region& region) {
  return assemble_with_matrix(ms, omega_mass_matrix(ms, region));
}

DampedSystem assemble_with_matrix(const ModeSet& ms, MassMatrix damping) {
  if (damping.entries.rows() != ms.size() || damping.entries.cols() != ms.size())
    throw std::invalid_argument("assemble: damping size does not match mode set");
  DampedSystem sys;
  sys.lambda = ms.eigenvalues();
  sys.damping = std::move(damping);
  sys.damping_apply = MassApply(ms, sys.damping);
  sys.modeset_fp = ms.fingerprint();
  return sys;
}

SpectralState DampedTrajectory::state_at(double t) const {
  Eigen::VectorXd x = dense.eval(t);
  const Eigen::Index n = x.size() / 2;
  SpectralState s;
  s.a = x.head(n);
  s.b = x.tail(n);
  s.modeset_fp = modeset_fp;
  return s;
}

double local_solver_tolerance(const DampedSystem& sys, double horizon, double tol) {
  double phase = sys.size() > 0 ? horizon * std::sqrt(sys.lambda.maxCoeff()) : 0.0;
  return std::max(tol / std::max(1.0, phase), 5e-14);
}

DampedTrajectory solve(const DampedSystem& sys, const SpectralState& s0, double horizon,
                       int out_samples, double tol) {
  const int n = sys.size();
  if (s0.a.size() != n || s0.b.size() != n)
    throw std::invalid_argument("solve: state size does not match system");
  if (s0.modeset_fp != 0 && sys.modeset_fp != 0 && s0.modeset_fp != sys.modeset_fp)
    throw std::invalid_argument("solve: state built on a different mode set");
  if (!(horizon > 0.0)) throw std::invalid_argument("solve: horizon must be > 0");
  if (out_samples < 2) throw std::invalid_argument("solve: need at least two output samples");
  if (!(tol > 0.0)) throw std::invalid_argument("solve: tolerance must be > 0");

  Eigen::VectorXd x0(2 * n);
  x0 << s0.a, s0.b;
  OdeRhs f = [&sys](double, const Eigen::VectorXd& x, Eigen::VectorXd& dxdt) {
    sys.rhs(x, dxdt);
  };

  DampedTrajectory traj;
  traj.requested_tol = tol;
  traj.modeset_fp = sys.modeset_fp;
  traj.times.resize(out_samples);
  for (int i = 0; i < out_samples; ++i)
    traj.times[i] = horizon * static_cast<double>(i) / (out_samples - 1);

  Eigen::MatrixXd samples;
  const double lt = local_solver_tolerance(sys, horizon, tol);
  traj.dense = integrate_dopri5(f, std::move(x0), 0.0, horizon, lt, lt, /*keep_dense=*/true,
                                &traj.times, &samples);
  traj.states.reserve(static_cast<size_t>(out_samples));
  for (int i = 0; i < out_samples; ++i) {
    SpectralState s;
    s.a = samples.col(i).head(n);
    s.b = samples.col(i).tail(n);
    s.modeset_fp = sys.modeset_fp;
    traj.states.push_back(std::move(s));
  }
  return traj;
}

double dissipation_residual(const DampedTrajectory& traj, const DampedSystem& sys, double t0,
                            double t1) {
  if (t0 > t1) throw std::invalid_argument("dissipation_residual: t0 must be <= t1");
  const double span = traj.span();
  const double slack = 1e-12 * (1.0 + span);
  if (t0 < -slack || t1 > span + slack)
    throw std::invalid_argument("dissipation_residual: window outside trajectory span");
  if (t0 == t1) return 0.0;
  const int n = sys.size();
  Eigen::VectorXd x = traj.dense.eval(t0);
  const double e0 = energy_of(sys.lambda, x.head(n), x.tail(n));
  traj.dense.eval(t1, x);
  const double e1 = energy_of(sys.lambda, x.head(n), x.tail(n));
  return e1 - e0 + velocity_mass_integral(traj, sys, t0, t1);
}

double higher_energy_at_zero(const DampedSystem& sys, const SpectralState& s0) {
  const int n = sys.size();
  if (s0.a.size() != n || s0.b.size() != n)
    throw std::invalid_argument("higher_energy_at_zero: state size does not match system");
  Eigen::VectorXd accel(n);
  sys.apply_damping(s0.b, accel);
  accel = -sys.lambda.cwiseProduct(s0.a) - accel;
  return 0.5 * (sys.lambda.cwiseProduct(s0.b.cwiseAbs2()).sum() + accel.squaredNorm());
}

DecayFit decay_fit(const ModeSet& ms, const DampedTrajectory& traj, double t_lo, double t_hi) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo))
    throw std::invalid_argument("decay_fit: window must satisfy 0 < t_lo < t_hi");
  if (traj.modeset_fp != 0 && traj.modeset_fp != ms.fingerprint())
    throw std::invalid_argument("decay_fit: trajectory built on a different mode set");
  std::vector<double> lt, le;
  for (Eigen::Index i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < t_lo || t > t_hi) continue;
    const double e = energy(ms, traj.states[static_cast<size_t>(i)]);
    if (!(e > 0.0)) throw std::invalid_argument("decay_fit: nonpositive energy in window");
    lt.push_back(std::log(t));
    le.push_back(std::log(e));
  }
  if (lt.size() < 2) throw std::invalid_argument("decay_fit: fewer than two samples in window");

  const double n = static_cast<double>(lt.size());
  double st = 0, se = 0, stt = 0, ste = 0;
  for (size_t i = 0; i < lt.size(); ++i) {
    st += lt[i];
    se += le[i];
    stt += lt[i] * lt[i];
    ste += lt[i] * le[i];
  }
  const double denom = n * stt - st * st;
  if (denom <= 0.0) throw std::invalid_argument("decay_fit: degenerate window");
  const double slope = (n * ste - st * se) / denom;
  const double intercept = (se - slope * st) / n;

  double rss = 0.0;
  for (size_t i = 0; i < lt.size(); ++i) {
    const double r = le[i] - (intercept + slope * lt[i]);
    rss += r * r;
  }
  DecayFit fit;
  fit.delta_hat = -slope;
  fit.fit_residual = std::sqrt(rss / n);
  fit.points_used = static_cast<int>(lt.size());
  return fit;
}

ObservationWindow observation_window(const ModeSet& ms, const DampedSystem& sys,
                                     const SpectralState& s0, double c, double delta,
                                     double tol) {
  if (!(c > 0.0) || !(delta > 0.0))
    throw std::invalid_argument("observation_window: constants must be positive");
  const double e0 = energy(ms, s0);
  if (!(e0 > 0.0)) throw std::invalid_argument("observation_window: state must be non-zero");
  const double e1 = higher_energy_at_zero(sys, s0);

  ObservationWindow out;
  out.window = c * std::pow(e1 / e0, 1.0 / delta);
  if (!std::isfinite(out.window) || !(out.window > 0.0))
    throw std::runtime_error("observation_window: window is not a positive finite time");
  out.lhs = sobolev_norm(ms, s0, NormLevel::H01_L2);
  out.lhs *= out.lhs;

  const int samples =
      std::min(20001, std::max(33, static_cast<int>(std::ceil(40.0 * out.window)) + 1));
  DampedTrajectory traj = solve(sys, s0, out.window, samples, tol);
  out.observed = velocity_mass_integral(traj, sys, 0.0, out.window);
  return out;
}

}  // namespace waveobs
