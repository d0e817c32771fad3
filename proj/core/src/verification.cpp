#include "waveobs/verification.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace waveobs {

namespace {

SpectralState random_smooth_state(const ModeSet& ms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd a(ms.size()), b(ms.size());
  for (int j = 0; j < ms.size(); ++j) {
    const double lam = ms.eigenvalues()[j];
    a[j] = unif(rng) / lam;              // H2-like decay
    b[j] = unif(rng) / std::sqrt(lam);   // H1-like decay
  }
  return make_state(ms, std::move(a), std::move(b));
}

struct KV {
  const char* key;
  double value;
  template <class T>
  KV(const char* k, T v) : key(k), value(static_cast<double>(v)) {}
};

std::string describe(std::initializer_list<KV> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ", ";
    os << k << "=" << v;
    first = false;
  }
  return os.str();
}

}  // namespace

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exponential: square input only");
  return a.exp();
}

Eigen::MatrixXd damped_generator(const DampedSystem& sys) {
  const int n = sys.size();
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  gen.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  gen.bottomLeftCorner(n, n) = (-sys.lambda).asDiagonal();
  gen.bottomRightCorner(n, n) = -sys.damping.entries;
  return gen;
}

MassMatrix quadrature_mass_matrix(const ModeSet& ms, const Region& region,
                                  const QuadSpec& quad) {
  const double lo = region.kind == Region::Kind::AxisStrip ? region.x1_lo : 0.0;
  const double hi = region.kind == Region::Kind::AxisStrip ? region.x1_hi : 1.0;
  const QuadratureRule qx = paneled_gauss_legendre(lo, hi, quad.panels_x, quad.order);
  const QuadratureRule qy = paneled_gauss_legendre(0.0, 1.0, quad.panels_y, quad.order);
  const Eigen::Index nx = qx.nodes.size(), ny = qy.nodes.size();
  const int n = ms.size();

  // Mode values at every tensor node, weighted once by sqrt of the weight so
  // the Gram matrix is a single product E E^T.
  Eigen::MatrixXd ev(n, nx * ny);
  for (Eigen::Index p = 0; p < nx; ++p)
    for (Eigen::Index q = 0; q < ny; ++q) {
      const double wsq = std::sqrt(qx.weights[p] * qy.weights[q]);
      const Eigen::Index col = p * ny + q;
      for (int j = 0; j < n; ++j)
        ev(j, col) = wsq * eval_mode(ms.mode(j), qx.nodes[p], qy.nodes[q]);
    }
  MassMatrix mm;
  mm.entries.noalias() = ev * ev.transpose();
  mm.region = region;
  mm.modeset_fp = ms.fingerprint();
  return mm;
}

CheckResult check_mass_matrix_oracle(const ModeSet& ms, const Region& region,
                                     const MassMatrix& candidate, const QuadSpec& quad,
                                     double threshold) {
  const MassMatrix oracle = quadrature_mass_matrix(ms, region, quad);
  CheckResult r;
  r.name = "mass_matrix_oracle";
  r.measured = (candidate.entries - oracle.entries).cwiseAbs().maxCoeff();
  r.threshold = threshold;
  r.passed = r.measured <= threshold;
  r.detail = describe({{"modes", ms.size()}, {"order", quad.order}});
  return r;
}

CheckResult check_free_energy_conservation(const ModeSet& ms, int n_states, double horizon,
                                           std::uint64_t seed, double threshold) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_real_distribution<double> tdist(0.0, horizon);
  double worst = 0.0;
  for (int s = 0; s < n_states; ++s) {
    Eigen::VectorXd a(ms.size()), b(ms.size());
    for (int j = 0; j < ms.size(); ++j) {
      a[j] = unif(rng);
      b[j] = unif(rng);
    }
    const SpectralState s0 = make_state(ms, std::move(a), std::move(b));
    const double e0 = energy(ms, s0);
    for (int probe = 0; probe < 4; ++probe) {
      const double t = probe == 3 ? horizon : tdist(rng);
      const double e = energy(ms, evolve_free(ms, s0, t));
      worst = std::max(worst, std::abs(e - e0) / e0);
    }
  }
  CheckResult r;
  r.name = "free_energy_conservation";
  r.measured = worst;
  r.threshold = threshold;
  r.passed = worst <= threshold;
  r.detail = describe({{"states", n_states}, {"horizon", horizon}, {"modes", ms.size()}});
  return r;
}

CheckResult check_dissipation_identity(const ModeSet& ms, const Region& region, double horizon,
                                       double tol, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const SpectralState s0 = random_smooth_state(ms, rng);
  const DampedSystem sys = assemble(ms, region);
  const int samples = std::max(2, static_cast<int>(std::ceil(40.0 * horizon)) + 1);
  const DampedTrajectory traj = solve(sys, s0, horizon, samples, tol);
  const double e0 = energy(ms, s0);
  const double residual = dissipation_residual(traj, sys, 0.0, horizon);

  CheckResult r;
  r.name = "dissipation_identity";
  r.measured = std::abs(residual) / e0;
  r.threshold = 1e3 * tol;  // 1e-6 at the default 1e-9; scales with tol
  r.passed = r.measured <= r.threshold;
  r.detail = describe({{"modes", ms.size()}, {"horizon", horizon}, {"tol", tol}});
  return r;
}

CheckResult check_solver_oracle(const ModeSet& ms, const Region& region, double horizon,
                                double tol, std::uint64_t seed, double threshold) {
  std::mt19937_64 rng(seed);
  const SpectralState s0 = random_smooth_state(ms, rng);
  const DampedSystem sys = assemble(ms, region);
  const DampedTrajectory traj = solve(sys, s0, horizon, 2, tol);

  Eigen::VectorXd x0(2 * ms.size());
  x0 << s0.a, s0.b;
  const Eigen::MatrixXd propagator = matrix_exponential(damped_generator(sys) * horizon);
  const Eigen::VectorXd x_ref = propagator * x0;

  Eigen::VectorXd x_solve(2 * ms.size());
  x_solve << traj.states.back().a, traj.states.back().b;

  CheckResult r;
  r.name = "solver_matrix_exponential_oracle";
  r.measured = (x_solve - x_ref).norm() / x_ref.norm();
  r.threshold = threshold;
  r.passed = r.measured <= threshold;
  r.detail = describe({{"modes", ms.size()}, {"horizon", horizon}, {"tol", tol}});
  return r;
}

CheckResult check_telescoping(const ModeSet& ms, const ControlProblem& problem,
                              double threshold) {
  const ControlRun run = iterate(ms, problem);
  const ControlVerification v = verify_controlled(ms, problem, run);
  CheckResult r;
  r.name = "control_telescoping_identity";
  r.measured = v.mismatch;
  r.threshold = threshold;
  r.passed = v.mismatch <= threshold;
  r.detail = describe({{"modes", ms.size()},
                       {"iterations", problem.iterations},
                       {"achieved", v.achieved_error},
                       {"predicted", v.predicted_error}});
  return r;
}

namespace {

// Random sum of low-degree harmonics with slightly offset centers; scale
// decays with degree so no single term dominates.
std::vector<HarmonicTerm> random_combination(std::mt19937_64& rng, bool half_disk_safe) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> degrees(1, 6);
  std::uniform_int_distribution<int> count(2, 4);
  std::vector<HarmonicTerm> terms;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    HarmonicTerm t;
    t.degree = degrees(rng);
    t.coeff = unif(rng) / std::pow(2.0, t.degree);
    if (half_disk_safe) {
      t.imaginary = true;                    // Im((z-q)^m), q real: zero on the axis
      t.center = {0.2 * unif(rng), 0.0};
    } else {
      t.imaginary = rng() % 2 == 0;
      t.center = {0.2 * unif(rng), 0.2 * unif(rng)};
    }
    terms.push_back(t);
  }
  return terms;
}

Eigen::VectorXd linspace(double lo, double hi, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

std::vector<CheckResult> frequency_suite(const FrequencySuiteParams& params) {
  std::vector<CheckResult> results;
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Homogeneous harmonics: Phi is exactly twice the degree, at every radius.
  {
    double worst = 0.0;
    for (int m = 1; m <= 6; ++m) {
      std::vector<HarmonicTerm> term{{m, 1.0, {0.0, 0.0}, false}};
      const HarmonicSample hs =
          HarmonicSample::interior(harmonic_value(term), harmonic_gradient(term), {0.0, 0.0}, 1.0);
      const RadialProfile p = profile(hs, linspace(0.15, 0.9, 11), params.quad);
      worst = std::max(worst, (p.phi.array() - 2.0 * m).abs().maxCoeff());

      std::vector<HarmonicTerm> imt{{m, 1.0, {0.0, 0.0}, true}};
      const HarmonicSample hh =
          HarmonicSample::half_disk(harmonic_value(imt), harmonic_gradient(imt), 0.0, 1.0);
      const RadialProfile ph = profile(hh, linspace(0.15, 0.9, 11), params.quad);
      worst = std::max(worst, (ph.phi.array() - 2.0 * m).abs().maxCoeff());
    }
    results.push_back({"phi_homogeneous_degree", worst <= params.phi_tol, worst, params.phi_tol,
                       "degrees 1..6, interior and half-disk"});
  }

  // Monotonicity of Phi on random combinations.
  {
    double worst = 0.0;
    for (int c = 0; c < params.monotonicity_cases; ++c) {
      const auto terms = random_combination(rng, false);
      try {
        const HarmonicSample hs = HarmonicSample::interior(
            harmonic_value(terms), harmonic_gradient(terms), {0.0, 0.0}, 1.0);
        const RadialProfile p = profile(hs, linspace(0.1, 0.9, 17), params.quad);
        worst = std::max(worst, monotonicity_check(p));
      } catch (const std::runtime_error&) {
        // a combination can cancel to near zero; skip degenerate draws
      }
    }
    results.push_back({"phi_monotonicity", worst <= params.monotonicity_tol, worst,
                       params.monotonicity_tol,
                       describe({{"cases", params.monotonicity_cases}})});
  }

  // d/dr ln H = (2 + Phi) / r, central difference at one radius.
  {
    double worst = 0.0;
    for (int m = 1; m <= 6; ++m) {
      std::vector<HarmonicTerm> term{{m, 1.0, {0.0, 0.0}, false}};
      const HarmonicSample hs = HarmonicSample::interior(
          harmonic_value(term), harmonic_gradient(term), {0.0, 0.0}, params.log_derivative_outer);
      worst = std::max(worst, log_derivative_check(hs, params.log_derivative_radius, params.quad,
                                                   params.log_derivative_dr));
    }
    results.push_back({"log_derivative_identity", worst <= params.log_derivative_tol, worst,
                       params.log_derivative_tol,
                       describe({{"r", params.log_derivative_radius},
                                 {"dr", params.log_derivative_dr}})});
  }

  // Three-ball inequality, interior geometry.
  {
    double worst = -1.0;
    bool all_ok = true;
    for (int c = 0; c < params.three_ball_interior_cases; ++c) {
      const auto terms = random_combination(rng, false);
      double r1 = 0.15 + 0.2 * unif(rng);
      double r2 = r1 + 0.1 + 0.2 * unif(rng);
      double r3 = r2 + 0.1 + 0.2 * unif(rng);
      try {
        const HarmonicSample hs = HarmonicSample::interior(
            harmonic_value(terms), harmonic_gradient(terms), {0.0, 0.0}, 1.0);
        const ThreeBallResult tb =
            three_ball_check(hs, r1, r2, r3, params.quad, params.three_ball_tol);
        all_ok = all_ok && tb.satisfied;
        worst = std::max(worst, (tb.lhs - tb.rhs) / tb.rhs);
      } catch (const std::runtime_error&) {
      }
    }
    results.push_back({"three_ball_interior", all_ok, worst, params.three_ball_tol,
                       describe({{"cases", params.three_ball_interior_cases}})});
  }

  // Three-ball inequality, half-disk geometry with the Dirichlet diameter.
  {
    double worst = -1.0;
    bool all_ok = true;
    for (int c = 0; c < params.three_ball_half_disk_cases; ++c) {
      const auto terms = random_combination(rng, true);
      const double center = 0.2 * (2.0 * unif(rng) - 1.0);
      const double outer = 0.75;
      double r1 = outer * (0.15 + 0.15 * unif(rng));
      double r2 = r1 + outer * (0.1 + 0.15 * unif(rng));
      double r3 = r2 + outer * (0.1 + 0.15 * unif(rng));
      try {
        const HarmonicSample hs = HarmonicSample::half_disk(
            harmonic_value(terms), harmonic_gradient(terms), center, outer);
        const ThreeBallResult tb =
            three_ball_check(hs, r1, r2, r3, params.quad, params.three_ball_tol);
        all_ok = all_ok && tb.satisfied;
        worst = std::max(worst, (tb.lhs - tb.rhs) / tb.rhs);
      } catch (const std::runtime_error&) {
      }
    }
    results.push_back({"three_ball_half_disk", all_ok, worst, params.three_ball_tol,
                       describe({{"cases", params.three_ball_half_disk_cases}})});
  }

  // Homogeneous harmonics achieve three-ball equality.
  {
    double worst = 0.0;
    for (int m = 1; m <= 6; ++m) {
      std::vector<HarmonicTerm> term{{m, 1.0, {0.0, 0.0}, false}};
      const HarmonicSample hs =
          HarmonicSample::interior(harmonic_value(term), harmonic_gradient(term), {0.0, 0.0}, 1.0);
      const ThreeBallResult tb = three_ball_check(hs, 0.2, 0.45, 0.8, params.quad);
      worst = std::max(worst, std::abs(tb.lhs - tb.rhs) / tb.rhs);

      std::vector<HarmonicTerm> imt{{m, 1.0, {0.0, 0.0}, true}};
      const HarmonicSample hh =
          HarmonicSample::half_disk(harmonic_value(imt), harmonic_gradient(imt), 0.0, 1.0);
      const ThreeBallResult tbh = three_ball_check(hh, 0.2, 0.45, 0.8, params.quad);
      worst = std::max(worst, std::abs(tbh.lhs - tbh.rhs) / tbh.rhs);
    }
    results.push_back({"three_ball_homogeneous_equality", worst <= params.equality_tol, worst,
                       params.equality_tol, "degrees 1..6, both geometries"});
  }

  // Cauchy-Schwarz step: D^2 <= 4 K H.
  {
    double worst = -1.0;
    bool all_ok = true;
    for (int c = 0; c < 25; ++c) {
      const auto terms = random_combination(rng, false);
      try {
        const HarmonicSample hs = HarmonicSample::interior(
            harmonic_value(terms), harmonic_gradient(terms), {0.0, 0.0}, 1.0);
        const CauchySchwarzResult cs =
            cauchy_schwarz_check(hs, 0.3 + 0.6 * unif(rng), params.quad, params.three_ball_tol);
        all_ok = all_ok && cs.satisfied;
        if (cs.rhs > 0.0) worst = std::max(worst, (cs.lhs - cs.rhs) / cs.rhs);
      } catch (const std::runtime_error&) {
      }
    }
    results.push_back({"cauchy_schwarz_step", all_ok, worst, params.three_ball_tol, "25 cases"});
  }

  // The screen must reject a non-harmonic function.
  {
    bool rejected = false;
    try {
      HarmonicSample::interior([](double x, double) { return x * x; },
                               [](double x, double) {
                                 return std::array<double, 2>{2.0 * x, 0.0};
                               },
                               {0.0, 0.0}, 1.0);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    results.push_back({"screen_rejects_nonharmonic", rejected, rejected ? 1.0 : 0.0, 1.0,
                       "v = x^2 must fail construction"});
  }

  return results;
}

}  // namespace waveobs
