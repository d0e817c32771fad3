#include "waveobs/frequency_function.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "waveobs/quadrature.hpp"

namespace waveobs {

namespace {

// Five-point Laplacian screen: rejects evaluators whose finite-difference
// Laplacian exceeds round-off-plus-truncation scale at random probes.
void screen_harmonic(const PlanarFn& value, HarmonicSample::Kind kind,
                     const std::array<double, 2>& center, double outer_radius,
                     std::uint64_t seed, double* value_scale_out) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double h = 1e-3 * std::max(1.0, outer_radius);
  double vmax = 0.0;
  for (int p = 0; p < 50; ++p) {
    double x, y;
    for (;;) {
      const double rho = 0.9 * outer_radius * std::sqrt(unif(rng));
      const double range = (kind == HarmonicSample::Kind::HalfDisk) ? M_PI : 2.0 * M_PI;
      const double th = range * unif(rng);
      x = center[0] + rho * std::cos(th);
      y = center[1] + rho * std::sin(th);
      if (kind == HarmonicSample::Kind::InteriorBall) break;
      if (y > 2.0 * h) break;  // keep the stencil inside the half-disk
    }
    const double vc = value(x, y);
    const double ve = value(x + h, y), vw = value(x - h, y);
    const double vn = value(x, y + h), vs = value(x, y - h);
    const double local =
        std::max({std::abs(vc), std::abs(ve), std::abs(vw), std::abs(vn), std::abs(vs)});
    vmax = std::max(vmax, local);
    const double lap = (ve + vw + vn + vs - 4.0 * vc) / (h * h);
    const double threshold = 1e-8 * (1.0 + local) / (h * h);
    if (!std::isfinite(lap) || std::abs(lap) > threshold)
      throw std::invalid_argument("HarmonicSample: function failed the Laplacian screen");
  }
  if (value_scale_out) *value_scale_out = vmax;
}

struct Integrals {
  double h = 0.0;   // |v|^2
  double d = 0.0;   // |grad v|^2 (r^2 - rho^2)
  double k = 0.0;   // |(y - y_o) . grad v|^2
};

// Polar quadrature over the ball of radius r.  The half-disk kind integrates
// the even reflection of the integrand across the diameter over the full
// circle and halves the result; that keeps the angular trapezoid rule
// periodic while computing exactly the half-ball integral.
Integrals ball_integrals(const HarmonicSample& hs, double r, int quad) {
  const QuadratureRule radial = gauss_legendre_on(0.0, r, quad);
  const int n_ang = std::max(64, 4 * quad);
  const double dth = 2.0 * M_PI / n_ang;
  const bool half = hs.kind() == HarmonicSample::Kind::HalfDisk;
  const double cx = hs.center()[0], cy = hs.center()[1];

  Integrals acc;
  for (Eigen::Index i = 0; i < radial.nodes.size(); ++i) {
    const double rho = radial.nodes[i];
    const double wr = radial.weights[i] * rho;  // polar Jacobian
    double sh = 0.0, sd = 0.0, sk = 0.0;
    for (int j = 0; j < n_ang; ++j) {
      const double th = dth * j;
      double dx = rho * std::cos(th);
      double dy = rho * std::sin(th);
      if (half && dy < 0.0) dy = -dy;  // reflected probe
      const double v = hs.value(cx + dx, cy + dy);
      const std::array<double, 2> g = hs.gradient(cx + dx, cy + dy);
      const double g2 = g[0] * g[0] + g[1] * g[1];
      const double radial_g = dx * g[0] + dy * g[1];
      sh += v * v;
      sd += g2;
      sk += radial_g * radial_g;
    }
    acc.h += wr * sh * dth;
    acc.d += wr * sd * dth * (r * r - rho * rho);
    acc.k += wr * sk * dth;
  }
  if (half) {
    acc.h *= 0.5;
    acc.d *= 0.5;
    acc.k *= 0.5;
  }
  return acc;
}

void check_radius(const HarmonicSample& hs, double r, const char* where) {
  if (!(r > 0.0) || !(r < hs.outer_radius()))
    throw std::invalid_argument(std::string(where) + ": radius outside (0, outer_radius)");
}

}  // namespace

HarmonicSample HarmonicSample::interior(PlanarFn value, PlanarGrad gradient,
                                        std::array<double, 2> center, double outer_radius,
                                        std::uint64_t screen_seed) {
  if (!(outer_radius > 0.0))
    throw std::invalid_argument("HarmonicSample: outer radius must be positive");
  if (!value || !gradient) throw std::invalid_argument("HarmonicSample: missing evaluator");
  screen_harmonic(value, Kind::InteriorBall, center, outer_radius, screen_seed, nullptr);
  HarmonicSample h;
  h.kind_ = Kind::InteriorBall;
  h.value_ = std::move(value);
  h.gradient_ = std::move(gradient);
  h.center_ = center;
  h.outer_radius_ = outer_radius;
  return h;
}

HarmonicSample HarmonicSample::half_disk(PlanarFn value, PlanarGrad gradient, double center_x,
                                         double outer_radius, std::uint64_t screen_seed) {
  if (!(outer_radius > 0.0))
    throw std::invalid_argument("HarmonicSample: outer radius must be positive");
  if (!value || !gradient) throw std::invalid_argument("HarmonicSample: missing evaluator");
  if (std::abs(center_x) + outer_radius > 1.0)
    throw std::invalid_argument(
        "HarmonicSample: half-disk requires |center| + outer_radius <= 1");
  const std::array<double, 2> center{center_x, 0.0};
  double scale = 0.0;
  screen_harmonic(value, Kind::HalfDisk, center, outer_radius, screen_seed, &scale);
  // Dirichlet diameter: v must vanish along the segment of Γ the balls touch.
  for (int i = 0; i <= 32; ++i) {
    const double x = center_x + (2.0 * i / 32.0 - 1.0) * 0.99 * outer_radius;
    if (std::abs(value(x, 0.0)) > 1e-12 * (1.0 + scale))
      throw std::invalid_argument("HarmonicSample: function does not vanish on the diameter");
  }
  HarmonicSample h;
  h.kind_ = Kind::HalfDisk;
  h.value_ = std::move(value);
  h.gradient_ = std::move(gradient);
  h.center_ = center;
  h.outer_radius_ = outer_radius;
  return h;
}

RadialProfile profile(const HarmonicSample& h, const Eigen::VectorXd& radii, int quad) {
  if (quad < 8) throw std::invalid_argument("profile: quad must be >= 8");
  if (radii.size() == 0) throw std::invalid_argument("profile: empty radii grid");
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    check_radius(h, radii[i], "profile");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw std::invalid_argument("profile: radii must be strictly increasing");
  }
  RadialProfile p;
  p.radii = radii;
  p.h.resize(radii.size());
  p.d.resize(radii.size());
  p.phi.resize(radii.size());
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    const Integrals in = ball_integrals(h, radii[i], quad);
    if (!std::isfinite(in.h) || !(in.h > 0.0))
      throw std::runtime_error("profile: H must be strictly positive (trivial function?)");
    p.h[i] = in.h;
    p.d[i] = in.d;
    p.phi[i] = in.d / in.h;
  }
  return p;
}

double monotonicity_check(const RadialProfile& p) {
  if (p.radii.size() < 2) throw std::invalid_argument("monotonicity_check: need >= 2 radii");
  double worst = 0.0;
  for (Eigen::Index i = 0; i + 1 < p.phi.size(); ++i)
    worst = std::max(worst, p.phi[i] - p.phi[i + 1]);
  return std::max(worst, 0.0);
}

double log_derivative_check(const HarmonicSample& h, double r, int quad, double dr) {
  if (!(dr > 0.0)) throw std::invalid_argument("log_derivative_check: dr must be positive");
  check_radius(h, r - dr, "log_derivative_check");
  check_radius(h, r + dr, "log_derivative_check");
  const Integrals lo = ball_integrals(h, r - dr, quad);
  const Integrals mid = ball_integrals(h, r, quad);
  const Integrals hi = ball_integrals(h, r + dr, quad);
  if (!(lo.h > 0.0) || !(mid.h > 0.0) || !(hi.h > 0.0))
    throw std::runtime_error("log_derivative_check: H must be positive");
  const double fd = (std::log(hi.h) - std::log(lo.h)) / (2.0 * dr);
  const double expected = (2.0 + mid.d / mid.h) / r;
  return std::abs(fd - expected);
}

ThreeBallResult three_ball_check(const HarmonicSample& h, double r1, double r2, double r3,
                                 int quad, double tol) {
  if (!(0.0 < r1 && r1 < r2 && r2 < r3))
    throw std::invalid_argument("three_ball_check: need 0 < r1 < r2 < r3");
  check_radius(h, r3, "three_ball_check");
  const double h1 = ball_integrals(h, r1, quad).h;
  const double h2 = ball_integrals(h, r2, quad).h;
  const double h3 = ball_integrals(h, r3, quad).h;
  if (!(h1 > 0.0) || !(h2 > 0.0) || !(h3 > 0.0))
    throw std::runtime_error("three_ball_check: H must be positive");
  const double inv12 = 1.0 / std::log(r2 / r1);
  const double inv23 = 1.0 / std::log(r3 / r2);
  ThreeBallResult out;
  out.alpha = inv12 / (inv12 + inv23);
  out.lhs = h2;
  out.rhs = std::pow(h1, out.alpha) * std::pow(h3, 1.0 - out.alpha);
  out.satisfied = out.lhs <= out.rhs * (1.0 + tol);
  return out;
}

CauchySchwarzResult cauchy_schwarz_check(const HarmonicSample& h, double r, int quad,
                                         double tol) {
  check_radius(h, r, "cauchy_schwarz_check");
  const Integrals in = ball_integrals(h, r, quad);
  CauchySchwarzResult out;
  out.lhs = in.d * in.d;
  out.rhs = 4.0 * in.k * in.h;
  out.satisfied = out.lhs <= out.rhs * (1.0 + tol);
  return out;
}

PlanarFn harmonic_value(std::vector<HarmonicTerm> terms) {
  return [terms = std::move(terms)](double x, double y) {
    double acc = 0.0;
    for (const HarmonicTerm& t : terms) {
      const std::complex<double> w(x - t.center[0], y - t.center[1]);
      std::complex<double> p(1.0, 0.0);
      for (int i = 0; i < t.degree; ++i) p *= w;
      acc += t.coeff * (t.imaginary ? p.imag() : p.real());
    }
    return acc;
  };
}

PlanarGrad harmonic_gradient(std::vector<HarmonicTerm> terms) {
  return [terms = std::move(terms)](double x, double y) {
    std::array<double, 2> g{0.0, 0.0};
    for (const HarmonicTerm& t : terms) {
      if (t.degree == 0) continue;
      const std::complex<double> w(x - t.center[0], y - t.center[1]);
      std::complex<double> p(1.0, 0.0);
      for (int i = 0; i < t.degree - 1; ++i) p *= w;
      const std::complex<double> dp = static_cast<double>(t.degree) * p;  // m (z-q)^(m-1)
      if (t.imaginary) {
        g[0] += t.coeff * dp.imag();
        g[1] += t.coeff * dp.real();
      } else {
        g[0] += t.coeff * dp.real();
        g[1] -= t.coeff * dp.imag();
      }
    }
    return g;
  };
}

}  // namespace waveobs
