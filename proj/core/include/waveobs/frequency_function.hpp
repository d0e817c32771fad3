#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace waveobs {

using PlanarFn = std::function<double(double, double)>;
using PlanarGrad = std::function<std::array<double, 2>(double, double)>;

// A harmonic function on a planar domain, together with the geometry the
// radial profiles integrate over: balls B(center, r) for r < outer_radius,
// intersected with the upper unit half-disk for the HalfDisk kind.
//
// Construction screens the function: a finite-difference Laplacian probe at
// random interior points rejects non-harmonic input, and the HalfDisk kind
// additionally requires the function to vanish on the diameter (the Dirichlet
// boundary Γ), with the center sitting on Γ and |c| + R_o <= 1 so every ball
// meets the half-disk in exactly a half-ball.
class HarmonicSample {
 public:
  enum class Kind { InteriorBall, HalfDisk };

  static HarmonicSample interior(PlanarFn value, PlanarGrad gradient,
                                 std::array<double, 2> center, double outer_radius,
                                 std::uint64_t screen_seed = 0x5eed);
  static HarmonicSample half_disk(PlanarFn value, PlanarGrad gradient, double center_x,
                                  double outer_radius, std::uint64_t screen_seed = 0x5eed);

  Kind kind() const { return kind_; }
  const std::array<double, 2>& center() const { return center_; }
  double outer_radius() const { return outer_radius_; }
  double value(double x, double y) const { return value_(x, y); }
  std::array<double, 2> gradient(double x, double y) const { return gradient_(x, y); }

 private:
  HarmonicSample() = default;
  Kind kind_ = Kind::InteriorBall;
  PlanarFn value_;
  PlanarGrad gradient_;
  std::array<double, 2> center_{0.0, 0.0};
  double outer_radius_ = 0.0;
};

// H(r) = integral over the ball (or half-ball) of |v|^2,
// D(r) = integral of |grad v|^2 (r^2 - rho^2),  Phi = D / H.
struct RadialProfile {
  Eigen::VectorXd radii;
  Eigen::VectorXd h;
  Eigen::VectorXd d;
  Eigen::VectorXd phi;
};

// Polar quadrature: Gauss-Legendre radially (quad points), uniform trapezoid
// angularly (periodic, so spectrally accurate for smooth integrands).  The
// half-disk case integrates the even reflection across the diameter over the
// full circle and halves it, which keeps the angular rule periodic.  Radii
// must be strictly increasing inside (0, outer_radius).
RadialProfile profile(const HarmonicSample& h, const Eigen::VectorXd& radii, int quad = 64);

// Largest drop between consecutive Phi values: max (phi_i - phi_{i+1})_+.
// Zero (up to quadrature noise) by the monotonicity of the frequency
// function.
double monotonicity_check(const RadialProfile& p);

// Residual of d/dr ln H(r) = (2 + Phi(r)) / r at one radius, with a central
// difference of step dr.  O(dr^2) plus quadrature error.
double log_derivative_check(const HarmonicSample& h, double r, int quad, double dr);

// Log-convexity of H across three radii r1 < r2 < r3:
//   H(r2) <= H(r1)^alpha H(r3)^(1-alpha),
//   alpha = (1/ln(r2/r1)) / (1/ln(r2/r1) + 1/ln(r3/r2)).
// Equality holds exactly for homogeneous harmonics.
struct ThreeBallResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double alpha = 0.0;
  bool satisfied = false;
};
ThreeBallResult three_ball_check(const HarmonicSample& h, double r1, double r2, double r3,
                                 int quad = 64, double tol = 1e-9);

// The Cauchy-Schwarz step behind the monotonicity proof, checked directly:
//   D(r)^2 <= 4 (integral of |(y - y_o) . grad v|^2) H(r).
struct CauchySchwarzResult {
  double lhs = 0.0;  // D^2
  double rhs = 0.0;  // 4 K H
  bool satisfied = false;
};
CauchySchwarzResult cauchy_schwarz_check(const HarmonicSample& h, double r, int quad = 64,
                                         double tol = 1e-9);

// Harmonic polynomial building blocks: coeff * Re or Im of ((x,y) - center)^m
// in complex notation.  Sums of these feed the checks above; terms with the
// imaginary part and a center on the real axis vanish on the axis, which is
// what the half-disk kind needs.
struct HarmonicTerm {
  int degree = 1;
  double coeff = 1.0;
  std::array<double, 2> center{0.0, 0.0};
  bool imaginary = false;
};
PlanarFn harmonic_value(std::vector<HarmonicTerm> terms);
PlanarGrad harmonic_gradient(std::vector<HarmonicTerm> terms);

}  // namespace waveobs
