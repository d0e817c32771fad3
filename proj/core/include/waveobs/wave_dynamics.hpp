#pragma once

#include <Eigen/Core>
#include <vector>

#include "waveobs/spectral_basis.hpp"

namespace waveobs {

// Galerkin coordinates of a wave pair (u, du/dt): u = sum_j a_j e_j and
// du/dt = sum_j b_j e_j.
struct SpectralState {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  std::uint64_t modeset_fp = 0;
};

SpectralState zero_state(const ModeSet& ms);
SpectralState make_state(const ModeSet& ms, Eigen::VectorXd a, Eigen::VectorXd b);

// Free wave group over time t, applied exactly per mode:
//   a_j(t) = a_j cos(t sqrt(lambda_j)) + b_j sin(t sqrt(lambda_j)) / sqrt(lambda_j).
// Negative t runs the group backwards.
SpectralState evolve_free(const ModeSet& ms, const SpectralState& s, double t);

// E = (1/2) sum_j (lambda_j a_j^2 + b_j^2), conserved by the free group.
double energy(const ModeSet& ms, const SpectralState& s);

// Norm of the pair at three regularity levels; all reduce to weighted l2 sums.
enum class NormLevel {
  L2_Hminus1,  // sum (a^2 + b^2 / lambda)
  H01_L2,      // sum (lambda a^2 + b^2)
  H2_H01,      // sum (lambda^2 a^2 + lambda b^2)
};
double sobolev_norm(const ModeSet& ms, const SpectralState& s, NormLevel level);

// Ratio of the H2 x H01 norm to the H01 x L2 norm.  For a pure mode this is
// sqrt(lambda_j); in general it lies in [sqrt(lambda_1), sqrt(lambda_G)].
// Throws on the zero state.
double lambda_ratio(const ModeSet& ms, const SpectralState& s);

// Sampled right-hand side g(t) for the modal system a' = b, b' = -L a - M g,
// on a strictly increasing grid spanning [0, T].  Rows index time, columns
// index modes.  When derivative rows are present interpolation is cubic
// Hermite per segment; otherwise four-point Lagrange.
struct ForcingRecord {
  Eigen::VectorXd times;
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_dot;  // same shape as g, or 0 x 0 when absent
  Region region;
  std::uint64_t modeset_fp = 0;

  bool has_derivatives() const { return g_dot.size() > 0; }
  double span() const;
  void validate() const;
  // Fills `out` with g(t); t must lie within [times.front(), times.back()].
  void eval(double t, Eigen::VectorXd& out) const;
};

// Solution of a' = b, b' = -L a - M g(t) from s0, sampled at t_out (increasing,
// within the record's span).  The homogeneous part is the exact free group and
// the Duhamel term is integrated by per-segment Gauss-Legendre against the
// record's interpolant.
std::vector<SpectralState> evolve_forced(const ModeSet& ms, const SpectralState& s0,
                                         const ForcingRecord& record, const MassMatrix& m,
                                         const Eigen::VectorXd& t_out);

// Integral over (0, T) of the region-restricted velocity mass, along the free
// evolution of s0:  integral of b(t)^T M b(t) dt, by composite Gauss-Legendre
// with roughly quad_per_unit nodes per unit time.
double observation_functional(const ModeSet& ms, const SpectralState& s0, const Region& region,
                              double horizon, const MassMatrix& m, int quad_per_unit = 64);

}  // namespace waveobs
