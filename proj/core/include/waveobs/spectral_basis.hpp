#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "waveobs/quadrature.hpp"

namespace waveobs {

// Dirichlet Laplacian eigenbasis on the unit square (0,1)^2:
//   e_{k,l}(x) = 2 sin(pi k x1) sin(pi l x2),  lambda_{k,l} = pi^2 (k^2 + l^2).
// The family is orthonormal in L2((0,1)^2).

struct ModeIndex {
  int k = 1;
  int l = 1;
  double lambda = 0.0;
};

// An ordered, deduplicated list of the lowest `count` modes.  Ordering is by
// eigenvalue, ties broken by (k, l) lexicographically, so prefixes are stable:
// the first G modes of enumerate_modes(G') equal enumerate_modes(G) for G <= G'.
class ModeSet {
 public:
  ModeSet() = default;
  explicit ModeSet(std::vector<ModeIndex> modes);

  int size() const { return static_cast<int>(modes_.size()); }
  const ModeIndex& mode(int j) const { return modes_[static_cast<size_t>(j)]; }
  const std::vector<ModeIndex>& modes() const { return modes_; }
  const Eigen::VectorXd& eigenvalues() const { return lambda_; }
  double max_eigenvalue() const;
  // Stable hash of the (k, l) sequence; states and matrices carry it so that
  // cross-basis mixups fail fast instead of silently computing nonsense.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::vector<ModeIndex> modes_;
  Eigen::VectorXd lambda_;
  std::uint64_t fingerprint_ = 0;
};

ModeSet enumerate_modes(int count);

double eval_mode(const ModeIndex& m, double x1, double x2);

// Subsets of the square that the damping / observation functionals integrate
// over.  Only the full square and vertical strips (x1_lo, x1_hi) x (0,1) are
// supported; strips keep the mass matrix block diagonal in l.
struct Region {
  enum class Kind { FullDomain, AxisStrip };
  Kind kind = Kind::FullDomain;
  double x1_lo = 0.0;
  double x1_hi = 1.0;

  static Region full();
  static Region strip(double x1_lo, double x1_hi);
  bool contains(double x1, double x2) const;
};

bool operator==(const Region& lhs, const Region& rhs);

struct QuadSpec {
  int order = 32;    // Gauss-Legendre points per panel and direction
  int panels_x = 8;  // panels along x1
  int panels_y = 8;  // panels along x2
};

// L2 coefficients <f, e_j> for every mode in ms, by tensor Gauss-Legendre
// quadrature.  Throws if f produces non-finite samples.
Eigen::VectorXd project(const std::function<double(double, double)>& f,
                        const ModeSet& ms, const QuadSpec& quad = {});

// Gram matrix of the basis restricted to a region: entries(i,j) = integral
// over the region of e_i e_j.
struct MassMatrix {
  Eigen::MatrixXd entries;
  Region region;
  std::uint64_t modeset_fp = 0;
};

// Closed-form Gram matrix.  Full domain gives the identity; a strip couples
// only modes with equal l, through one-dimensional sine product integrals.
MassMatrix omega_mass_matrix(const ModeSet& ms, const Region& region);

// Applies a mass matrix, exploiting its structure when intact: identity on
// the full domain, equal-l blocks on a strip, dense product otherwise.  The
// structure is verified at construction, so hand-built matrices that violate
// it are still applied correctly (just slower).
class MassApply {
 public:
  MassApply() = default;
  MassApply(const ModeSet& ms, const MassMatrix& m);

  // out = M x
  void apply(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> out) const;
  // x^T M x
  double quadratic(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  enum class Path { Identity, Blocks, Dense } path_ = Path::Dense;
  Eigen::MatrixXd dense_;
  std::vector<std::vector<int>> blocks_;
  std::vector<Eigen::MatrixXd> block_mats_;
};

}  // namespace waveobs
