#include "waveobs/spectral_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace waveobs {

namespace {

std::uint64_t fnv1a(const std::vector<ModeIndex>& modes) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  };
  for (const ModeIndex& m : modes) {
    mix(static_cast<std::uint64_t>(m.k));
    mix(static_cast<std::uint64_t>(m.l));
  }
  return h;
}

double mode_lambda(int k, int l) {
  return M_PI * M_PI * static_cast<double>(static_cast<long long>(k) * k +
                                           static_cast<long long>(l) * l);
}

// integral over (a,b) of sin(pi k x) sin(pi k' x) dx
double sine_product_integral(int k, int kp, double a, double b) {
  if (k == kp) {
    const double c = 2.0 * M_PI * k;
    return 0.5 * (b - a) - (std::sin(c * b) - std::sin(c * a)) / (2.0 * c);
  }
  const double cm = M_PI * (k - kp);
  const double cp = M_PI * (k + kp);
  return (std::sin(cm * b) - std::sin(cm * a)) / (2.0 * cm) -
         (std::sin(cp * b) - std::sin(cp * a)) / (2.0 * cp);
}

}  // namespace

ModeSet::ModeSet(std::vector<ModeIndex> modes) : modes_(std::move(modes)) {
  lambda_.resize(static_cast<Eigen::Index>(modes_.size()));
  for (size_t j = 0; j < modes_.size(); ++j) {
    ModeIndex& m = modes_[j];
    if (m.k < 1 || m.l < 1) throw std::invalid_argument("ModeSet: wavenumbers must be >= 1");
    m.lambda = mode_lambda(m.k, m.l);
    lambda_[static_cast<Eigen::Index>(j)] = m.lambda;
    if (j > 0) {
      const ModeIndex& p = modes_[j - 1];
      const long long sp = static_cast<long long>(p.k) * p.k + static_cast<long long>(p.l) * p.l;
      const long long sc = static_cast<long long>(m.k) * m.k + static_cast<long long>(m.l) * m.l;
      const bool ordered = sp < sc || (sp == sc && (p.k < m.k || (p.k == m.k && p.l < m.l)));
      if (!ordered) throw std::invalid_argument("ModeSet: modes out of order or duplicated");
    }
  }
  fingerprint_ = fnv1a(modes_);
}

double ModeSet::max_eigenvalue() const {
  if (modes_.empty()) throw std::logic_error("ModeSet: empty");
  return lambda_[lambda_.size() - 1];
}

ModeSet enumerate_modes(int count) {
  if (count < 1) throw std::invalid_argument("enumerate_modes: count must be >= 1");
  // Integer sort key s = k^2 + l^2 keeps the ordering exact; a bounding box of
  // side K suffices once the count-th smallest s in the box is below K^2 + 1,
  // since any mode outside the box has s > K^2.
  int box = static_cast<int>(std::ceil(4.0 * std::sqrt(static_cast<double>(count)))) + 8;
  for (;;) {
    std::vector<ModeIndex> all;
    all.reserve(static_cast<size_t>(box) * box);
    for (int k = 1; k <= box; ++k)
      for (int l = 1; l <= box; ++l) all.push_back({k, l, 0.0});
    std::sort(all.begin(), all.end(), [](const ModeIndex& x, const ModeIndex& y) {
      const long long sx = static_cast<long long>(x.k) * x.k + static_cast<long long>(x.l) * x.l;
      const long long sy = static_cast<long long>(y.k) * y.k + static_cast<long long>(y.l) * y.l;
      if (sx != sy) return sx < sy;
      if (x.k != y.k) return x.k < y.k;
      return x.l < y.l;
    });
    if (all.size() >= static_cast<size_t>(count)) {
      const ModeIndex& last = all[static_cast<size_t>(count) - 1];
      const long long s_last =
          static_cast<long long>(last.k) * last.k + static_cast<long long>(last.l) * last.l;
      if (s_last < static_cast<long long>(box) * box + 1) {
        all.resize(static_cast<size_t>(count));
        return ModeSet(std::move(all));
      }
    }
    box *= 2;
  }
}

double eval_mode(const ModeIndex& m, double x1, double x2) {
  return 2.0 * std::sin(M_PI * m.k * x1) * std::sin(M_PI * m.l * x2);
}

Region Region::full() { return Region{Kind::FullDomain, 0.0, 1.0}; }

Region Region::strip(double x1_lo, double x1_hi) {
  if (!(0.0 <= x1_lo && x1_lo < x1_hi && x1_hi <= 1.0))
    throw std::invalid_argument("Region::strip: need 0 <= lo < hi <= 1");
  return Region{Kind::AxisStrip, x1_lo, x1_hi};
}

bool Region::contains(double x1, double x2) const {
  if (x1 <= 0.0 || x1 >= 1.0 || x2 <= 0.0 || x2 >= 1.0) return false;
  if (kind == Kind::FullDomain) return true;
  return x1 > x1_lo && x1 < x1_hi;
}

bool operator==(const Region& lhs, const Region& rhs) {
  if (lhs.kind != rhs.kind) return false;
  if (lhs.kind == Region::Kind::FullDomain) return true;
  return lhs.x1_lo == rhs.x1_lo && lhs.x1_hi == rhs.x1_hi;
}

Eigen::VectorXd project(const std::function<double(double, double)>& f,
                        const ModeSet& ms, const QuadSpec& quad) {
  if (quad.order < 1 || quad.panels_x < 1 || quad.panels_y < 1)
    throw std::invalid_argument("project: bad quadrature spec");
  const QuadratureRule qx = paneled_gauss_legendre(0.0, 1.0, quad.panels_x, quad.order);
  const QuadratureRule qy = paneled_gauss_legendre(0.0, 1.0, quad.panels_y, quad.order);
  const Eigen::Index nx = qx.nodes.size(), ny = qy.nodes.size();

  Eigen::MatrixXd fw(nx, ny);  // weighted samples w_x w_y f(x, y)
  for (Eigen::Index i = 0; i < nx; ++i)
    for (Eigen::Index j = 0; j < ny; ++j) {
      const double v = f(qx.nodes[i], qy.nodes[j]);
      if (!std::isfinite(v)) throw std::runtime_error("project: non-finite sample");
      fw(i, j) = qx.weights[i] * qy.weights[j] * v;
    }

  // The integrand is separable in the basis direction, so accumulate the sine
  // transforms once per distinct wavenumber instead of once per mode.
  std::map<int, Eigen::Index> kidx, lidx;
  for (const ModeIndex& m : ms.modes()) {
    kidx.emplace(m.k, static_cast<Eigen::Index>(kidx.size()));
    lidx.emplace(m.l, static_cast<Eigen::Index>(lidx.size()));
  }
  Eigen::MatrixXd sx(static_cast<Eigen::Index>(kidx.size()), nx);
  for (const auto& [k, r] : kidx)
    for (Eigen::Index i = 0; i < nx; ++i) sx(r, i) = std::sin(M_PI * k * qx.nodes[i]);
  Eigen::MatrixXd sy(static_cast<Eigen::Index>(lidx.size()), ny);
  for (const auto& [l, r] : lidx)
    for (Eigen::Index j = 0; j < ny; ++j) sy(r, j) = std::sin(M_PI * l * qy.nodes[j]);

  const Eigen::MatrixXd partial = fw * sy.transpose();       // nx x #l
  const Eigen::MatrixXd table = sx * partial;                // #k x #l

  Eigen::VectorXd coeffs(ms.size());
  for (int j = 0; j < ms.size(); ++j) {
    const ModeIndex& m = ms.mode(j);
    coeffs[j] = 2.0 * table(kidx.at(m.k), lidx.at(m.l));
  }
  return coeffs;
}

MassApply::MassApply(const ModeSet& ms, const MassMatrix& m) {
  const int n = ms.size();
  if (m.entries.rows() != n || m.entries.cols() != n)
    throw std::invalid_argument("MassApply: matrix size does not match mode set");
  if (m.modeset_fp != 0 && m.modeset_fp != ms.fingerprint())
    throw std::invalid_argument("MassApply: matrix built on a different mode set");
  if (m.region.kind == Region::Kind::FullDomain &&
      m.entries == Eigen::MatrixXd::Identity(n, n)) {
    path_ = Path::Identity;
    return;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (ms.mode(i).l != ms.mode(j).l && m.entries(i, j) != 0.0) {
        path_ = Path::Dense;
        dense_ = m.entries;
        return;
      }
  path_ = Path::Blocks;
  std::map<int, std::vector<int>> groups;
  for (int j = 0; j < n; ++j) groups[ms.mode(j).l].push_back(j);
  for (auto& [l, idx] : groups) {
    const int bn = static_cast<int>(idx.size());
    Eigen::MatrixXd sub(bn, bn);
    for (int r = 0; r < bn; ++r)
      for (int c = 0; c < bn; ++c) sub(r, c) = m.entries(idx[r], idx[c]);
    blocks_.push_back(std::move(idx));
    block_mats_.push_back(std::move(sub));
  }
}

void MassApply::apply(const Eigen::Ref<const Eigen::VectorXd>& x,
                      Eigen::Ref<Eigen::VectorXd> out) const {
  switch (path_) {
    case Path::Identity:
      out = x;
      return;
    case Path::Dense:
      out.noalias() = dense_ * x;
      return;
    case Path::Blocks: {
      out.setZero();
      for (size_t g = 0; g < blocks_.size(); ++g) {
        const auto& idx = blocks_[g];
        const int bn = static_cast<int>(idx.size());
        Eigen::VectorXd xs(bn);
        for (int r = 0; r < bn; ++r) xs[r] = x[idx[r]];
        Eigen::VectorXd ys = block_mats_[g] * xs;
        for (int r = 0; r < bn; ++r) out[idx[r]] = ys[r];
      }
      return;
    }
  }
}

double MassApply::quadratic(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (path_ == Path::Identity) return x.squaredNorm();
  Eigen::VectorXd y(x.size());
  apply(x, y);
  return x.dot(y);
}

MassMatrix omega_mass_matrix(const ModeSet& ms, const Region& region) {
  const int n = ms.size();
  MassMatrix mm;
  mm.region = region;
  mm.modeset_fp = ms.fingerprint();
  if (region.kind == Region::Kind::FullDomain) {
    mm.entries = Eigen::MatrixXd::Identity(n, n);
    return mm;
  }
  mm.entries.setZero(n, n);
  for (int i = 0; i < n; ++i) {
    const ModeIndex& mi = ms.mode(i);
    for (int j = i; j < n; ++j) {
      const ModeIndex& mj = ms.mode(j);
      if (mi.l != mj.l) continue;
      // 4 * I_x(k_i, k_j) * I_y(l, l) with I_y = 1/2 on (0,1)
      const double v = 2.0 * sine_product_integral(mi.k, mj.k, region.x1_lo, region.x1_hi);
      mm.entries(i, j) = v;
      mm.entries(j, i) = v;
    }
  }
  return mm;
}

}  // namespace waveobs
