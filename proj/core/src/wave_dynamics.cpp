#include "waveobs/wave_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace waveobs {

namespace {

void check_state(const ModeSet& ms, const SpectralState& s, const char* where) {
  if (s.a.size() != ms.size() || s.b.size() != ms.size())
    throw std::invalid_argument(std::string(where) + ": state size does not match mode set");
  if (s.modeset_fp != 0 && s.modeset_fp != ms.fingerprint())
    throw std::invalid_argument(std::string(where) + ": state built on a different mode set");
}

}  // namespace

SpectralState zero_state(const ModeSet& ms) {
  SpectralState s;
  s.a = Eigen::VectorXd::Zero(ms.size());
  s.b = Eigen::VectorXd::Zero(ms.size());
  s.modeset_fp = ms.fingerprint();
  return s;
}

SpectralState make_state(const ModeSet& ms, Eigen::VectorXd a, Eigen::VectorXd b) {
  if (a.size() != ms.size() || b.size() != ms.size())
    throw std::invalid_argument("make_state: coefficient size does not match mode set");
  SpectralState s;
  s.a = std::move(a);
  s.b = std::move(b);
  s.modeset_fp = ms.fingerprint();
  return s;
}

SpectralState evolve_free(const ModeSet& ms, const SpectralState& s, double t) {
  check_state(ms, s, "evolve_free");
  SpectralState out = zero_state(ms);
  for (int j = 0; j < ms.size(); ++j) {
    const double w = std::sqrt(ms.eigenvalues()[j]);
    const double c = std::cos(w * t), sn = std::sin(w * t);
    out.a[j] = s.a[j] * c + s.b[j] * sn / w;
    out.b[j] = -s.a[j] * w * sn + s.b[j] * c;
  }
  return out;
}

double energy(const ModeSet& ms, const SpectralState& s) {
  check_state(ms, s, "energy");
  const Eigen::VectorXd& lam = ms.eigenvalues();
  return 0.5 * (lam.cwiseProduct(s.a.cwiseAbs2()).sum() + s.b.squaredNorm());
}

double sobolev_norm(const ModeSet& ms, const SpectralState& s, NormLevel level) {
  check_state(ms, s, "sobolev_norm");
  const Eigen::ArrayXd lam = ms.eigenvalues().array();
  const Eigen::ArrayXd a2 = s.a.array().square();
  const Eigen::ArrayXd b2 = s.b.array().square();
  double sq = 0.0;
  switch (level) {
    case NormLevel::L2_Hminus1:
      sq = (a2 + b2 / lam).sum();
      break;
    case NormLevel::H01_L2:
      sq = (lam * a2 + b2).sum();
      break;
    case NormLevel::H2_H01:
      sq = (lam.square() * a2 + lam * b2).sum();
      break;
  }
  return std::sqrt(sq);
}

double lambda_ratio(const ModeSet& ms, const SpectralState& s) {
  const double lo = sobolev_norm(ms, s, NormLevel::H01_L2);
  if (lo == 0.0) throw std::invalid_argument("lambda_ratio: undefined for the zero state");
  return sobolev_norm(ms, s, NormLevel::H2_H01) / lo;
}

double ForcingRecord::span() const {
  validate();
  return times[times.size() - 1];
}

void ForcingRecord::validate() const {
  if (times.size() < 2) throw std::invalid_argument("ForcingRecord: need at least two samples");
  if (times[0] != 0.0) throw std::invalid_argument("ForcingRecord: grid must start at 0");
  for (Eigen::Index i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("ForcingRecord: grid must be strictly increasing");
  if (g.rows() != times.size())
    throw std::invalid_argument("ForcingRecord: sample rows do not match grid");
  if (g_dot.size() > 0 && (g_dot.rows() != g.rows() || g_dot.cols() != g.cols()))
    throw std::invalid_argument("ForcingRecord: derivative shape does not match samples");
}

namespace {

Eigen::Index segment_of(const Eigen::VectorXd& times, double t) {
  // Largest i with times[i] <= t, clamped so [i, i+1] is a valid segment.
  const double* begin = times.data();
  const double* end = begin + times.size();
  Eigen::Index i = std::upper_bound(begin, end, t) - begin - 1;
  if (i < 0) i = 0;
  if (i > times.size() - 2) i = times.size() - 2;
  return i;
}

}  // namespace

void ForcingRecord::eval(double t, Eigen::VectorXd& out) const {
  const double t0 = times[0], t1 = times[times.size() - 1];
  const double slack = 1e-12 * (1.0 + std::abs(t1));
  if (t < t0 - slack || t > t1 + slack)
    throw std::invalid_argument("ForcingRecord::eval: time outside record span");
  t = std::min(std::max(t, t0), t1);

  if (has_derivatives()) {
    const Eigen::Index i = segment_of(times, t);
    const double h = times[i + 1] - times[i];
    const double u = (t - times[i]) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    out = h00 * g.row(i).transpose() + (h10 * h) * g_dot.row(i).transpose() +
          h01 * g.row(i + 1).transpose() + (h11 * h) * g_dot.row(i + 1).transpose();
    return;
  }

  // Four-point Lagrange on a window around the segment, clamped at the ends.
  const Eigen::Index i = segment_of(times, t);
  Eigen::Index w0 = std::max<Eigen::Index>(0, std::min(i - 1, times.size() - 4));
  out.setZero(g.cols());
  const Eigen::Index count = std::min<Eigen::Index>(4, times.size());
  for (Eigen::Index p = 0; p < count; ++p) {
    double basis = 1.0;
    for (Eigen::Index q = 0; q < count; ++q) {
      if (q == p) continue;
      basis *= (t - times[w0 + q]) / (times[w0 + p] - times[w0 + q]);
    }
    out += basis * g.row(w0 + p).transpose();
  }
}

std::vector<SpectralState> evolve_forced(const ModeSet& ms, const SpectralState& s0,
                                         const ForcingRecord& record, const MassMatrix& m,
                                         const Eigen::VectorXd& t_out) {
  check_state(ms, s0, "evolve_forced");
  record.validate();
  if (record.g.cols() != ms.size())
    throw std::invalid_argument("evolve_forced: record width does not match mode set");
  if (record.modeset_fp != 0 && record.modeset_fp != ms.fingerprint())
    throw std::invalid_argument("evolve_forced: record built on a different mode set");
  if (!(record.region == m.region))
    throw std::invalid_argument("evolve_forced: record and mass matrix regions differ");
  const double span = record.times[record.times.size() - 1];
  for (Eigen::Index i = 0; i < t_out.size(); ++i) {
    if (t_out[i] < 0.0 || t_out[i] > span + 1e-12 * (1.0 + span))
      throw std::invalid_argument("evolve_forced: output time outside record span");
    if (i > 0 && !(t_out[i] > t_out[i - 1]))
      throw std::invalid_argument("evolve_forced: output times must be increasing");
  }

  const MassApply mass(ms, m);
  const int n = ms.size();
  const Eigen::VectorXd w = ms.eigenvalues().cwiseSqrt();
  const QuadratureRule& gl = gauss_legendre(8);

  Eigen::VectorXd a = s0.a, b = s0.b;
  Eigen::VectorXd gval(n), r(n), anew(n), bnew(n);
  double t_cur = 0.0;
  std::vector<SpectralState> out;
  out.reserve(static_cast<size_t>(t_out.size()));

  for (Eigen::Index oi = 0; oi < t_out.size(); ++oi) {
    const double t_next = std::min(t_out[oi], span);
    if (t_next > t_cur) {
      const double dt = t_next - t_cur;
      for (int j = 0; j < n; ++j) {
        const double c = std::cos(w[j] * dt), sn = std::sin(w[j] * dt);
        anew[j] = a[j] * c + b[j] * sn / w[j];
        bnew[j] = -a[j] * w[j] * sn + b[j] * c;
      }
      a.swap(anew);
      b.swap(bnew);

      // Duhamel increment: integrate the kernel against the record's
      // interpolant, panel by panel, with panels aligned to the record grid so
      // Gauss-Legendre sees a single cubic per panel.
      Eigen::Index seg = segment_of(record.times, t_cur);
      while (record.times[seg + 1] <= t_cur + 1e-300 && seg < record.times.size() - 2) ++seg;
      double lo = t_cur;
      while (lo < t_next) {
        const double hi = std::min(record.times[seg + 1], t_next);
        if (hi > lo) {
          const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
          for (Eigen::Index q = 0; q < gl.nodes.size(); ++q) {
            const double s = mid + hw * gl.nodes[q];
            const double wq = hw * gl.weights[q];
            record.eval(s, gval);
            mass.apply(gval, r);
            for (int j = 0; j < n; ++j) {
              const double ph = w[j] * (t_next - s);
              const double rj = -r[j];
              a[j] += wq * std::sin(ph) / w[j] * rj;
              b[j] += wq * std::cos(ph) * rj;
            }
          }
        }
        lo = hi;
        if (seg < record.times.size() - 2) ++seg;
        else break;
      }
      t_cur = t_next;
    }
    SpectralState s = make_state(ms, a, b);
    out.push_back(std::move(s));
  }
  return out;
}

double observation_functional(const ModeSet& ms, const SpectralState& s0, const Region& region,
                              double horizon, const MassMatrix& m, int quad_per_unit) {
  check_state(ms, s0, "observation_functional");
  if (!(horizon > 0.0)) throw std::invalid_argument("observation_functional: horizon must be > 0");
  if (quad_per_unit < 1) throw std::invalid_argument("observation_functional: bad quadrature");
  if (!(region == m.region))
    throw std::invalid_argument("observation_functional: region and mass matrix differ");
  const MassApply mass(ms, m);
  const int order = 16;
  const int panels = std::max(1, static_cast<int>(std::ceil(quad_per_unit * horizon / order)));
  const QuadratureRule rule = paneled_gauss_legendre(0.0, horizon, panels, order);
  const Eigen::VectorXd w = ms.eigenvalues().cwiseSqrt();
  Eigen::VectorXd bt(ms.size());
  double acc = 0.0;
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    for (int j = 0; j < ms.size(); ++j)
      bt[j] = -s0.a[j] * w[j] * std::sin(w[j] * t) + s0.b[j] * std::cos(w[j] * t);
    acc += rule.weights[q] * mass.quadratic(bt);
  }
  return acc;
}

}  // namespace waveobs
