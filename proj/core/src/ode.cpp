#include "waveobs/ode.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace waveobs {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// fifth-order minus fourth-order weights, for the error estimate
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

void hermite(double t, double tl, double th, const Eigen::VectorXd& xl, const Eigen::VectorXd& xh,
             const Eigen::VectorXd& fl, const Eigen::VectorXd& fh, Eigen::VectorXd& out) {
  const double h = th - tl;
  const double u = (t - tl) / h;
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  const double h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u);
  const double h11 = u * u * (u - 1);
  out = h00 * xl + (h10 * h) * fl + h01 * xh + (h11 * h) * fh;
}

double error_norm(const Eigen::VectorXd& err, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& xnew, double rtol, double atol) {
  const Eigen::Index n = err.size();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale = atol + rtol * std::max(std::abs(x[i]), std::abs(xnew[i]));
    const double q = err[i] / scale;
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace

void OdeDenseOutput::eval(double t, Eigen::VectorXd& out) const {
  const Eigen::Index n = node_times.size();
  if (n == 0) throw std::logic_error("OdeDenseOutput: empty record");
  const double lo = node_times[0], hi = node_times[n - 1];
  const double slack = 1e-12 * (1.0 + std::abs(hi));
  if (t < lo - slack || t > hi + slack)
    throw std::invalid_argument("OdeDenseOutput::eval: time outside record");
  t = std::min(std::max(t, lo), hi);
  if (n == 1) {
    out = node_states.col(0);
    return;
  }
  const double* begin = node_times.data();
  Eigen::Index i = std::upper_bound(begin, begin + n, t) - begin - 1;
  i = std::max<Eigen::Index>(0, std::min(i, n - 2));
  hermite(t, node_times[i], node_times[i + 1], node_states.col(i), node_states.col(i + 1),
          node_derivs.col(i), node_derivs.col(i + 1), out);
}

Eigen::VectorXd OdeDenseOutput::eval(double t) const {
  Eigen::VectorXd out;
  eval(t, out);
  return out;
}

OdeDenseOutput integrate_dopri5(const OdeRhs& f, Eigen::VectorXd x0, double t0, double t1,
                                double rtol, double atol, bool keep_dense,
                                const Eigen::VectorXd* sample_times, Eigen::MatrixXd* samples) {
  if (!(t1 >= t0)) throw std::invalid_argument("integrate_dopri5: t1 must be >= t0");
  if (!(rtol > 0.0) || !(atol > 0.0))
    throw std::invalid_argument("integrate_dopri5: tolerances must be positive");
  const Eigen::Index dim = x0.size();
  if (sample_times != nullptr) {
    if (samples == nullptr)
      throw std::invalid_argument("integrate_dopri5: sample_times given without samples");
    samples->resize(dim, sample_times->size());
  }

  OdeDenseOutput out;
  IntegratorStats& stats = out.stats;

  Eigen::VectorXd x = std::move(x0);
  Eigen::VectorXd k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  Eigen::VectorXd xs(dim), xnew(dim), err(dim), interp(dim);

  double t = t0;
  f(t, x, k1);
  ++stats.rhs_calls;

  std::vector<double> times;
  std::vector<Eigen::VectorXd> states, derivs;
  if (keep_dense) {
    times.push_back(t);
    states.push_back(x);
    derivs.push_back(k1);
  }

  Eigen::Index next_sample = 0;
  auto emit_samples_at_node = [&](double tn) {
    if (sample_times == nullptr) return;
    const double slack = 1e-12 * (1.0 + std::abs(t1));
    while (next_sample < sample_times->size() && (*sample_times)[next_sample] <= tn + slack) {
      samples->col(next_sample) = x;
      ++next_sample;
    }
  };
  emit_samples_at_node(t);

  if (t1 == t0) {
    if (keep_dense) {
      out.node_times.resize(1);
      out.node_times[0] = t0;
      out.node_states = x;
      out.node_derivs = k1;
    }
    return out;
  }

  // Starting step size: compare the scale of x and f, refine with one Euler
  // probe (Hairer, Norsett, Wanner style).
  double h;
  {
    const double sc = atol + rtol * x.cwiseAbs().maxCoeff();
    const double d0 = std::sqrt(x.squaredNorm() / dim) / sc;
    const double d1 = std::sqrt(k1.squaredNorm() / dim) / sc;
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, t1 - t0);
    xs = x + h0 * k1;
    f(t + h0, xs, k2);
    ++stats.rhs_calls;
    const double d2 = std::sqrt((k2 - k1).squaredNorm() / dim) / sc / h0;
    double h1;
    const double dm = std::max(d1, d2);
    if (dm <= 1e-15)
      h1 = std::max(1e-6, h0 * 1e-3);
    else
      h1 = std::pow(0.01 / dm, 0.2);
    h = std::min({100.0 * h0, h1, t1 - t0});
  }

  const double hmin_floor = 16.0 * std::numeric_limits<double>::epsilon();
  for (;;) {
    const double remaining = t1 - t;
    // Stop once the remaining span is at round-off scale; the last accepted
    // state then stands for x(t1).
    if (remaining <= hmin_floor * std::max({std::abs(t), std::abs(t1), 1.0})) break;
    h = std::min(h, remaining);
    const double hmin = hmin_floor * std::max(std::abs(t), 1.0);
    if (h < hmin)
      throw IntegrationError("integrate_dopri5: step size underflow", t, h, stats);

    xs = x + h * (a21 * k1);
    f(t + c2 * h, xs, k2);
    xs = x + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, xs, k3);
    xs = x + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, xs, k4);
    xs = x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, xs, k5);
    xs = x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h, xs, k6);
    xnew = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(t + h, xnew, k7);
    stats.rhs_calls += 6;

    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double en = error_norm(err, x, xnew, rtol, atol);
    if (!std::isfinite(en)) en = std::numeric_limits<double>::infinity();

    if (en <= 1.0) {
      const double t_new = t + h;
      ++stats.accepted;
      stats.min_step = std::min(stats.min_step, h);
      stats.max_step = std::max(stats.max_step, h);

      if (sample_times != nullptr) {
        const double slack = (t_new >= t1) ? 1e-12 * (1.0 + std::abs(t1)) : 0.0;
        while (next_sample < sample_times->size() &&
               (*sample_times)[next_sample] <= t_new + slack) {
          const double ts = std::min((*sample_times)[next_sample], t_new);
          hermite(ts, t, t_new, x, xnew, k1, k7, interp);
          samples->col(next_sample) = interp;
          ++next_sample;
        }
      }

      t = t_new;
      x.swap(xnew);
      k1.swap(k7);  // first-same-as-last
      if (keep_dense) {
        times.push_back(t);
        states.push_back(x);
        derivs.push_back(k1);
      }
      const double fac =
          (en == 0.0) ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(en, -0.2)));
      h *= fac;
    } else {
      ++stats.rejected;
      const double fac = std::isfinite(en) ? std::max(0.1, 0.9 * std::pow(en, -0.2)) : 0.1;
      h *= fac;
    }
  }

  if (sample_times != nullptr) {
    // Flush samples sitting within round-off of t1.
    const double slack = 1e-12 * (1.0 + std::abs(t1));
    while (next_sample < sample_times->size() && (*sample_times)[next_sample] <= t1 + slack) {
      samples->col(next_sample) = x;
      ++next_sample;
    }
    if (next_sample < sample_times->size())
      throw IntegrationError("integrate_dopri5: sample times beyond final time", t, h, stats);
  }

  if (keep_dense) {
    const Eigen::Index n = static_cast<Eigen::Index>(times.size());
    out.node_times.resize(n);
    out.node_states.resize(dim, n);
    out.node_derivs.resize(dim, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      out.node_times[i] = times[static_cast<size_t>(i)];
      out.node_states.col(i) = states[static_cast<size_t>(i)];
      out.node_derivs.col(i) = derivs[static_cast<size_t>(i)];
    }
  }
  return out;
}

}  // namespace waveobs
