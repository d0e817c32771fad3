#include "waveobs/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace waveobs {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

QuadratureRule build_rule(int order) {
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess, then Newton.
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(order, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(order, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[half - 1] = 0.0;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

QuadratureRule gauss_legendre_on(double a, double b, int order) {
  const QuadratureRule& ref = gauss_legendre(order);
  QuadratureRule out;
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  out.nodes = (ref.nodes.array() * hw + mid).matrix();
  out.weights = ref.weights * hw;
  return out;
}

QuadratureRule paneled_gauss_legendre(double a, double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("paneled_gauss_legendre: panels must be >= 1");
  if (!(b > a)) throw std::invalid_argument("paneled_gauss_legendre: requires b > a");
  QuadratureRule out;
  out.nodes.resize(panels * order);
  out.weights.resize(panels * order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    QuadratureRule local = gauss_legendre_on(a + p * h, a + (p + 1) * h, order);
    out.nodes.segment(p * order, order) = local.nodes;
    out.weights.segment(p * order, order) = local.weights;
  }
  return out;
}

}  // namespace waveobs
