#pragma once

#include <Eigen/Core>

namespace waveobs {

// Gauss-Legendre rule on the reference interval [-1, 1].
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Nodes and weights for the n-point Gauss-Legendre rule, cached per order.
// Safe to call concurrently.
const QuadratureRule& gauss_legendre(int order);

// Same rule mapped to [a, b].
QuadratureRule gauss_legendre_on(double a, double b, int order);

// Composite rule: [a, b] split into `panels` equal panels, `order` points each.
// Nodes are strictly increasing.
QuadratureRule paneled_gauss_legendre(double a, double b, int panels, int order);

}  // namespace waveobs
