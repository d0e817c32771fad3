#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace waveobs {

using OdeRhs = std::function<void(double t, const Eigen::VectorXd& x, Eigen::VectorXd& dxdt)>;

struct IntegratorStats {
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  std::int64_t rhs_calls = 0;
  double min_step = std::numeric_limits<double>::infinity();
  double max_step = 0.0;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t, double h, IntegratorStats stats)
      : std::runtime_error(what), t_fail(t), h_fail(h), stats(stats) {}
  double t_fail;
  double h_fail;
  IntegratorStats stats;
};

// Accepted-step record of an integration, interpolable by cubic Hermite.
// node_states / node_derivs have one column per node (including t0).
struct OdeDenseOutput {
  Eigen::VectorXd node_times;
  Eigen::MatrixXd node_states;
  Eigen::MatrixXd node_derivs;
  IntegratorStats stats;

  void eval(double t, Eigen::VectorXd& out) const;
  Eigen::VectorXd eval(double t) const;
};

// Dormand-Prince 5(4) with step control and the first-same-as-last reuse.
// Integrates x' = f(t, x) from t0 to t1 (t1 > t0).
//
// When sample_times is given (increasing, inside [t0, t1]), the matching
// columns of *samples are filled by within-step interpolation as the
// integration passes them; this avoids retaining every accepted step.
// keep_dense controls whether the full node record is stored.
//
// Throws IntegrationError when the step size underflows while the error
// estimate still exceeds the tolerance, carrying position and statistics.
OdeDenseOutput integrate_dopri5(const OdeRhs& f, Eigen::VectorXd x0, double t0, double t1,
                                double rtol, double atol, bool keep_dense = true,
                                const Eigen::VectorXd* sample_times = nullptr,
                                Eigen::MatrixXd* samples = nullptr);

}  // namespace waveobs
