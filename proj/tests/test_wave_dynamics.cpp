#include <doctest.h>

#include <cmath>
#include <random>

#include "waveobs/wave_dynamics.hpp"

using namespace waveobs;

namespace {

SpectralState random_state(const ModeSet& ms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd a(ms.size()), b(ms.size());
  for (int j = 0; j < ms.size(); ++j) {
    a[j] = u(rng);
    b[j] = u(rng);
  }
  return make_state(ms, std::move(a), std::move(b));
}

}  // namespace

TEST_CASE("free evolution composes and is reversible") {
  ModeSet ms = enumerate_modes(15);
  SpectralState s = random_state(ms, 11);
  SpectralState two_step = evolve_free(ms, evolve_free(ms, s, 0.7), 1.6);
  SpectralState one_step = evolve_free(ms, s, 2.3);
  CHECK((two_step.a - one_step.a).norm() <= 1e-12 * one_step.a.norm());
  CHECK((two_step.b - one_step.b).norm() <= 1e-12 * one_step.b.norm());

  SpectralState back = evolve_free(ms, one_step, -2.3);
  CHECK((back.a - s.a).norm() <= 1e-12);
  CHECK((back.b - s.b).norm() <= 1e-12);
}

TEST_CASE("single mode returns after one period") {
  ModeSet ms = enumerate_modes(1);
  SpectralState s = make_state(ms, Eigen::VectorXd::Constant(1, 0.8),
                               Eigen::VectorXd::Constant(1, -0.3));
  double period = 2.0 * M_PI / std::sqrt(ms.mode(0).lambda);
  SpectralState after = evolve_free(ms, s, period);
  CHECK(after.a[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(after.b[0] == doctest::Approx(-0.3).epsilon(1e-12));
}

TEST_CASE("energy is conserved along the free group") {
  ModeSet ms = enumerate_modes(40);
  SpectralState s = random_state(ms, 12);
  double e0 = energy(ms, s);
  for (double t : {0.1, 1.0, 3.7, 10.0}) {
    double drift = std::abs(energy(ms, evolve_free(ms, s, t)) - e0) / e0;
    CHECK(drift <= 1e-13);
  }
}

TEST_CASE("the low-frequency pair (e1+e2, e1) has energy (7 pi^2 + 1)/2") {
  ModeSet ms = enumerate_modes(4);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(4), b = Eigen::VectorXd::Zero(4);
  a[0] = 1.0;
  a[1] = 1.0;
  b[0] = 1.0;
  SpectralState s = make_state(ms, a, b);
  CHECK(energy(ms, s) == doctest::Approx(35.0436154038127552).epsilon(1e-15));
}

TEST_CASE("sobolev norms reduce to the right weighted sums") {
  ModeSet ms = enumerate_modes(3);
  double l1 = ms.mode(0).lambda, l2 = ms.mode(1).lambda;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(3), b = Eigen::VectorXd::Zero(3);
  a[0] = 1.0;
  b[1] = 1.0;
  SpectralState s = make_state(ms, a, b);
  CHECK(sobolev_norm(ms, s, NormLevel::L2_Hminus1) ==
        doctest::Approx(std::sqrt(1.0 + 1.0 / l2)).epsilon(1e-15));
  CHECK(sobolev_norm(ms, s, NormLevel::H01_L2) ==
        doctest::Approx(std::sqrt(l1 + 1.0)).epsilon(1e-15));
  CHECK(sobolev_norm(ms, s, NormLevel::H2_H01) ==
        doctest::Approx(std::sqrt(l1 * l1 + l2)).epsilon(1e-15));
}

TEST_CASE("lambda ratio is sqrt(lambda) on pure modes and bounded in general") {
  ModeSet ms = enumerate_modes(20);
  for (int j : {0, 7, 19}) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(20), b = Eigen::VectorXd::Zero(20);
    a[j] = 2.0;
    CHECK(lambda_ratio(ms, make_state(ms, a, b)) ==
          doctest::Approx(std::sqrt(ms.mode(j).lambda)).epsilon(1e-14));
  }
  SpectralState mixed = random_state(ms, 5);
  double ratio = lambda_ratio(ms, mixed);
  CHECK(ratio >= std::sqrt(ms.mode(0).lambda) * (1.0 - 1e-12));
  CHECK(ratio <= std::sqrt(ms.max_eigenvalue()) * (1.0 + 1e-12));
  CHECK_THROWS_AS(lambda_ratio(ms, zero_state(ms)), std::invalid_argument);
}

TEST_CASE("forcing record validation catches malformed grids") {
  ModeSet ms = enumerate_modes(2);
  ForcingRecord r;
  r.region = Region::full();
  r.modeset_fp = ms.fingerprint();
  r.times = Eigen::VectorXd::LinSpaced(5, 0.0, 1.0);
  r.g = Eigen::MatrixXd::Zero(5, 2);
  CHECK_NOTHROW(r.validate());

  ForcingRecord bad = r;
  bad.times[0] = 0.25;  // must start at zero
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = r;
  bad.times[2] = bad.times[1];  // must increase
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = r;
  bad.g.resize(4, 2);  // row mismatch
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = r;
  bad.g_dot = Eigen::MatrixXd::Zero(5, 1);  // derivative shape mismatch
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("record interpolation reproduces a smooth signal") {
  ModeSet ms = enumerate_modes(1);
  const int count = 65;
  ForcingRecord r;
  r.region = Region::full();
  r.modeset_fp = ms.fingerprint();
  r.times = Eigen::VectorXd::LinSpaced(count, 0.0, 1.0);
  r.g.resize(count, 1);
  r.g_dot.resize(count, 1);
  for (int i = 0; i < count; ++i) {
    r.g(i, 0) = std::sin(2.0 * r.times[i]);
    r.g_dot(i, 0) = 2.0 * std::cos(2.0 * r.times[i]);
  }
  r.validate();

  Eigen::VectorXd out(1);
  double worst = 0.0;
  for (double t = 0.003; t < 1.0; t += 0.0137) {
    r.eval(t, out);
    worst = std::max(worst, std::abs(out[0] - std::sin(2.0 * t)));
  }
  CHECK(worst <= 1e-8);  // cubic Hermite on h = 1/64

  // without derivative rows the Lagrange fallback is coarser but still close
  r.g_dot.resize(0, 0);
  worst = 0.0;
  for (double t = 0.003; t < 1.0; t += 0.0137) {
    r.eval(t, out);
    worst = std::max(worst, std::abs(out[0] - std::sin(2.0 * t)));
  }
  CHECK(worst <= 1e-6);
  CHECK_THROWS_AS(r.eval(1.5, out), std::invalid_argument);
}

TEST_CASE("forced evolution with a constant force matches the closed form") {
  ModeSet ms = enumerate_modes(3);
  ForcingRecord r;
  r.region = Region::full();
  r.modeset_fp = ms.fingerprint();
  const int count = 81;
  r.times = Eigen::VectorXd::LinSpaced(count, 0.0, 2.0);
  r.g = Eigen::MatrixXd::Zero(count, 3);
  r.g_dot = Eigen::MatrixXd::Zero(count, 3);
  Eigen::Vector3d force(0.7, -1.2, 0.4);
  for (int i = 0; i < count; ++i) r.g.row(i) = force.transpose();

  SpectralState s0 = make_state(ms, Eigen::Vector3d(1.0, 0.0, -0.5), Eigen::Vector3d(0.0, 2.0, 1.0));
  MassMatrix m = omega_mass_matrix(ms, Region::full());
  Eigen::VectorXd t_out(2);
  t_out << 0.9, 2.0;
  auto states = evolve_forced(ms, s0, r, m, t_out);
  REQUIRE(states.size() == 2);

  //  a'' = -lambda a - c  has the particular solution a* = -c/lambda
  for (size_t idx = 0; idx < 2; ++idx) {
    double t = t_out[static_cast<Eigen::Index>(idx)];
    for (int j = 0; j < 3; ++j) {
      double w = std::sqrt(ms.mode(j).lambda);
      double shift = -force[j] / ms.mode(j).lambda;
      double aj = (s0.a[j] - shift) * std::cos(w * t) + s0.b[j] / w * std::sin(w * t) + shift;
      double bj = -(s0.a[j] - shift) * w * std::sin(w * t) + s0.b[j] * std::cos(w * t);
      CHECK(states[idx].a[j] == doctest::Approx(aj).epsilon(1e-10));
      CHECK(states[idx].b[j] == doctest::Approx(bj).epsilon(1e-10));
    }
  }
}

TEST_CASE("forced evolution rejects mismatched inputs") {
  ModeSet ms = enumerate_modes(2);
  ForcingRecord r;
  r.region = Region::strip(0.0, 0.2);
  r.modeset_fp = ms.fingerprint();
  r.times = Eigen::VectorXd::LinSpaced(3, 0.0, 1.0);
  r.g = Eigen::MatrixXd::Zero(3, 2);
  MassMatrix m = omega_mass_matrix(ms, Region::full());  // wrong region
  SpectralState s0 = zero_state(ms);
  Eigen::VectorXd t_out = Eigen::VectorXd::Constant(1, 0.5);
  CHECK_THROWS_AS(evolve_forced(ms, s0, r, m, t_out), std::invalid_argument);

  MassMatrix good = omega_mass_matrix(ms, r.region);
  Eigen::VectorXd outside = Eigen::VectorXd::Constant(1, 1.5);
  CHECK_THROWS_AS(evolve_forced(ms, s0, r, good, outside), std::invalid_argument);
}

TEST_CASE("observation functional matches the single-mode antiderivative") {
  ModeSet ms = enumerate_modes(1);
  double lambda = ms.mode(0).lambda;
  double w = std::sqrt(lambda);
  double a0 = 0.6, b0 = -1.1, T = 2.5;
  SpectralState s = make_state(ms, Eigen::VectorXd::Constant(1, a0),
                               Eigen::VectorXd::Constant(1, b0));

  // b(t) = b0 cos(wt) - a0 w sin(wt); integrate b^2 in closed form
  auto oracle = [&](double mass) {
    double s2 = std::sin(2.0 * w * T), sT = std::sin(w * T);
    double i_cos2 = T / 2.0 + s2 / (4.0 * w);
    double i_sin2 = T / 2.0 - s2 / (4.0 * w);
    double i_sincos = sT * sT / (2.0 * w);
    return mass * (b0 * b0 * i_cos2 + a0 * a0 * w * w * i_sin2 - 2.0 * a0 * b0 * w * i_sincos);
  };

  MassMatrix full = omega_mass_matrix(ms, Region::full());
  CHECK(observation_functional(ms, s, Region::full(), T, full) ==
        doctest::Approx(oracle(1.0)).epsilon(1e-10));

  MassMatrix strip = omega_mass_matrix(ms, Region::strip(0.0, 0.2));
  CHECK(observation_functional(ms, s, Region::strip(0.0, 0.2), T, strip) ==
        doctest::Approx(oracle(strip.entries(0, 0))).epsilon(1e-10));
}
