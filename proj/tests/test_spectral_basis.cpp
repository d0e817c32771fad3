#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "waveobs/spectral_basis.hpp"

using namespace waveobs;

TEST_CASE("first mode is (1,1) with lambda = 2 pi^2") {
  ModeSet ms = enumerate_modes(1);
  REQUIRE(ms.size() == 1);
  CHECK(ms.mode(0).k == 1);
  CHECK(ms.mode(0).l == 1);
  CHECK(ms.mode(0).lambda == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-15));
}

TEST_CASE("enumeration matches a brute-force sort") {
  // independent oracle: sort every (k, l) in a box by (k^2+l^2, k, l)
  std::vector<std::tuple<long, int, int>> box;
  for (int k = 1; k <= 60; ++k)
    for (int l = 1; l <= 60; ++l) box.emplace_back(static_cast<long>(k) * k + l * l, k, l);
  std::sort(box.begin(), box.end());

  ModeSet ms = enumerate_modes(200);
  REQUIRE(ms.size() == 200);
  for (int j = 0; j < 200; ++j) {
    auto [s, k, l] = box[static_cast<size_t>(j)];
    CHECK(ms.mode(j).k == k);
    CHECK(ms.mode(j).l == l);
    CHECK(ms.mode(j).lambda == doctest::Approx(M_PI * M_PI * static_cast<double>(s)).epsilon(1e-15));
  }
}

TEST_CASE("prefixes are stable across counts") {
  ModeSet small = enumerate_modes(37);
  ModeSet big = enumerate_modes(400);
  for (int j = 0; j < small.size(); ++j) {
    CHECK(small.mode(j).k == big.mode(j).k);
    CHECK(small.mode(j).l == big.mode(j).l);
  }
  CHECK(small.fingerprint() != big.fingerprint());
  CHECK(small.fingerprint() == enumerate_modes(37).fingerprint());
}

TEST_CASE("mode set constructor validates ordering and duplicates") {
  std::vector<ModeIndex> good{{1, 1, 0.0}, {1, 2, 0.0}, {2, 1, 0.0}};
  ModeSet ms(good);
  CHECK(ms.eigenvalues()[1] == doctest::Approx(5.0 * M_PI * M_PI));

  std::vector<ModeIndex> swapped{{1, 2, 0.0}, {1, 1, 0.0}};
  CHECK_THROWS_AS(ModeSet{swapped}, std::invalid_argument);
  std::vector<ModeIndex> dup{{1, 1, 0.0}, {1, 1, 0.0}};
  CHECK_THROWS_AS(ModeSet{dup}, std::invalid_argument);
  std::vector<ModeIndex> bad_index{{0, 1, 0.0}};
  CHECK_THROWS_AS(ModeSet{bad_index}, std::invalid_argument);
}

TEST_CASE("eval_mode is the product of scaled sines") {
  ModeIndex m{3, 2, 0.0};
  double x1 = 0.3, x2 = 0.7;
  CHECK(eval_mode(m, x1, x2) ==
        doctest::Approx(2.0 * std::sin(3 * M_PI * x1) * std::sin(2 * M_PI * x2)).epsilon(1e-15));
  CHECK(eval_mode(m, 0.0, x2) == doctest::Approx(0.0));
  CHECK(eval_mode(m, x1, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("regions validate their bounds") {
  CHECK_THROWS_AS(Region::strip(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Region::strip(0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Region::strip(0.4, 1.2), std::invalid_argument);
  Region r = Region::strip(0.0, 0.2);
  CHECK(r.contains(0.1, 0.9));
  CHECK(!r.contains(0.3, 0.9));
  CHECK(Region::full().contains(0.99, 0.01));
  CHECK(Region::full() == Region::full());
  CHECK(!(r == Region::full()));
  CHECK(r == Region::strip(0.0, 0.2));
}

TEST_CASE("projection recovers basis coefficients") {
  ModeSet ms = enumerate_modes(12);
  auto f = [](double x1, double x2) {
    return 3.0 * (2.0 * std::sin(M_PI * x1) * std::sin(M_PI * x2)) -
           2.0 * (2.0 * std::sin(2 * M_PI * x1) * std::sin(3 * M_PI * x2));
  };
  Eigen::VectorXd c = project(f, ms);
  for (int j = 0; j < ms.size(); ++j) {
    double expected = 0.0;
    if (ms.mode(j).k == 1 && ms.mode(j).l == 1) expected = 3.0;
    if (ms.mode(j).k == 2 && ms.mode(j).l == 3) expected = -2.0;
    CHECK(c[j] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("projection satisfies the Parseval identity for a smooth function") {
  // f = x1(1-x1) x2(1-x2): |f|^2 integrates to 1/900, and the coefficient
  // tail beyond 200 modes is tiny (1D coefficients decay like k^-3)
  ModeSet ms = enumerate_modes(200);
  Eigen::VectorXd c = project(
      [](double x1, double x2) { return x1 * (1.0 - x1) * x2 * (1.0 - x2); }, ms);
  CHECK(c.squaredNorm() == doctest::Approx(1.0 / 900.0).epsilon(1e-8));
}

TEST_CASE("projection rejects non-finite samples") {
  ModeSet ms = enumerate_modes(3);
  CHECK_THROWS_AS(project([](double, double) { return std::nan(""); }, ms),
                  std::runtime_error);
}

TEST_CASE("full-domain mass matrix is the identity") {
  ModeSet ms = enumerate_modes(30);
  MassMatrix m = omega_mass_matrix(ms, Region::full());
  CHECK((m.entries - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(m.modeset_fp == ms.fingerprint());
}

TEST_CASE("strip mass matrix matches hand-computed sine integrals") {
  ModeSet ms = enumerate_modes(6);  // (1,1) (1,2) (2,1) (2,2) (1,3) (3,1)
  MassMatrix m = omega_mass_matrix(ms, Region::strip(0.0, 0.2));

  // diagonal of a k=1 mode: 2 (0.1 - sin(0.4 pi) / (4 pi))
  CHECK(m.entries(0, 0) == doctest::Approx(0.048634654271868604).epsilon(1e-14));
  // diagonal of a k=2 mode
  CHECK(m.entries(3, 3) == doctest::Approx(0.15322553581056805).epsilon(1e-14));
  // k=1 vs k=2 coupling at equal l: modes (1,1) and (2,1)
  CHECK(m.entries(0, 2) == doctest::Approx(0.086187626272306876).epsilon(1e-13));
  CHECK(m.entries(2, 0) == doctest::Approx(m.entries(0, 2)).epsilon(1e-15));
  // different l never couples
  CHECK(m.entries(0, 1) == 0.0);
  CHECK(m.entries(2, 3) == 0.0);
}

TEST_CASE("narrow strip diagonal value") {
  ModeSet ms = enumerate_modes(1);
  MassMatrix m = omega_mass_matrix(ms, Region::strip(0.0, 0.1));
  CHECK(m.entries(0, 0) == doctest::Approx(0.0064510716211360967).epsilon(1e-14));
}

TEST_CASE("mass apply matches the dense product on every path") {
  ModeSet ms = enumerate_modes(25);
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(25, -1.0, 1.5);

  // identity path
  MassMatrix full = omega_mass_matrix(ms, Region::full());
  MassApply ident(ms, full);
  Eigen::VectorXd out(25);
  ident.apply(x, out);
  CHECK((out - x).norm() <= 1e-15);

  // block path
  MassMatrix strip = omega_mass_matrix(ms, Region::strip(0.1, 0.35));
  MassApply blocks(ms, strip);
  blocks.apply(x, out);
  CHECK((out - strip.entries * x).norm() <= 1e-13 * x.norm());
  CHECK(blocks.quadratic(x) == doctest::Approx(x.dot(strip.entries * x)).epsilon(1e-13));

  // dense fallback: a corrupted matrix must still be applied faithfully
  MassMatrix corrupt = strip;
  corrupt.entries(0, 1) += 0.5;  // couples distinct l, breaking the block law
  MassApply dense(ms, corrupt);
  dense.apply(x, out);
  CHECK((out - corrupt.entries * x).norm() <= 1e-13 * x.norm());
}
