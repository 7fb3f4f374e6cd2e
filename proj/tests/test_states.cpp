// Copyright 2026 The gsteer Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gsteer/states.hpp"

using namespace gsteer;

TEST_CASE("squeezed vacuum CM") {
  SUBCASE("r = 0 is the vacuum") {
    CHECK(squeezed_vacuum_cm(0.0).entries().isApprox(
        Eigen::MatrixXd::Identity(4, 4)));
  }
  SUBCASE("r = 1 hyperbolic entries") {
    const auto g = squeezed_vacuum_cm(1.0);
    CHECK(g(0, 0) == doctest::Approx(std::cosh(2.0)).epsilon(1e-15));
    CHECK(g(0, 2) == doctest::Approx(std::sinh(2.0)).epsilon(1e-15));
    CHECK(g(1, 3) == doctest::Approx(-std::sinh(2.0)).epsilon(1e-15));
    CHECK(g(0, 1) == 0.0);
  }
  SUBCASE("physical for a range of r") {
    for (double r : {-2.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0}) {
      CHECK(is_physical_cm(squeezed_vacuum_cm(r)));
    }
  }
  SUBCASE("rejects non-finite r") {
    CHECK_THROWS(squeezed_vacuum_cm(std::nan("")));
  }
}

TEST_CASE("thermal CM") {
  CHECK(thermal_cm({1.0}).entries().isApprox(Eigen::MatrixXd::Identity(2, 2)));
  const auto g = thermal_cm({3.0, 1.5});
  CHECK(g(0, 0) == 3.0);
  CHECK(g(1, 1) == 3.0);
  CHECK(g(2, 2) == 1.5);
  CHECK(g(3, 3) == 1.5);
  CHECK_THROWS(thermal_cm({0.9}));
  // nu = 2n + 1 with n = 0.5 photons
  CHECK(thermal_cm({2.0 * 0.5 + 1.0})(0, 0) == 2.0);
}

TEST_CASE("GHZ CM") {
  SUBCASE("a = 1 is the vacuum") {
    const auto g = ghz_cm(GhzParams::from_a(1.0));
    CHECK(g.entries().isApprox(Eigen::MatrixXd::Identity(6, 6), 1e-14));
  }
  SUBCASE("a = 2 derived entries") {
    const auto p = GhzParams::from_a(2.0);
    CHECK(p.b() == doctest::Approx((10.0 - std::sqrt(28.0)) / 4.0).epsilon(1e-15));
    CHECK(p.c() == doctest::Approx((2.0 - std::sqrt(28.0)) / 4.0).epsilon(1e-15));
    const auto g = ghz_cm(p);
    CHECK(g(0, 0) == 2.0);
    CHECK(g(1, 1) == doctest::Approx(1.17712).epsilon(1e-4));
    CHECK(g(0, 2) == doctest::Approx(-0.82288).epsilon(1e-4));
    CHECK(g(1, 3) == doctest::Approx(0.82288).epsilon(1e-4));
  }
  SUBCASE("pure for the whole a-grid") {
    for (double a : {1.0, 2.0, 5.0, 26.0}) {
      const auto g = ghz_cm(GhzParams::from_a(a));
      CHECK(is_physical_cm(g));
      for (double s : symplectic_eigenvalues(g.entries())) {
        CHECK(s == doctest::Approx(1.0).epsilon(1e-8));
      }
    }
  }
  SUBCASE("squeezing entry point") {
    CHECK(GhzParams::from_squeezing(0.0, 0.0).a == doctest::Approx(1.0));
    const double rm = 0.4, rp = 0.6;
    CHECK(GhzParams::from_squeezing(rm, rp).a ==
          doctest::Approx(std::sqrt(4.0 * std::cosh(2.0) + 5.0) / 3.0));
  }
  SUBCASE("rejects a < 1") {
    CHECK_THROWS(GhzParams::from_a(0.99));
  }
}

TEST_CASE("random orthogonal symplectic") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + trial % 3;
    const SymplecticMatrix s = random_orthogonal_symplectic(n, rng);
    const Eigen::MatrixXd& m = s.entries();
    CHECK((m * m.transpose() - Eigen::MatrixXd::Identity(2 * n, 2 * n))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    const Eigen::MatrixXd omega = symplectic_form(n);
    CHECK((m * omega * m.transpose() - omega).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("one-mode orthogonal symplectic matrices are rotations") {
  // Angle distribution should be uniform; do a coarse Kolmogorov-Smirnov
  // check on 10^4 draws.
  Rng rng(17);
  const int draws = 10000;
  std::vector<double> angles;
  angles.reserve(draws);
  for (int i = 0; i < draws; ++i) {
    const Eigen::MatrixXd s = random_orthogonal_symplectic(1, rng).entries();
    // rotation angle in [0, 2pi)
    double a = std::atan2(s(1, 0), s(0, 0));
    if (a < 0) a += 2 * std::numbers::pi;
    angles.push_back(a / (2 * std::numbers::pi));
    CHECK(std::abs(s(0, 0) - s(1, 1)) < 1e-12);
    CHECK(std::abs(s(0, 1) + s(1, 0)) < 1e-12);
  }
  std::sort(angles.begin(), angles.end());
  double ks = 0.0;
  for (int i = 0; i < draws; ++i) {
    ks = std::max(ks, std::abs(angles[i] - (i + 0.5) / draws));
  }
  // KS critical value at p = 0.01 is 1.63 / sqrt(n)
  CHECK(ks < 1.63 / std::sqrt(static_cast<double>(draws)));
}

TEST_CASE("random symplectic") {
  Rng rng(29);
  SUBCASE("r_max = 0 gives an orthogonal matrix") {
    const Eigen::MatrixXd s = random_symplectic(2, 0.0, rng).entries();
    CHECK((s * s.transpose()).isApprox(Eigen::MatrixXd::Identity(4, 4), 1e-12));
  }
  SUBCASE("squeezing block form") {
    // With K = L = I the mode blocks would be diag(e^-r, e^r); check the
    // singular values instead, which survive the orthogonal factors.
    const double r_max = 1.0;
    const Eigen::MatrixXd s = random_symplectic(1, r_max, rng).entries();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
    const double r = std::log(svd.singularValues()(0));
    CHECK(r >= 0.0);
    CHECK(r <= r_max + 1e-12);
    CHECK(svd.singularValues()(1) == doctest::Approx(std::exp(-r)).epsilon(1e-10));
  }
}

TEST_CASE("random CM") {
  Rng rng(37);
  SUBCASE("trivial config is the vacuum") {
    RandomCmConfig cfg;
    cfg.n_modes = 2;
    cfg.nu_max = 1.0;
    cfg.r_max = 0.0;
    const auto g = random_cm(cfg, rng);
    CHECK(g.entries().isApprox(Eigen::MatrixXd::Identity(4, 4), 1e-12));
  }
  SUBCASE("physical and deterministic under a fixed seed") {
    RandomCmConfig cfg;
    cfg.n_modes = 2;
    cfg.nu_max = 5.0;
    cfg.r_max = 2.0;
    Rng rng1(123), rng2(123);
    const auto g1 = random_cm(cfg, rng1);
    const auto g2 = random_cm(cfg, rng2);
    CHECK(g1.entries() == g2.entries());  // bit identical
    CHECK(is_physical_cm(g1));
  }
  SUBCASE("every draw is physical") {
    RandomCmConfig cfg;
    cfg.n_modes = 3;
    cfg.nu_max = 5.0;
    cfg.r_max = 2.0;
    for (int i = 0; i < 25; ++i) {
      CHECK(is_physical_cm(random_cm(cfg, rng)));
    }
  }
}

TEST_CASE("random nonsteerable CM is physical with invertible Alice block") {
  Rng rng(43);
  for (int i = 0; i < 25; ++i) {
    const Partition part(1, i % 2 + 1);
    const auto g = random_nonsteerable_cm(part, rng);
    CHECK(is_physical_cm(g));
    const int da = 2 * part.n_alice;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        g.entries().topLeftCorner(da, da), Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= 1.0 - 1e-9);
  }
}
