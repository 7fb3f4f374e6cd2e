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

#include "gsteer/gaussian.hpp"
#include "gsteer/states.hpp"

using namespace gsteer;

namespace {

// Independent oracle: symplectic eigenvalues as |eigenvalues| of i*Omega*m
// via the complex eigensolver, no square roots involved.
std::vector<double> symplectic_eigenvalues_oracle(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows()) / 2;
  const Eigen::MatrixXcd k =
      std::complex<double>(0, 1) * (symplectic_form(n) * m).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(k);
  std::vector<double> mags(2 * n);
  for (int i = 0; i < 2 * n; ++i) mags[i] = std::abs(es.eigenvalues()(i));
  std::sort(mags.begin(), mags.end());
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = 0.5 * (mags[2 * i] + mags[2 * i + 1]);
  return out;
}

}  // namespace

TEST_CASE("symplectic form") {
  const Eigen::MatrixXd o1 = symplectic_form(1);
  CHECK(o1(0, 1) == 1.0);
  CHECK(o1(1, 0) == -1.0);
  CHECK(o1(0, 0) == 0.0);

  const Eigen::MatrixXd o2 = symplectic_form(2);
  CHECK(o2.block(0, 0, 2, 2) == o1);
  CHECK(o2.block(2, 2, 2, 2) == o1);
  CHECK(o2.block(0, 2, 2, 2).isZero(0));

  for (int n : {1, 2, 3, 5}) {
    const Eigen::MatrixXd o = symplectic_form(n);
    CHECK((o + o.transpose()).isZero(0));
    CHECK((o * o.transpose()).isApprox(Eigen::MatrixXd::Identity(2 * n, 2 * n)));
    CHECK((o * o).isApprox(-Eigen::MatrixXd::Identity(2 * n, 2 * n)));
  }
}

TEST_CASE("covariance matrix construction") {
  CHECK_THROWS_AS(CovarianceMatrix(1, Eigen::MatrixXd::Zero(3, 3)),
                  std::invalid_argument);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 1) = 1e-6;
  CHECK_THROWS_AS(CovarianceMatrix(1, bad), std::invalid_argument);

  Eigen::MatrixXd almost = Eigen::MatrixXd::Identity(2, 2);
  almost(0, 1) = 1e-13;
  const CovarianceMatrix g(1, almost);
  CHECK(g(0, 1) == g(1, 0));  // symmetrized
}

TEST_CASE("physicality of simple matrices") {
  const CovarianceMatrix vac1(1, Eigen::MatrixXd::Identity(2, 2));
  const CovarianceMatrix vac3(3, Eigen::MatrixXd::Identity(6, 6));
  CHECK(is_physical_cm(vac1));
  CHECK(is_physical_cm(vac3));

  const CovarianceMatrix half(1, 0.5 * Eigen::MatrixXd::Identity(2, 2));
  CHECK_FALSE(is_physical_cm(half));

  CHECK(is_physical_cm(squeezed_vacuum_cm(1.0)));
}

TEST_CASE("symplectic eigenvalues") {
  SUBCASE("thermal") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = m(1, 1) = 3.0;
    const auto s = symplectic_eigenvalues(m);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("vacuum") {
    for (int n : {1, 2, 3}) {
      const auto s = symplectic_eigenvalues(Eigen::MatrixXd::Identity(2 * n, 2 * n));
      for (double v : s) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("squeezed vacuum is pure") {
    const auto s = symplectic_eigenvalues(squeezed_vacuum_cm(0.7).entries());
    REQUIRE(s.size() == 2);
    CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s[1] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("matches the complex-eigenvalue oracle on random PSD matrices") {
    Rng rng(7);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + trial % 3;
      Eigen::MatrixXd a(2 * n, 2 * n);
      for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < 2 * n; ++j) a(i, j) = normal(rng);
      const Eigen::MatrixXd m = a * a.transpose();
      const auto got = symplectic_eigenvalues(m);
      const auto want = symplectic_eigenvalues_oracle(m);
      REQUIRE(got.size() == want.size());
      for (size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-8));
      }
    }
  }
  SUBCASE("rejects non-symmetric input") {
    Eigen::MatrixXd m(2, 2);
    m << 1, 0.5, 0, 1;
    CHECK_THROWS(symplectic_eigenvalues(m));
  }
  SUBCASE("rejects indefinite input") {
    Eigen::MatrixXd m = -Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS(symplectic_eigenvalues(m));
  }
}

TEST_CASE("symplectic trace") {
  CHECK(symplectic_trace(Eigen::MatrixXd::Identity(4, 4)) ==
        doctest::Approx(2.0));
  Eigen::VectorXd d(4);
  d << 2, 2, 5, 5;
  CHECK(symplectic_trace(Eigen::MatrixXd(d.asDiagonal())) ==
        doctest::Approx(7.0).epsilon(1e-10));

  // Tr[m] >= 2 str[m] on random PSD matrices
  Rng rng(11);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    Eigen::MatrixXd a(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j) a(i, j) = normal(rng);
    const Eigen::MatrixXd m = a * a.transpose();
    CHECK(m.trace() >= 2.0 * symplectic_trace(m) - 1e-9);
  }
}

TEST_CASE("williamson decomposition") {
  SUBCASE("already in normal form") {
    Eigen::VectorXd d(4);
    d << 1.5, 1.5, 4.0, 4.0;
    const auto wf = williamson(Eigen::MatrixXd(d.asDiagonal()));
    REQUIRE(wf.eigenvalues.size() == 2);
    CHECK(wf.eigenvalues[0] == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(wf.eigenvalues[1] == doctest::Approx(4.0).epsilon(1e-10));
  }
  SUBCASE("construct-then-decompose round trip") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 1 + trial % 3;
      const SymplecticMatrix s0 = random_symplectic(n, 1.0, rng);
      std::uniform_real_distribution<double> uni(1.0, 4.0);
      Eigen::VectorXd d(2 * n);
      std::vector<double> nus(n);
      for (int i = 0; i < n; ++i) {
        nus[i] = uni(rng);
        d(2 * i) = d(2 * i + 1) = nus[i];
      }
      std::sort(nus.begin(), nus.end());
      const Eigen::MatrixXd m =
          s0.entries() * d.asDiagonal() * s0.entries().transpose();
      const auto wf = williamson(0.5 * (m + m.transpose()));

      // S M S^T = diag(e1, e1, ...) with the symplectic eigenvalues
      Eigen::MatrixXd diag =
          wf.s.entries() * m * wf.s.entries().transpose();
      for (int i = 0; i < n; ++i) {
        CHECK(wf.eigenvalues[i] == doctest::Approx(nus[i]).epsilon(1e-8));
        CHECK(diag(2 * i, 2 * i) ==
              doctest::Approx(wf.eigenvalues[i]).epsilon(1e-8));
        CHECK(diag(2 * i + 1, 2 * i + 1) ==
              doctest::Approx(wf.eigenvalues[i]).epsilon(1e-8));
      }
      diag.diagonal().setZero();
      CHECK(diag.cwiseAbs().maxCoeff() < 1e-8);
    }
  }
  SUBCASE("pure squeezed vacuum") {
    const auto wf = williamson(squeezed_vacuum_cm(1.0).entries());
    CHECK(wf.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(wf.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("rejects singular input") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = 1.0;
    CHECK_THROWS(williamson(m));
  }
}

TEST_CASE("schur complement") {
  const Partition part(1, 1);
  SUBCASE("block diagonal passes through") {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
    g(2, 2) = g(3, 3) = 2.5;
    const auto sc = schur_complement(CovarianceMatrix(2, g), part);
    CHECK(sc.isApprox(2.5 * Eigen::MatrixXd::Identity(2, 2)));
  }
  SUBCASE("squeezed vacuum gives I/cosh(2r)") {
    for (double r : {0.3, 0.7, 1.0, 1.5}) {
      const auto sc = schur_complement(squeezed_vacuum_cm(r), part);
      const double want = 1.0 / std::cosh(2 * r);
      CHECK(sc(0, 0) == doctest::Approx(want).epsilon(1e-10));
      CHECK(sc(1, 1) == doctest::Approx(want).epsilon(1e-10));
      CHECK(std::abs(sc(0, 1)) < 1e-12);
    }
  }
  SUBCASE("GHZ Schur complement is PSD and saturates the Loewner supremum") {
    const auto g = ghz_cm(GhzParams::from_a(2.0));
    const Partition p13(1, 2);
    const Eigen::MatrixXd sc = schur_complement(g, p13);
    REQUIRE(sc.rows() == 4);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sc, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);

    // gamma >= 0_A (+) (sc - eps I) holds, gamma >= 0_A (+) (sc + eps I) fails
    auto min_eig_shifted = [&](double eps) {
      Eigen::MatrixXd diff = g.entries();
      diff.bottomRightCorner(4, 4) -=
          sc + eps * Eigen::MatrixXd::Identity(4, 4);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e2(diff,
                                                        Eigen::EigenvaluesOnly);
      return e2.eigenvalues().minCoeff();
    };
    CHECK(min_eig_shifted(-1e-8) >= -1e-12);
    CHECK(min_eig_shifted(1e-6) < 0.0);
  }
  SUBCASE("rejects singular Alice block") {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(4, 4);
    g(0, 0) = 0.0;
    CHECK_THROWS(schur_complement(CovarianceMatrix(2, g), part));
  }
}

TEST_CASE("schur supremum property on random physical CMs") {
  Rng rng(31);
  int done = 0;
  while (done < 100) {
    RandomCmConfig cfg;
    cfg.n_modes = 2;
    cfg.nu_max = 3.0;
    cfg.r_max = 1.5;
    const CovarianceMatrix g = random_cm(cfg, rng);
    const Eigen::MatrixXd sc = schur_complement(g, Partition(1, 1));
    Eigen::MatrixXd lo = g.entries();
    lo.bottomRightCorner(2, 2) -= sc - 1e-8 * Eigen::MatrixXd::Identity(2, 2);
    Eigen::MatrixXd hi = g.entries();
    hi.bottomRightCorner(2, 2) -= sc + 1e-6 * Eigen::MatrixXd::Identity(2, 2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eslo(lo, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eshi(hi, Eigen::EigenvaluesOnly);
    CHECK(eslo.eigenvalues().minCoeff() >= -1e-10);
    CHECK(eshi.eigenvalues().minCoeff() < 0.0);
    ++done;
  }
}

TEST_CASE("congruence invariance of the symplectic spectrum") {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    RandomCmConfig cfg;
    cfg.n_modes = n;
    cfg.nu_max = 4.0;
    cfg.r_max = 1.0;
    const CovarianceMatrix g = random_cm(cfg, rng);
    const SymplecticMatrix s = random_symplectic(n, 1.0, rng);
    const Eigen::MatrixXd conj =
        s.entries() * g.entries() * s.entries().transpose();
    const auto before = symplectic_eigenvalues(g.entries());
    const auto after = symplectic_eigenvalues(0.5 * (conj + conj.transpose()));
    for (size_t i = 0; i < before.size(); ++i) {
      CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("symplectic matrix validation") {
  CHECK_THROWS_AS(SymplecticMatrix(2.0 * Eigen::MatrixXd::Identity(2, 2)),
                  std::invalid_argument);
  CHECK_NOTHROW(SymplecticMatrix(Eigen::MatrixXd::Identity(4, 4)));
}
