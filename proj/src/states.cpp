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

#include "gsteer/states.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace gsteer {

void RandomCmConfig::validate() const {
  if (n_modes < 1) throw std::invalid_argument("RandomCmConfig: n_modes >= 1");
  if (nu_max < 1.0) throw std::invalid_argument("RandomCmConfig: nu_max >= 1");
  if (r_max < 0.0) throw std::invalid_argument("RandomCmConfig: r_max >= 0");
}

GhzParams GhzParams::from_a(double a) {
  if (!(a >= 1.0)) {
    throw std::invalid_argument("GhzParams: a must be >= 1");
  }
  return GhzParams{a};
}

GhzParams GhzParams::from_squeezing(double r_m, double r_p) {
  const double a = std::sqrt(4.0 * std::cosh(2.0 * (r_m + r_p)) + 5.0) / 3.0;
  return from_a(a);
}

double GhzParams::b() const {
  return 0.25 * (5.0 * a - std::sqrt(9.0 * a * a - 8.0));
}

double GhzParams::c() const {
  return 0.25 * (a - std::sqrt(9.0 * a * a - 8.0));
}

CovarianceMatrix squeezed_vacuum_cm(double r) {
  if (!std::isfinite(r)) {
    throw std::invalid_argument("squeezed_vacuum_cm: r must be finite");
  }
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  Eigen::MatrixXd g(4, 4);
  g << ch, 0, sh, 0,
       0, ch, 0, -sh,
       sh, 0, ch, 0,
       0, -sh, 0, ch;
  return CovarianceMatrix(2, g);
}

CovarianceMatrix thermal_cm(const std::vector<double>& nus) {
  if (nus.empty()) throw std::invalid_argument("thermal_cm: need >= 1 mode");
  const int n = static_cast<int>(nus.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    if (!(nus[i] >= 1.0)) {
      throw std::invalid_argument("thermal_cm: every nu must be >= 1, got " +
                                  std::to_string(nus[i]));
    }
    g(2 * i, 2 * i) = nus[i];
    g(2 * i + 1, 2 * i + 1) = nus[i];
  }
  return CovarianceMatrix(n, g);
}

CovarianceMatrix ghz_cm(const GhzParams& params) {
  const double a = params.a;
  const double b = params.b();
  const double c = params.c();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 0; i < 3; ++i) {
    g(2 * i, 2 * i) = a;
    g(2 * i + 1, 2 * i + 1) = b;
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      g(2 * i, 2 * j) = c;
      g(2 * i + 1, 2 * j + 1) = -c;
    }
  }
  return CovarianceMatrix(3, g);
}

namespace {

// Haar unitary by QR of a complex Ginibre matrix with the R-diagonal phase
// convention fixed.
Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      z(i, j) = std::complex<double>(normal(rng), normal(rng));
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0) ? (d / mag) : 1.0;
  }
  return q;
}

// Permutation T with v_block = T * v_interleaved, where the block ordering is
// (x1..xN, p1..pN).
Eigen::MatrixXd block_ordering_permutation(int n) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    t(i, 2 * i) = 1.0;
    t(n + i, 2 * i + 1) = 1.0;
  }
  return t;
}

}  // namespace

SymplecticMatrix random_orthogonal_symplectic(int n_modes, Rng& rng) {
  const Eigen::MatrixXcd u = haar_unitary(n_modes, rng);
  const Eigen::MatrixXd x = u.real();
  const Eigen::MatrixXd y = -u.imag();  // U = X - iY
  Eigen::MatrixXd s_block(2 * n_modes, 2 * n_modes);
  s_block.topLeftCorner(n_modes, n_modes) = x;
  s_block.topRightCorner(n_modes, n_modes) = y;
  s_block.bottomLeftCorner(n_modes, n_modes) = -y;
  s_block.bottomRightCorner(n_modes, n_modes) = x;
  const Eigen::MatrixXd t = block_ordering_permutation(n_modes);
  return SymplecticMatrix(t.transpose() * s_block * t);
}

SymplecticMatrix random_symplectic(int n_modes, double r_max, Rng& rng) {
  if (r_max < 0) throw std::invalid_argument("random_symplectic: r_max >= 0");
  const SymplecticMatrix k = random_orthogonal_symplectic(n_modes, rng);
  const SymplecticMatrix l = random_orthogonal_symplectic(n_modes, rng);
  std::uniform_real_distribution<double> uni(0.0, r_max);
  Eigen::VectorXd d(2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    const double r = (r_max > 0) ? uni(rng) : 0.0;
    d(2 * i) = std::exp(-r);
    d(2 * i + 1) = std::exp(r);
  }
  return SymplecticMatrix(k.entries() * d.asDiagonal() * l.entries());
}

CovarianceMatrix random_cm(const RandomCmConfig& config, Rng& rng) {
  config.validate();
  std::uniform_real_distribution<double> uni(1.0, config.nu_max);
  std::vector<double> nus(config.n_modes);
  for (auto& nu : nus) nu = (config.nu_max > 1.0) ? uni(rng) : 1.0;
  const CovarianceMatrix th = thermal_cm(nus);
  const SymplecticMatrix s = random_symplectic(config.n_modes, config.r_max, rng);
  const Eigen::MatrixXd g = s.entries() * th.entries() * s.entries().transpose();
  return CovarianceMatrix(config.n_modes, 0.5 * (g + g.transpose()));
}

CovarianceMatrix random_nonsteerable_cm(const Partition& part, Rng& rng) {
  const int n = part.modes();
  const int da = 2 * part.n_alice;
  const int d = 2 * n;

  RandomCmConfig bob_cfg;
  bob_cfg.n_modes = part.n_bob;
  bob_cfg.nu_max = 3.0;
  bob_cfg.r_max = 1.0;
  const CovarianceMatrix sigma_b = random_cm(bob_cfg, rng);

  std::normal_distribution<double> normal(0.0, 0.5);
  Eigen::MatrixXd gm(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) gm(i, j) = normal(rng);
  }
  // delta = 1 on the Alice block: |i v_A^T Omega_A v_A| <= |v_A|^2 makes the
  // total matrix a physical CM for any draw.
  const double delta = 1.0;
  Eigen::MatrixXd p = gm * gm.transpose();
  p.topLeftCorner(da, da) += delta * Eigen::MatrixXd::Identity(da, da);

  Eigen::MatrixXd g = p;
  g.bottomRightCorner(d - da, d - da) += sigma_b.entries();
  return CovarianceMatrix(n, 0.5 * (g + g.transpose()));
}

}  // namespace gsteer
