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

#include "gsteer/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gsteer {

CovarianceMatrix::CovarianceMatrix(int dim_modes, const Eigen::MatrixXd& entries,
                                   double symmetry_tol)
    : modes_(dim_modes) {
  if (dim_modes < 1) {
    throw std::invalid_argument("CovarianceMatrix: mode count must be >= 1");
  }
  const int d = 2 * dim_modes;
  if (entries.rows() != d || entries.cols() != d) {
    throw std::invalid_argument(
        "CovarianceMatrix: expected " + std::to_string(d) + "x" +
        std::to_string(d) + " entries, got " + std::to_string(entries.rows()) +
        "x" + std::to_string(entries.cols()));
  }
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > symmetry_tol * scale) {
    throw std::invalid_argument("CovarianceMatrix: entries not symmetric (max |A - A^T| = " +
                                std::to_string(asym) + ")");
  }
  entries_ = 0.5 * (entries + entries.transpose());
}

Partition::Partition(int na, int nb) : n_alice(na), n_bob(nb) {
  if (na < 1 || nb < 1) {
    throw std::invalid_argument("Partition: both sides need at least one mode");
  }
}

void Partition::check_against(const CovarianceMatrix& gamma) const {
  if (modes() != gamma.modes()) {
    throw std::invalid_argument("Partition: " + std::to_string(modes()) +
                                " modes does not match CM with " +
                                std::to_string(gamma.modes()) + " modes");
  }
}

SymplecticMatrix::SymplecticMatrix(const Eigen::MatrixXd& entries,
                                   double residual_tol)
    : entries_(entries) {
  if (entries.rows() != entries.cols() || entries.rows() % 2 != 0 ||
      entries.rows() == 0) {
    throw std::invalid_argument("SymplecticMatrix: need even square dimension");
  }
  const Eigen::MatrixXd omega = symplectic_form(modes());
  const double resid =
      (entries_ * omega * entries_.transpose() - omega).cwiseAbs().maxCoeff();
  if (resid > residual_tol) {
    throw std::invalid_argument(
        "SymplecticMatrix: S*Omega*S^T residual too large (" +
        std::to_string(resid) + ")");
  }
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  if (n_modes < 1) {
    throw std::invalid_argument("symplectic_form: n_modes must be >= 1");
  }
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    omega(2 * i, 2 * i + 1) = 1.0;
    omega(2 * i + 1, 2 * i) = -1.0;
  }
  return omega;
}

Eigen::MatrixXd doubled_embedding(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw std::invalid_argument("doubled_embedding: dimension mismatch");
  }
  const auto n = a.rows();
  Eigen::MatrixXd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a;
  m.topRightCorner(n, n) = -b;
  m.bottomLeftCorner(n, n) = b;
  m.bottomRightCorner(n, n) = a;
  return m;
}

double min_eig_hermitian_pair(const Eigen::MatrixXd& a,
                              const Eigen::MatrixXd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(doubled_embedding(a, b),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_physical_cm(const CovarianceMatrix& gamma, double tol) {
  const Eigen::MatrixXd omega = symplectic_form(gamma.modes());
  return min_eig_hermitian_pair(gamma.entries(), omega) >= -tol;
}

namespace {

void require_symmetric(const Eigen::MatrixXd& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw std::invalid_argument(std::string(who) +
                                ": need even square dimension");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument(std::string(who) + ": matrix not symmetric");
  }
}

// PSD square root via eigendecomposition, clamping tiny negatives.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m, const char* who,
                         double floor_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.minCoeff() < -floor_tol * scale) {
    throw std::invalid_argument(std::string(who) +
                                ": matrix not positive semidefinite (min eig " +
                                std::to_string(ev.minCoeff()) + ")");
  }
  ev = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& m,
                                           const Tolerances& tol) {
  require_symmetric(m, "symplectic_eigenvalues");
  const int n = static_cast<int>(m.rows()) / 2;
  const Eigen::MatrixXd root = psd_sqrt(m, "symplectic_eigenvalues", tol.psd_floor);
  // sqrt(m) * Omega * sqrt(m) is antisymmetric with eigenvalues +- i*s_j, so
  // its singular values are the symplectic eigenvalues, each twice.
  const Eigen::MatrixXd a = root * symplectic_form(n) * root;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  Eigen::VectorXd sv = svd.singularValues();  // descending
  const double scale = std::max(1.0, sv(0));
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double hi = sv(2 * i);
    const double lo = sv(2 * i + 1);
    if (hi - lo > tol.symplectic_pair * scale) {
      throw std::runtime_error(
          "symplectic_eigenvalues: pair mismatch (" + std::to_string(hi) +
          " vs " + std::to_string(lo) + ")");
    }
    out[n - 1 - i] = 0.5 * (hi + lo);
  }
  return out;
}

double symplectic_trace(const Eigen::MatrixXd& m, const Tolerances& tol) {
  const auto eigs = symplectic_eigenvalues(m, tol);
  double sum = 0.0;
  for (double s : eigs) sum += s;
  return sum;
}

WilliamsonForm williamson(const Eigen::MatrixXd& m, const Tolerances& tol) {
  require_symmetric(m, "williamson");
  const int n = static_cast<int>(m.rows()) / 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.eigenvalues().minCoeff() <= tol.strict_min) {
    throw std::invalid_argument(
        "williamson: matrix must be strictly positive definite (min eig " +
        std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
  const Eigen::MatrixXd inv_root =
      es.eigenvectors() *
      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().transpose();

  // a = m^{-1/2} Omega m^{-1/2} is antisymmetric with eigenvalues +- i/s_j;
  // its real Schur form is block diagonal with 2x2 blocks [[0,b],[-b,0]].
  Eigen::MatrixXd a = inv_root * symplectic_form(n) * inv_root;
  a = 0.5 * (a - a.transpose().eval());
  Eigen::RealSchur<Eigen::MatrixXd> schur(a);
  Eigen::MatrixXd q = schur.matrixU();
  const Eigen::MatrixXd& t = schur.matrixT();

  std::vector<std::pair<double, int>> blocks(n);  // (eigenvalue, block index)
  for (int j = 0; j < n; ++j) {
    double b = t(2 * j, 2 * j + 1);
    if (std::abs(b) < tol.strict_min) {
      throw std::runtime_error("williamson: degenerate Schur block");
    }
    if (b < 0) {
      q.col(2 * j).swap(q.col(2 * j + 1));
      b = -b;
    }
    blocks[j] = {1.0 / b, j};
  }
  std::sort(blocks.begin(), blocks.end());

  Eigen::MatrixXd q_sorted(2 * n, 2 * n);
  Eigen::VectorXd root_eigs(2 * n);
  std::vector<double> eigenvalues(n);
  for (int j = 0; j < n; ++j) {
    const int src = blocks[j].second;
    q_sorted.col(2 * j) = q.col(2 * src);
    q_sorted.col(2 * j + 1) = q.col(2 * src + 1);
    eigenvalues[j] = blocks[j].first;
    root_eigs(2 * j) = root_eigs(2 * j + 1) = std::sqrt(blocks[j].first);
  }

  Eigen::MatrixXd s = root_eigs.asDiagonal() * q_sorted.transpose() * inv_root;
  return WilliamsonForm{SymplecticMatrix(s, tol.symplectic_residual),
                        eigenvalues};
}

Eigen::MatrixXd schur_complement(const CovarianceMatrix& gamma,
                                 const Partition& part, const Tolerances& tol) {
  part.check_against(gamma);
  const int da = 2 * part.n_alice;
  const int db = 2 * part.n_bob;
  const Eigen::MatrixXd& g = gamma.entries();
  const Eigen::MatrixXd ga = g.topLeftCorner(da, da);
  const Eigen::MatrixXd gc = g.topRightCorner(da, db);
  const Eigen::MatrixXd gb = g.bottomRightCorner(db, db);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ga, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= tol.strict_min) {
    throw std::invalid_argument(
        "schur_complement: Alice block is singular (min eig " +
        std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
  Eigen::MatrixXd out = gb - gc.transpose() * ga.ldlt().solve(gc);
  return 0.5 * (out + out.transpose().eval());
}

}  // namespace gsteer
