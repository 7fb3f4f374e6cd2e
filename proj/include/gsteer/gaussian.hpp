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

#ifndef GSTEER_GAUSSIAN_HPP
#define GSTEER_GAUSSIAN_HPP

#include <Eigen/Dense>
#include <vector>

#include "gsteer/tolerances.hpp"

namespace gsteer {

// Quadrature ordering is mode-interleaved throughout: (x1, p1, ..., xN, pN).
// Covariance matrices are vacuum-normalized, i.e. the vacuum CM is the
// identity and physicality reads gamma + i*Omega >= 0.

/// Real symmetric 2N x 2N matrix of second moments. Symmetrized on
/// construction; physicality is a predicate (is_physical_cm), not an
/// invariant, so the same container can hold witness and scratch matrices.
class CovarianceMatrix {
 public:
  CovarianceMatrix(int dim_modes, const Eigen::MatrixXd& entries,
                   double symmetry_tol = Tolerances{}.symmetry);

  int modes() const { return modes_; }
  int dim() const { return 2 * modes_; }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

 private:
  int modes_;
  Eigen::MatrixXd entries_;
};

/// Split of the first n_alice modes (steering party) from the remaining
/// n_bob modes (steered party).
struct Partition {
  int n_alice;
  int n_bob;

  Partition(int na, int nb);
  int modes() const { return n_alice + n_bob; }
  /// Throws if the partition does not match the matrix mode count.
  void check_against(const CovarianceMatrix& gamma) const;
};

/// Real 2N x 2N matrix S with S*Omega*S^T = Omega (checked on construction).
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(
      const Eigen::MatrixXd& entries,
      double residual_tol = Tolerances{}.symplectic_residual);

  int modes() const { return static_cast<int>(entries_.rows()) / 2; }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

/// Williamson normal form of a positive definite matrix M:
/// s * M * s^T = diag(e1, e1, ..., eN, eN).
struct WilliamsonForm {
  SymplecticMatrix s;
  std::vector<double> eigenvalues;
};

/// Symplectic form of N modes: direct sum of [[0,1],[-1,0]] blocks.
Eigen::MatrixXd symplectic_form(int n_modes);

/// Real embedding of the Hermitian matrix A + iB (A symmetric, B
/// antisymmetric): [[A, -B], [B, A]]. The embedding is PSD iff A + iB is.
Eigen::MatrixXd doubled_embedding(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& b);

/// Minimum eigenvalue of the doubled embedding of A + iB.
double min_eig_hermitian_pair(const Eigen::MatrixXd& a,
                              const Eigen::MatrixXd& b);

/// Uncertainty-relation check gamma + i*Omega >= 0 (up to -tol).
bool is_physical_cm(const CovarianceMatrix& gamma,
                    double tol = Tolerances{}.psd_floor);

/// Williamson spectrum of a symmetric PSD matrix, ascending, one value per
/// (+,-) pair of eigenvalues of i*Omega*m.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& m,
                                           const Tolerances& tol = {});

/// Sum of the symplectic eigenvalues.
double symplectic_trace(const Eigen::MatrixXd& m, const Tolerances& tol = {});

/// Williamson decomposition of a strictly positive definite matrix.
WilliamsonForm williamson(const Eigen::MatrixXd& m, const Tolerances& tol = {});

/// Schur complement of gamma with respect to Alice's block:
/// gamma_B - gamma_12^T * gamma_A^{-1} * gamma_12. Requires gamma_A > 0.
Eigen::MatrixXd schur_complement(const CovarianceMatrix& gamma,
                                 const Partition& part,
                                 const Tolerances& tol = {});

}  // namespace gsteer

#endif  // GSTEER_GAUSSIAN_HPP
