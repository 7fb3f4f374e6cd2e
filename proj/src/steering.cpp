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

#include "gsteer/steering.hpp"

#include <cmath>
#include <stdexcept>

namespace gsteer {

namespace {

void require_physical(const CovarianceMatrix& gamma, const Tolerances& tol,
                      const char* who) {
  if (!is_physical_cm(gamma, tol.psd_floor)) {
    throw std::invalid_argument(std::string(who) +
                                ": covariance matrix is not physical");
  }
}

}  // namespace

bool is_steerable(const CovarianceMatrix& gamma, const Partition& part,
                  double tol) {
  part.check_against(gamma);
  if (!is_physical_cm(gamma, tol)) {
    throw std::invalid_argument("is_steerable: covariance matrix is not physical");
  }
  Eigen::MatrixXd omega_b =
      Eigen::MatrixXd::Zero(gamma.dim(), gamma.dim());
  omega_b.bottomRightCorner(2 * part.n_bob, 2 * part.n_bob) =
      symplectic_form(part.n_bob);
  return min_eig_hermitian_pair(gamma.entries(), omega_b) < -tol;
}

std::optional<Eigen::MatrixXd> theorem2_certificate(
    const CovarianceMatrix& gamma, const Partition& part,
    const Tolerances& tol) {
  require_physical(gamma, tol, "theorem2_certificate");
  if (is_steerable(gamma, part, tol.psd_floor)) {
    return std::nullopt;
  }
  Eigen::MatrixXd sigma_b = schur_complement(gamma, part, tol);

  // The construction guarantees both certificate properties; check them
  // anyway so a numerical surprise cannot produce a bogus certificate.
  const Eigen::MatrixXd omega = symplectic_form(part.n_bob);
  if (min_eig_hermitian_pair(sigma_b, omega) < -tol.psd_floor) {
    throw std::runtime_error("theorem2_certificate: sigma_B fails the CMC");
  }
  Eigen::MatrixXd diff = gamma.entries();
  diff.bottomRightCorner(sigma_b.rows(), sigma_b.cols()) -= sigma_b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diff, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.psd_floor) {
    throw std::runtime_error(
        "theorem2_certificate: gamma - 0_A (+) sigma_B is not PSD");
  }
  return sigma_b;
}

double steering_measure(const CovarianceMatrix& gamma, const Partition& part,
                        const Tolerances& tol) {
  require_physical(gamma, tol, "steering_measure");
  const Eigen::MatrixXd sc = schur_complement(gamma, part, tol);
  const std::vector<double> mus = symplectic_eigenvalues(sc, tol);
  double sum = 0.0;
  for (double mu : mus) {
    if (mu < 1.0) sum -= std::log(mu);
  }
  const double measure = std::max(0.0, sum);

  if (part.n_bob == 1) {
    const int da = 2 * part.n_alice;
    const Eigen::MatrixXd& g = gamma.entries();
    const double det_a = g.topLeftCorner(da, da).determinant();
    const double det_ab = g.determinant();
    const double alt = std::max(0.0, 0.5 * std::log(det_a / det_ab));
    if (std::abs(alt - measure) > 1e-9 * std::max(1.0, measure)) {
      throw std::runtime_error(
          "steering_measure: determinant form disagrees with the symplectic "
          "spectrum form (" + std::to_string(alt) + " vs " +
          std::to_string(measure) + ")");
    }
  }
  return measure;
}

SteeringVerdict analyze_steering(const CovarianceMatrix& gamma,
                                 const Partition& part, const Tolerances& tol) {
  SteeringVerdict v;
  v.schur_symplectic_eigenvalues =
      symplectic_eigenvalues(schur_complement(gamma, part, tol), tol);
  v.measure = steering_measure(gamma, part, tol);
  v.steerable = is_steerable(gamma, part, tol.psd_floor);
  return v;
}

WitnessPrediction minimal_witness_prediction(const CovarianceMatrix& gamma,
                                             const Partition& part,
                                             const Tolerances& tol) {
  if (gamma.modes() != 2) {
    throw std::invalid_argument(
        "minimal_witness_prediction: defined for two-mode states only");
  }
  const double g = steering_measure(gamma, part, tol);
  return WitnessPrediction{std::exp(-g), g > 0.0};
}

}  // namespace gsteer
