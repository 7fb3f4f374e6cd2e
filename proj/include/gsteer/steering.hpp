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

#ifndef GSTEER_STEERING_HPP
#define GSTEER_STEERING_HPP

#include <optional>

#include "gsteer/gaussian.hpp"

namespace gsteer {

/// Outcome of steerability analysis for one covariance matrix and partition.
/// steerable <=> measure > 0 <=> some Schur symplectic eigenvalue < 1.
struct SteeringVerdict {
  bool steerable;
  double measure;  // nats
  std::vector<double> schur_symplectic_eigenvalues;
};

/// Alice -> Bob steerability by Gaussian measurements: the state is
/// non-steerable iff gamma + i (0_A (+) Omega_B) >= 0.
bool is_steerable(const CovarianceMatrix& gamma, const Partition& part,
                  double tol = Tolerances{}.psd_floor);

/// For non-steerable states, the Schur complement is itself a valid CM
/// certifying non-steerability: sigma_B + i Omega_B >= 0 and
/// gamma >= 0_A (+) sigma_B. Returns nothing for steerable states.
std::optional<Eigen::MatrixXd> theorem2_certificate(
    const CovarianceMatrix& gamma, const Partition& part,
    const Tolerances& tol = {});

/// Steering measure max{0, -sum_{mu_j < 1} ln mu_j} over the symplectic
/// eigenvalues mu_j of the Schur complement. For single-mode Bob the
/// determinant form (1/2) ln(det gamma_A / det gamma) is evaluated as a
/// cross-check and must agree to 1e-9.
double steering_measure(const CovarianceMatrix& gamma, const Partition& part,
                        const Tolerances& tol = {});

/// Full verdict (flag, measure, Schur spectrum) in one pass.
SteeringVerdict analyze_steering(const CovarianceMatrix& gamma,
                                 const Partition& part,
                                 const Tolerances& tol = {});

struct WitnessPrediction {
  double value;    // exp(-measure)
  bool steerable;  // false means the prediction is >= 1 and vacuous
};

/// Closed-form optimum of the two-mode witness program: the minimal witness
/// expectation equals exp(-measure). Only defined for two-mode states.
WitnessPrediction minimal_witness_prediction(const CovarianceMatrix& gamma,
                                             const Partition& part,
                                             const Tolerances& tol = {});

}  // namespace gsteer

#endif  // GSTEER_STEERING_HPP
