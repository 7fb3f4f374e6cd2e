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

#ifndef GSTEER_HOMODYNE_HPP
#define GSTEER_HOMODYNE_HPP

#include <optional>
#include <vector>

#include "gsteer/gaussian.hpp"
#include "gsteer/rng.hpp"

namespace gsteer {

/// Homodyne measurement direction for a single-detector mixing scheme.
/// Two modes use (theta, phi, varphi1); three modes additionally need
/// (psi, varphi2). theta, phi, psi in [0, pi]; varphi1, varphi2 in [0, 2pi).
struct MeasurementDirection {
  double theta;
  double phi;
  double varphi1;
  std::optional<double> psi;
  std::optional<double> varphi2;

  int modes() const { return psi.has_value() ? 3 : 2; }
};

/// Rank-one variance matrix P = u u^T of a generalized quadrature, with the
/// unit coefficient vector u in interleaved (x1, p1, ...) ordering.
struct MeasurementMatrix {
  Eigen::VectorXd u;
  Eigen::MatrixXd p;
};

/// Quadrature outcomes of n repetitions along one direction.
struct HomodyneSampleSet {
  int direction_index;
  std::vector<double> samples;
};

/// Quadrature coefficient vector and measurement matrix for a direction.
/// For two modes u = (cos phi cos(theta-varphi1), cos phi sin(theta-varphi1),
/// sin phi cos theta, sin phi sin theta); three modes extend the same
/// detector-mode construction with (psi, varphi2).
MeasurementMatrix measurement_matrix(const MeasurementDirection& dir,
                                     int n_modes);

/// Expected variance of the quadrature: Tr[P gamma].
double expected_variance(const MeasurementMatrix& p,
                         const CovarianceMatrix& gamma);

/// Direction with each angle drawn uniformly from its range.
MeasurementDirection random_direction(int n_modes, Rng& rng);

/// Fixed direction set sufficient for full covariance reconstruction:
/// N(2N+1) directions whose measurement matrices span the symmetric
/// matrices (10 for two modes, 21 for three).
std::vector<MeasurementDirection> tomography_directions(int n_modes);

/// n independent outcomes from Normal(0, Tr[P gamma]).
HomodyneSampleSet simulate_homodyne(const MeasurementMatrix& p,
                                    const CovarianceMatrix& gamma, int n,
                                    Rng& rng, int direction_index = 0);

/// Unbiased variance estimate sum (x - xbar)^2 / (n - 1).
double sample_variance(const HomodyneSampleSet& s);

}  // namespace gsteer

#endif  // GSTEER_HOMODYNE_HPP
