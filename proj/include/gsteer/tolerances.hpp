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

#ifndef GSTEER_TOLERANCES_HPP
#define GSTEER_TOLERANCES_HPP

#include <string>

namespace gsteer {

/// Numerical thresholds shared across the library. One record so that a
/// single --tol-file can retune everything consistently.
struct Tolerances {
  /// Eigenvalue floor for "is this matrix PSD" decisions.
  double psd_floor = 1e-9;
  /// Minimum eigenvalue for strict positive definiteness (e.g. invertibility
  /// of Alice's block before a Schur complement).
  double strict_min = 1e-10;
  /// Agreement required between the two members of a symplectic eigenvalue
  /// pair, and for congruence-invariance checks.
  double symplectic_pair = 1e-8;
  /// Max entrywise residual of S*Omega*S^T - Omega for symplectic matrices.
  double symplectic_residual = 1e-10;
  /// Max asymmetry accepted when constructing a covariance matrix.
  double symmetry = 1e-12;
  /// A witness value must fall below 1 - detect_eps to count as detection.
  double detect_eps = 1e-7;
  /// Target duality gap for the witness SDP.
  double solver_gap = 1e-9;
  /// Gap still accepted when the barrier stalls at numerical precision.
  double solver_stall_gap = 1e-6;
  /// Slack allowed on witness validity checks (Z >= -slack etc).
  double witness_psd_slack = 1e-8;
  /// Slack allowed on str[Z_B] >= 1/2.
  double witness_str_slack = 1e-7;

  /// Parse overrides from a flat key=value file. Unknown keys are an error.
  static Tolerances from_file(const std::string& path);
};

}  // namespace gsteer

#endif  // GSTEER_TOLERANCES_HPP
