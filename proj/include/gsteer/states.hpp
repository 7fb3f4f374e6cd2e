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

#ifndef GSTEER_STATES_HPP
#define GSTEER_STATES_HPP

#include <cstdint>

#include "gsteer/gaussian.hpp"
#include "gsteer/rng.hpp"

namespace gsteer {

/// Parameters for random covariance matrices gamma = S * gamma_th * S^T with
/// thermal symplectic eigenvalues drawn uniformly from [1, nu_max] and
/// one-mode squeezing parameters from [0, r_max].
struct RandomCmConfig {
  int n_modes = 2;
  double nu_max = 5.0;
  double r_max = 2.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Three-mode GHZ-type state parameters. The diagonal pair (a, b) and the
/// correlation c are tied together; construct either from `a` directly or
/// from the squeezing parameters (r_m, r_p).
struct GhzParams {
  double a;

  static GhzParams from_a(double a);
  static GhzParams from_squeezing(double r_m, double r_p);

  double b() const;
  double c() const;
};

/// Two-mode squeezed vacuum with squeezing parameter r.
CovarianceMatrix squeezed_vacuum_cm(double r);

/// Thermal state diag(nu_1, nu_1, ..., nu_N, nu_N), each nu_i >= 1.
CovarianceMatrix thermal_cm(const std::vector<double>& nus);

/// Three-mode continuous-variable GHZ state.
CovarianceMatrix ghz_cm(const GhzParams& params);

/// Haar-random member of the orthogonal symplectic group K(2N), built from a
/// Haar unitary U = X - iY.
SymplecticMatrix random_orthogonal_symplectic(int n_modes, Rng& rng);

/// Random symplectic via the Euler decomposition K * (dirsum of one-mode
/// squeezers) * L with squeezing parameters uniform on [0, r_max].
SymplecticMatrix random_symplectic(int n_modes, double r_max, Rng& rng);

/// Random physical CM; symplectic spectrum equals the drawn thermal spectrum.
CovarianceMatrix random_cm(const RandomCmConfig& config, Rng& rng);

/// Random CM that is Alice->Bob non-steerable by construction:
/// 0_A (+) sigma_B + P with sigma_B a random physical CM and P >= 0 chosen so
/// the whole matrix is a physical CM with invertible Alice block.
CovarianceMatrix random_nonsteerable_cm(const Partition& part, Rng& rng);

}  // namespace gsteer

#endif  // GSTEER_STATES_HPP
