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

#ifndef GSTEER_WITNESS_HPP
#define GSTEER_WITNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "gsteer/gaussian.hpp"
#include "gsteer/homodyne.hpp"
#include "gsteer/lmi_solver.hpp"
#include "gsteer/rng.hpp"

namespace gsteer {

/// Inputs of the witness program: measurement matrices, the measured (or
/// exact) variances m_j, and the Alice/Bob partition.
struct WitnessProblem {
  std::vector<MeasurementMatrix> measurements;
  Eigen::VectorXd variances;
  Partition partition;
};

enum class SolveStatus { optimal, infeasible, solver_failure };

/// Result of one witness optimization: coefficients c, the assembled witness
/// Z = sum c_j P_j, and the objective c . m (the witness expectation).
struct WitnessCandidate {
  SolveStatus status = SolveStatus::solver_failure;
  Eigen::VectorXd coefficients;
  Eigen::MatrixXd z;
  double value = 0.0;
  double gap = 0.0;
  std::string message;
};

/// Minimize c.m subject to Z = sum c_j P_j >= 0 and
/// Z_B + i Omega_B / (2 N_B) >= 0 (both evaluated as real doubled
/// embeddings; the Z block is compressed onto span{u_j} so that rank-deficient
/// witnesses keep a strictly feasible interior).
WitnessCandidate solve_witness(const WitnessProblem& problem,
                               const Tolerances& tol = {},
                               const lmi::Settings& solver = {});

/// Exact witness characterization: Z >= 0 and str[Z_B] >= 1/2 (up to slack).
bool verify_witness(const Eigen::MatrixXd& z, const Partition& part,
                    const Tolerances& tol = {});

/// Where the detection loop gets its variances: exact traces Tr[P gamma] or
/// sample variances of n simulated homodyne outcomes per direction.
struct VarianceSource {
  enum class Kind { exact, simulated };
  Kind kind = Kind::exact;
  int repetitions = 0;  // simulated only

  static VarianceSource exact() { return {Kind::exact, 0}; }
  static VarianceSource simulated(int n) { return {Kind::simulated, n}; }
  /// Parses "exact" or "simulated:<n>".
  static VarianceSource parse(const std::string& text);
  std::string to_string() const;
};

struct DetectionRound {
  int settings;
  SolveStatus status;
  double value;      // witness expectation (meaningful when optimal)
  double delta;      // 1-sigma error of the value (simulated source only)
  bool detected;
};

/// Log of one repeat-until-success run.
struct DetectionRecord {
  bool detected = false;
  int settings_used = 0;
  double final_value = 0.0;
  std::optional<WitnessCandidate> witness;
  std::vector<DetectionRound> rounds;
  int solver_failures = 0;
  std::vector<MeasurementDirection> directions;
};

/// Repeat-until-success steering detection: start from two random directions,
/// solve the witness program, and add one random direction per round until
/// the witness expectation certifies steering or max_settings is reached.
/// With simulated variances, detection additionally requires
/// value + sigma_k * delta < 1.
DetectionRecord detect_steering(const CovarianceMatrix& gamma,
                                const Partition& part, Rng& rng,
                                int max_settings,
                                const VarianceSource& source,
                                const Tolerances& tol = {},
                                double sigma_k = 3.0);

}  // namespace gsteer

#endif  // GSTEER_WITNESS_HPP
