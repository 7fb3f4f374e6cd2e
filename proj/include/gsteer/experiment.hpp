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

#ifndef GSTEER_EXPERIMENT_HPP
#define GSTEER_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsteer/witness.hpp"

namespace gsteer {

/// Monte Carlo sweep over a state family: per sample, draw a state, compute
/// the steering measure, run the detection loop with exact variances, and
/// histogram (measure bin) x (settings used).
struct SweepConfig {
  enum class Family { svs, random2, ghz3 };

  Family family = Family::svs;
  int sample_count = 1000;
  std::uint64_t seed = 0;
  int workers = 1;
  int bins = 10;
  int max_settings = 0;  // 0: family default (full tomography; 1.5x for ghz3)

  // Family parameter ranges.
  double svs_r_max = 2.0;          // r uniform on [0, svs_r_max]
  double random_nu_max = 5.0;      // thermal eigenvalues uniform on [1, nu_max]
  double random_r_max = 2.0;       // squeezing uniform on [0, r_max]
  double ghz_a_min = 2.0;          // a grid {a_min, a_min+1, ..., a_max}
  double ghz_a_max = 26.0;

  /// States with measure below this floor cannot clear the detection
  /// threshold and are excluded from the histogram as non-steerable.
  double steerable_floor = 1e-6;

  void validate() const;
  int effective_max_settings() const;
  int family_modes() const;
  Partition partition() const;
  static Family parse_family(const std::string& name);
  std::string family_name() const;
};

struct SweepResult {
  SweepConfig config;
  std::vector<double> bin_edges;            // bins + 1 ascending edges
  std::vector<int> settings_values;         // 2 .. max_settings
  std::vector<std::vector<long>> counts;    // [bin][settings index]
  std::vector<std::vector<double>> fractions;  // column-normalized per bin
  long total_samples = 0;
  long steerable_samples = 0;
  long skipped_nonsteerable = 0;
  long solver_failures = 0;     // samples dropped due to solver failure
  long undetected_samples = 0;  // steerable but not found within max settings
  double runtime_seconds = 0.0;

  long count_at(int bin, int settings) const;
  double fraction_at(int bin, int settings) const;
};

SweepResult run_sweep(const SweepConfig& config, const Tolerances& tol = {});

/// CSV with header `measure_bin_lo,measure_bin_hi,settings,count,fraction`,
/// bins ascending then settings ascending.
void emit_csv(const SweepResult& result, std::ostream& out);
std::string sweep_to_json(const SweepResult& result);
SweepResult sweep_from_json(const std::string& text);

/// First-order error of the witness expectation Zbar = c . m when every
/// variance is a sample variance over n outcomes:
/// delta = sqrt(2/(n-1)) * sqrt(sum_i c_i^2 m_i^2).
struct ErrorEstimate {
  double z_bar = 0.0;
  double delta_z = 0.0;
  int repetitions = 0;
  int settings = 0;
  bool detected = false;  // z_bar + sigma_k * delta_z < 1
};

ErrorEstimate error_propagation(const Eigen::VectorXd& coefficients,
                                const Eigen::VectorXd& variances, int n);

/// Two-dataset protocol: derive the witness coefficients from one simulated
/// dataset and evaluate Zbar and its error on an independent second dataset.
ErrorEstimate two_dataset_estimate(const CovarianceMatrix& gamma,
                                   const std::vector<MeasurementDirection>& dirs,
                                   int n, Rng& rng,
                                   const Partition& part,
                                   const Tolerances& tol = {},
                                   double sigma_k = 3.0);

/// Squeezing parameter r such that the minimal witness expectation of the
/// squeezed vacuum state equals `target` (bisection on exp(-measure), then
/// verified against the full-tomography program).
double backsolve_svs_witness_value(double target, double tol = 1e-6);

/// Detection threshold study for a fixed state (statistical robustness):
/// for each settings count, draw `draws` random direction sets, solve with
/// exact variances, and convert the witness into the smallest repetition
/// count n with value + sigma_k * delta(n) < 1.
struct RobustnessPoint {
  int settings = 0;
  long threshold_repetitions = -1;  // -1: no detecting witness found
  double witness_value = 0.0;       // median exact value of detecting draws
  int detecting_draws = 0;
  int draws = 0;
};

struct RobustnessConfig {
  std::vector<int> settings_counts = {7, 8, 9};
  int draws = 25;
  std::uint64_t seed = 0;
  double sigma_k = 3.0;
  long max_repetitions = 100000000;
};

std::vector<RobustnessPoint> detection_thresholds(
    const CovarianceMatrix& gamma, const Partition& part,
    const RobustnessConfig& config, const Tolerances& tol = {});

/// Smallest n with value + sigma_k * sqrt(2/(n-1)) * |c o m| < 1, or -1.
long repetitions_threshold(double value, const Eigen::VectorXd& coefficients,
                           const Eigen::VectorXd& variances, double sigma_k,
                           long max_repetitions);

}  // namespace gsteer

#endif  // GSTEER_EXPERIMENT_HPP
