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

#include "gsteer/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "gsteer/states.hpp"
#include "gsteer/steering.hpp"

namespace gsteer {

void SweepConfig::validate() const {
  if (sample_count < 1) throw std::invalid_argument("sweep: sample_count >= 1");
  if (bins < 1) throw std::invalid_argument("sweep: bins >= 1");
  if (workers < 1) throw std::invalid_argument("sweep: workers >= 1");
  if (max_settings != 0 && max_settings < 2) {
    throw std::invalid_argument("sweep: max_settings >= 2");
  }
  if (family == Family::ghz3 && !(ghz_a_min >= 1.0 && ghz_a_max >= ghz_a_min)) {
    throw std::invalid_argument("sweep: need 1 <= a_min <= a_max");
  }
}

int SweepConfig::family_modes() const {
  return family == Family::ghz3 ? 3 : 2;
}

Partition SweepConfig::partition() const {
  return family == Family::ghz3 ? Partition(1, 2) : Partition(1, 1);
}

int SweepConfig::effective_max_settings() const {
  if (max_settings != 0) return max_settings;
  const int n = family_modes();
  const int full = n * (2 * n + 1);
  // The Bob-block constraint is stronger than the exact witness condition
  // when Bob has several modes, so a few states need more directions than
  // full tomography; allow 1.5x headroom there.
  return family == Family::ghz3 ? (3 * full) / 2 : full;
}

SweepConfig::Family SweepConfig::parse_family(const std::string& name) {
  if (name == "svs") return Family::svs;
  if (name == "random2") return Family::random2;
  if (name == "ghz3") return Family::ghz3;
  throw std::invalid_argument("unknown sweep family: " + name);
}

std::string SweepConfig::family_name() const {
  switch (family) {
    case Family::svs: return "svs";
    case Family::random2: return "random2";
    case Family::ghz3: return "ghz3";
  }
  return "?";
}

long SweepResult::count_at(int bin, int settings) const {
  const int si = settings - settings_values.front();
  return counts.at(bin).at(si);
}

double SweepResult::fraction_at(int bin, int settings) const {
  const int si = settings - settings_values.front();
  return fractions.at(bin).at(si);
}

namespace {

struct SampleOutcome {
  enum class Kind { nonsteerable, detected, undetected, solver_failure };
  Kind kind;
  double measure = 0.0;
  int settings = 0;
};

SampleOutcome run_one_sample(const SweepConfig& cfg, std::uint64_t index,
                             const Tolerances& tol) {
  Rng rng = child_rng(cfg.seed, index);
  CovarianceMatrix gamma = [&]() -> CovarianceMatrix {
    switch (cfg.family) {
      case SweepConfig::Family::svs: {
        std::uniform_real_distribution<double> uni(0.0, cfg.svs_r_max);
        return squeezed_vacuum_cm(uni(rng));
      }
      case SweepConfig::Family::random2: {
        RandomCmConfig rc;
        rc.n_modes = 2;
        rc.nu_max = cfg.random_nu_max;
        rc.r_max = cfg.random_r_max;
        return random_cm(rc, rng);
      }
      case SweepConfig::Family::ghz3:
      default: {
        const int span = static_cast<int>(cfg.ghz_a_max - cfg.ghz_a_min) + 1;
        const double a = cfg.ghz_a_min + static_cast<double>(index % span);
        return ghz_cm(GhzParams::from_a(a));
      }
    }
  }();

  const Partition part = cfg.partition();
  SampleOutcome out;
  out.measure = steering_measure(gamma, part, tol);
  if (out.measure <= cfg.steerable_floor) {
    out.kind = SampleOutcome::Kind::nonsteerable;
    return out;
  }
  const DetectionRecord rec =
      detect_steering(gamma, part, rng, cfg.effective_max_settings(),
                      VarianceSource::exact(), tol);
  out.settings = rec.settings_used;
  if (rec.detected) {
    out.kind = SampleOutcome::Kind::detected;
  } else if (rec.solver_failures > 0) {
    out.kind = SampleOutcome::Kind::solver_failure;
  } else {
    out.kind = SampleOutcome::Kind::undetected;
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg, const Tolerances& tol) {
  cfg.validate();
  const auto t_start = std::chrono::steady_clock::now();

  std::vector<SampleOutcome> outcomes(cfg.sample_count);
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= cfg.sample_count) return;
      outcomes[i] = run_one_sample(cfg, static_cast<std::uint64_t>(i), tol);
    }
  };
  if (cfg.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(cfg.workers);
    for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SweepResult res;
  res.config = cfg;
  res.total_samples = cfg.sample_count;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& o : outcomes) {
    switch (o.kind) {
      case SampleOutcome::Kind::nonsteerable: ++res.skipped_nonsteerable; break;
      case SampleOutcome::Kind::solver_failure: ++res.solver_failures; break;
      case SampleOutcome::Kind::undetected: ++res.undetected_samples; break;
      case SampleOutcome::Kind::detected:
        ++res.steerable_samples;
        lo = std::min(lo, o.measure);
        hi = std::max(hi, o.measure);
        break;
    }
  }

  const int max_settings = cfg.effective_max_settings();
  res.settings_values.resize(max_settings - 1);
  for (int s = 2; s <= max_settings; ++s) res.settings_values[s - 2] = s;

  if (res.steerable_samples == 0) {
    res.bin_edges.assign(cfg.bins + 1, 0.0);
    res.counts.assign(cfg.bins, std::vector<long>(res.settings_values.size(), 0));
    res.fractions.assign(cfg.bins,
                         std::vector<double>(res.settings_values.size(), 0.0));
    res.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return res;
  }

  if (hi <= lo) hi = lo + 1e-12;  // all mass in one bin
  res.bin_edges.resize(cfg.bins + 1);
  for (int b = 0; b <= cfg.bins; ++b) {
    res.bin_edges[b] = lo + (hi - lo) * b / cfg.bins;
  }
  res.counts.assign(cfg.bins, std::vector<long>(res.settings_values.size(), 0));
  for (const auto& o : outcomes) {
    if (o.kind != SampleOutcome::Kind::detected) continue;
    int b = static_cast<int>((o.measure - lo) / (hi - lo) * cfg.bins);
    b = std::clamp(b, 0, cfg.bins - 1);
    const int si = o.settings - 2;
    ++res.counts[b][si];
  }

  res.fractions.assign(cfg.bins,
                       std::vector<double>(res.settings_values.size(), 0.0));
  for (int b = 0; b < cfg.bins; ++b) {
    long col = 0;
    for (long c : res.counts[b]) col += c;
    if (col == 0) continue;
    for (size_t si = 0; si < res.counts[b].size(); ++si) {
      res.fractions[b][si] =
          static_cast<double>(res.counts[b][si]) / static_cast<double>(col);
    }
  }

  res.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return res;
}

void emit_csv(const SweepResult& res, std::ostream& out) {
  out << "measure_bin_lo,measure_bin_hi,settings,count,fraction\n";
  out.precision(17);
  for (size_t b = 0; b + 1 < res.bin_edges.size(); ++b) {
    for (size_t si = 0; si < res.settings_values.size(); ++si) {
      out << res.bin_edges[b] << ',' << res.bin_edges[b + 1] << ','
          << res.settings_values[si] << ',' << res.counts[b][si] << ','
          << res.fractions[b][si] << '\n';
    }
  }
}

namespace {

nlohmann::json config_to_json(const SweepConfig& c) {
  return nlohmann::json{{"family", c.family_name()},
                        {"sample_count", c.sample_count},
                        {"seed", c.seed},
                        {"workers", c.workers},
                        {"bins", c.bins},
                        {"max_settings", c.max_settings},
                        {"svs_r_max", c.svs_r_max},
                        {"random_nu_max", c.random_nu_max},
                        {"random_r_max", c.random_r_max},
                        {"ghz_a_min", c.ghz_a_min},
                        {"ghz_a_max", c.ghz_a_max},
                        {"steerable_floor", c.steerable_floor}};
}

SweepConfig config_from_json(const nlohmann::json& j) {
  SweepConfig c;
  c.family = SweepConfig::parse_family(j.at("family").get<std::string>());
  c.sample_count = j.at("sample_count").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.workers = j.at("workers").get<int>();
  c.bins = j.at("bins").get<int>();
  c.max_settings = j.at("max_settings").get<int>();
  c.svs_r_max = j.at("svs_r_max").get<double>();
  c.random_nu_max = j.at("random_nu_max").get<double>();
  c.random_r_max = j.at("random_r_max").get<double>();
  c.ghz_a_min = j.at("ghz_a_min").get<double>();
  c.ghz_a_max = j.at("ghz_a_max").get<double>();
  c.steerable_floor = j.at("steerable_floor").get<double>();
  return c;
}

}  // namespace

std::string sweep_to_json(const SweepResult& res) {
  nlohmann::json j;
  j["config"] = config_to_json(res.config);
  j["bin_edges"] = res.bin_edges;
  j["settings_values"] = res.settings_values;
  j["counts"] = res.counts;
  j["fractions"] = res.fractions;
  j["total_samples"] = res.total_samples;
  j["steerable_samples"] = res.steerable_samples;
  j["skipped_nonsteerable"] = res.skipped_nonsteerable;
  j["solver_failures"] = res.solver_failures;
  j["undetected_samples"] = res.undetected_samples;
  j["runtime_seconds"] = res.runtime_seconds;
  return j.dump(2);
}

SweepResult sweep_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  SweepResult res;
  res.config = config_from_json(j.at("config"));
  res.bin_edges = j.at("bin_edges").get<std::vector<double>>();
  res.settings_values = j.at("settings_values").get<std::vector<int>>();
  res.counts = j.at("counts").get<std::vector<std::vector<long>>>();
  res.fractions = j.at("fractions").get<std::vector<std::vector<double>>>();
  res.total_samples = j.at("total_samples").get<long>();
  res.steerable_samples = j.at("steerable_samples").get<long>();
  res.skipped_nonsteerable = j.at("skipped_nonsteerable").get<long>();
  res.solver_failures = j.at("solver_failures").get<long>();
  res.undetected_samples = j.at("undetected_samples").get<long>();
  res.runtime_seconds = j.at("runtime_seconds").get<double>();
  return res;
}

ErrorEstimate error_propagation(const Eigen::VectorXd& coefficients,
                                const Eigen::VectorXd& variances, int n) {
  if (n < 2) throw std::invalid_argument("error_propagation: n >= 2");
  if (coefficients.size() != variances.size()) {
    throw std::invalid_argument("error_propagation: length mismatch");
  }
  ErrorEstimate e;
  e.repetitions = n;
  e.settings = static_cast<int>(coefficients.size());
  e.z_bar = coefficients.dot(variances);
  e.delta_z = std::sqrt(2.0 / (n - 1)) *
              coefficients.cwiseProduct(variances).norm();
  return e;
}

ErrorEstimate two_dataset_estimate(const CovarianceMatrix& gamma,
                                   const std::vector<MeasurementDirection>& dirs,
                                   int n, Rng& rng, const Partition& part,
                                   const Tolerances& tol, double sigma_k) {
  if (n < 2) throw std::invalid_argument("two_dataset_estimate: n >= 2");
  const int n_modes = part.modes();
  std::vector<MeasurementMatrix> mats;
  mats.reserve(dirs.size());
  for (const auto& d : dirs) mats.push_back(measurement_matrix(d, n_modes));

  auto sample_m = [&]() {
    Eigen::VectorXd m(static_cast<Eigen::Index>(mats.size()));
    for (size_t i = 0; i < mats.size(); ++i) {
      m(static_cast<Eigen::Index>(i)) = sample_variance(
          simulate_homodyne(mats[i], gamma, n, rng, static_cast<int>(i)));
    }
    return m;
  };

  const Eigen::VectorXd m1 = sample_m();
  const WitnessCandidate cand =
      solve_witness(WitnessProblem{mats, m1, part}, tol);
  if (cand.status != SolveStatus::optimal) {
    throw std::runtime_error("two_dataset_estimate: no witness from dataset 1 (" +
                             cand.message + ")");
  }

  const Eigen::VectorXd m2 = sample_m();
  ErrorEstimate e = error_propagation(cand.coefficients, m2, n);
  e.detected = e.z_bar + sigma_k * e.delta_z < 1.0;
  return e;
}

double backsolve_svs_witness_value(double target, double tol) {
  if (!(target > 0.0 && target < 1.0)) {
    throw std::invalid_argument("backsolve: target must be in (0, 1)");
  }
  // minimal witness expectation of the squeezed vacuum state is
  // exp(-measure); bisect on r.
  const Partition part(1, 1);
  auto value_at = [&](double r) {
    return minimal_witness_prediction(squeezed_vacuum_cm(r), part).value;
  };
  double lo = 0.0, hi = 1.0;
  while (value_at(hi) > target) hi *= 2.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (value_at(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

long repetitions_threshold(double value, const Eigen::VectorXd& coefficients,
                           const Eigen::VectorXd& variances, double sigma_k,
                           long max_repetitions) {
  if (value >= 1.0) return -1;
  const double cm = coefficients.cwiseProduct(variances).norm();
  // value + sigma_k * sqrt(2/(n-1)) * cm < 1  <=>  n > 1 + 2 (sigma_k cm / (1-value))^2
  const double ratio = sigma_k * cm / (1.0 - value);
  const double n_real = 1.0 + 2.0 * ratio * ratio;
  const long n = static_cast<long>(std::floor(n_real)) + 1;
  return n <= max_repetitions ? n : -1;
}

std::vector<RobustnessPoint> detection_thresholds(
    const CovarianceMatrix& gamma, const Partition& part,
    const RobustnessConfig& config, const Tolerances& tol) {
  const int n_modes = part.modes();
  std::vector<RobustnessPoint> out;
  for (size_t idx = 0; idx < config.settings_counts.size(); ++idx) {
    const int k = config.settings_counts[idx];
    RobustnessPoint pt;
    pt.settings = k;
    pt.draws = config.draws;
    std::vector<long> thresholds;
    std::vector<double> values;
    for (int d = 0; d < config.draws; ++d) {
      Rng rng = child_rng(config.seed, (idx << 20) + static_cast<std::uint64_t>(d));
      std::vector<MeasurementMatrix> mats;
      Eigen::VectorXd m(k);
      for (int j = 0; j < k; ++j) {
        mats.push_back(
            measurement_matrix(random_direction(n_modes, rng), n_modes));
        m(j) = expected_variance(mats.back(), gamma);
      }
      const WitnessCandidate cand =
          solve_witness(WitnessProblem{mats, m, part}, tol);
      if (cand.status != SolveStatus::optimal) continue;
      const long thr = repetitions_threshold(cand.value, cand.coefficients, m,
                                             config.sigma_k,
                                             config.max_repetitions);
      if (thr < 0) continue;
      thresholds.push_back(thr);
      values.push_back(cand.value);
    }
    pt.detecting_draws = static_cast<int>(thresholds.size());
    if (!thresholds.empty()) {
      // median over detecting draws
      std::sort(thresholds.begin(), thresholds.end());
      std::sort(values.begin(), values.end());
      pt.threshold_repetitions = thresholds[thresholds.size() / 2];
      pt.witness_value = values[values.size() / 2];
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace gsteer
