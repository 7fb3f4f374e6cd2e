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

// Command-line front end: generate covariance matrices, analyze and detect
// steering, run Monte Carlo sweeps, and study statistical robustness.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsteer/experiment.hpp"
#include "gsteer/matrix_io.hpp"
#include "gsteer/states.hpp"
#include "gsteer/steering.hpp"

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitSolverBudget = 3;

using nlohmann::json;

std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line without '=': " + line);
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

gsteer::Partition parse_partition(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::runtime_error("partition must look like N_A:N_B");
  }
  return gsteer::Partition(std::stoi(text.substr(0, colon)),
                           std::stoi(text.substr(colon + 1)));
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
  out << text;
}

// ---------------------------------------------------------------------------
// gen

gsteer::CovarianceMatrix generate_state(
    const std::map<std::string, std::string>& kv) {
  const auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  const auto require = [&](const std::string& key) {
    const auto v = get(key);
    if (!v) throw std::runtime_error("gen config: missing key '" + key + "'");
    return *v;
  };

  const std::string family = require("family");
  if (family == "svs") {
    return gsteer::squeezed_vacuum_cm(std::stod(require("r")));
  }
  if (family == "thermal") {
    std::vector<double> nus;
    std::stringstream ss(require("nus"));
    std::string cell;
    while (std::getline(ss, cell, ',')) nus.push_back(std::stod(cell));
    return gsteer::thermal_cm(nus);
  }
  if (family == "ghz") {
    if (get("a")) {
      return gsteer::ghz_cm(gsteer::GhzParams::from_a(std::stod(*get("a"))));
    }
    return gsteer::ghz_cm(gsteer::GhzParams::from_squeezing(
        std::stod(require("r_m")), std::stod(require("r_p"))));
  }

  gsteer::Rng rng(get("seed") ? std::stoull(*get("seed")) : 0);
  if (family == "random") {
    gsteer::RandomCmConfig cfg;
    if (get("modes")) cfg.n_modes = std::stoi(*get("modes"));
    if (get("nu_max")) cfg.nu_max = std::stod(*get("nu_max"));
    if (get("r_max")) cfg.r_max = std::stod(*get("r_max"));
    return gsteer::random_cm(cfg, rng);
  }
  if (family == "nonsteerable") {
    const int modes = get("modes") ? std::stoi(*get("modes")) : 2;
    const int na = get("n_alice") ? std::stoi(*get("n_alice")) : 1;
    return gsteer::random_nonsteerable_cm(gsteer::Partition(na, modes - na),
                                          rng);
  }
  throw std::runtime_error("gen config: unknown family '" + family + "'");
}

// ---------------------------------------------------------------------------
// json encoders

json verdict_to_json(const gsteer::SteeringVerdict& v) {
  return json{{"steerable", v.steerable},
              {"measure", v.measure},
              {"schur_symplectic_eigenvalues", v.schur_symplectic_eigenvalues}};
}

const char* status_name(gsteer::SolveStatus s) {
  switch (s) {
    case gsteer::SolveStatus::optimal: return "optimal";
    case gsteer::SolveStatus::infeasible: return "infeasible";
    case gsteer::SolveStatus::solver_failure: return "solver_failure";
  }
  return "?";
}

json record_to_json(const gsteer::DetectionRecord& rec) {
  json rounds = json::array();
  for (const auto& r : rec.rounds) {
    rounds.push_back(json{{"settings", r.settings},
                          {"status", status_name(r.status)},
                          {"value", r.value},
                          {"delta", r.delta},
                          {"detected", r.detected}});
  }
  json j{{"detected", rec.detected},
         {"settings_used", rec.settings_used},
         {"final_value", rec.final_value},
         {"solver_failures", rec.solver_failures},
         {"rounds", rounds}};
  if (rec.witness) {
    const auto& w = *rec.witness;
    std::vector<double> coeff(w.coefficients.data(),
                              w.coefficients.data() + w.coefficients.size());
    j["witness"] = json{{"status", status_name(w.status)},
                        {"value", w.value},
                        {"coefficients", coeff}};
  }
  json dirs = json::array();
  for (const auto& d : rec.directions) {
    json dj{{"theta", d.theta}, {"phi", d.phi}, {"varphi1", d.varphi1}};
    if (d.psi) dj["psi"] = *d.psi;
    if (d.varphi2) dj["varphi2"] = *d.varphi2;
    dirs.push_back(dj);
  }
  j["directions"] = dirs;
  return j;
}

std::string record_to_csv(const gsteer::DetectionRecord& rec) {
  std::ostringstream out;
  out.precision(17);
  out << "settings,status,value,delta,detected\n";
  for (const auto& r : rec.rounds) {
    out << r.settings << ',' << status_name(r.status) << ',' << r.value << ','
        << r.delta << ',' << (r.detected ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian steering witnesses from random homodyne measurements"};
  app.require_subcommand(1);

  std::string tol_file;
  app.add_option("--tol-file", tol_file,
                 "key=value file overriding numerical tolerances");

  // --- gen
  auto* gen = app.add_subcommand("gen", "generate a covariance matrix file");
  std::string gen_config, gen_out = "-";
  std::vector<std::string> gen_sets;
  gen->add_option("--config", gen_config, "flat key=value config file");
  gen->add_option("--set", gen_sets,
                  "inline key=value pairs (override --config)");
  gen->add_option("--out,-o", gen_out, "output path (default stdout)");

  // --- analyze
  auto* analyze = app.add_subcommand("analyze", "steering verdict and measure");
  std::string an_cm, an_part = "1:1", an_out = "-";
  analyze->add_option("--cm", an_cm, "covariance matrix file")->required();
  analyze->add_option("--partition", an_part, "N_A:N_B (default 1:1)");
  analyze->add_option("--out,-o", an_out, "output path (default stdout)");

  // --- detect
  auto* detect = app.add_subcommand("detect", "repeat-until-success detection");
  std::string de_cm, de_part = "1:1", de_src = "exact", de_emit = "json",
              de_out = "-";
  int de_max_settings = 0;
  std::uint64_t de_seed = 0;
  double de_sigma_k = 3.0;
  detect->add_option("--cm", de_cm, "covariance matrix file")->required();
  detect->add_option("--partition", de_part, "N_A:N_B (default 1:1)");
  detect->add_option("--max-settings", de_max_settings,
                     "stop after this many directions (default N(2N+1))");
  detect->add_option("--seed", de_seed, "RNG seed");
  detect->add_option("--variance-source", de_src, "exact | simulated:<n>");
  detect->add_option("--sigma-k", de_sigma_k,
                     "confidence multiplier for noisy detection (default 3)");
  detect->add_option("--emit", de_emit, "json | csv");
  detect->add_option("--out,-o", de_out, "output path (default stdout)");

  // --- sweep
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo detection sweep");
  std::string sw_family = "svs", sw_out = "-", sw_format = "csv";
  gsteer::SweepConfig sw_cfg;
  sweep->add_option("--family", sw_family, "svs | random2 | ghz3")->required();
  sweep->add_option("--samples", sw_cfg.sample_count, "sample count");
  sweep->add_option("--seed", sw_cfg.seed, "master seed");
  sweep->add_option("--workers", sw_cfg.workers, "worker threads");
  sweep->add_option("--bins", sw_cfg.bins, "measure bins (default 10)");
  sweep->add_option("--max-settings", sw_cfg.max_settings,
                    "override the per-family default");
  sweep->add_option("--out,-o", sw_out, "output path (default stdout)");
  sweep->add_option("--format", sw_format, "csv | json");

  // --- stats
  auto* stats = app.add_subcommand(
      "stats", "statistical robustness: repetition thresholds and error bars");
  double st_target = 0.7477;
  std::vector<int> st_settings{7, 8, 9};
  int st_draws = 25, st_resim = 0, st_resim_n = 1000;
  std::uint64_t st_seed = 0;
  std::string st_out = "-";
  stats->add_option("--target-witness", st_target,
                    "minimal witness expectation selecting the state");
  stats->add_option("--settings", st_settings, "settings counts to study");
  stats->add_option("--draws", st_draws, "random direction sets per count");
  stats->add_option("--seed", st_seed, "RNG seed");
  stats->add_option("--resim", st_resim,
                    "validate the error formula against this many resimulations");
  stats->add_option("--resim-repetitions", st_resim_n,
                    "repetitions per direction in the validation");
  stats->add_option("--out,-o", st_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  gsteer::Tolerances tol;
  try {
    if (!tol_file.empty()) tol = gsteer::Tolerances::from_file(tol_file);

    if (*gen) {
      std::map<std::string, std::string> kv;
      if (!gen_config.empty()) kv = read_kv_file(gen_config);
      for (const auto& s : gen_sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
          throw std::runtime_error("--set needs key=value, got: " + s);
        }
        kv[s.substr(0, eq)] = s.substr(eq + 1);
      }
      const auto gamma = generate_state(kv);
      std::ostringstream out;
      gsteer::write_cm(gamma, out);
      write_output(out.str(), gen_out);
      return 0;
    }

    if (*analyze) {
      const auto gamma = gsteer::read_cm_file(an_cm);
      const auto part = parse_partition(an_part);
      const auto verdict = gsteer::analyze_steering(gamma, part, tol);
      write_output(verdict_to_json(verdict).dump(2), an_out);
      return 0;
    }

    if (*detect) {
      const auto gamma = gsteer::read_cm_file(de_cm);
      const auto part = parse_partition(de_part);
      const auto source = gsteer::VarianceSource::parse(de_src);
      if (de_max_settings == 0) {
        const int n = part.modes();
        de_max_settings = n * (2 * n + 1);
      }
      gsteer::Rng rng(de_seed);
      const auto rec = gsteer::detect_steering(gamma, part, rng,
                                               de_max_settings, source, tol,
                                               de_sigma_k);
      if (de_emit == "csv") {
        write_output(record_to_csv(rec), de_out);
      } else {
        write_output(record_to_json(rec).dump(2), de_out);
      }
      return (!rec.detected && rec.solver_failures > 0 &&
              rec.rounds.back().status == gsteer::SolveStatus::solver_failure)
                 ? kExitSolverBudget
                 : 0;
    }

    if (*sweep) {
      sw_cfg.family = gsteer::SweepConfig::parse_family(sw_family);
      const auto result = gsteer::run_sweep(sw_cfg, tol);
      if (sw_format == "json") {
        write_output(gsteer::sweep_to_json(result), sw_out);
      } else {
        std::ostringstream out;
        gsteer::emit_csv(result, out);
        write_output(out.str(), sw_out);
      }
      std::cerr << "sweep: " << result.steerable_samples << " steerable of "
                << result.total_samples << " samples ("
                << result.skipped_nonsteerable << " non-steerable, "
                << result.solver_failures << " solver failures, "
                << result.undetected_samples << " undetected) in "
                << result.runtime_seconds << " s\n";
      return result.solver_failures * 10 > result.total_samples
                 ? kExitSolverBudget
                 : 0;
    }

    if (*stats) {
      const double r = gsteer::backsolve_svs_witness_value(st_target);
      const auto gamma = gsteer::squeezed_vacuum_cm(r);
      const gsteer::Partition part(1, 1);

      gsteer::RobustnessConfig cfg;
      cfg.settings_counts = st_settings;
      cfg.draws = st_draws;
      cfg.seed = st_seed;
      const auto points = gsteer::detection_thresholds(gamma, part, cfg, tol);

      json jpoints = json::array();
      for (const auto& p : points) {
        jpoints.push_back(json{{"settings", p.settings},
                               {"threshold_repetitions", p.threshold_repetitions},
                               {"witness_value", p.witness_value},
                               {"detecting_draws", p.detecting_draws},
                               {"draws", p.draws}});
      }
      json j{{"squeezing", r},
             {"target_witness", st_target},
             {"thresholds", jpoints}};

      if (st_resim > 0) {
        // Error-propagation validation on the full tomography witness.
        gsteer::Rng rng(st_seed + 1);
        const auto dirs = gsteer::tomography_directions(2);
        std::vector<gsteer::MeasurementMatrix> mats;
        Eigen::VectorXd m(static_cast<Eigen::Index>(dirs.size()));
        for (size_t i = 0; i < dirs.size(); ++i) {
          mats.push_back(gsteer::measurement_matrix(dirs[i], 2));
          m(static_cast<Eigen::Index>(i)) =
              gsteer::expected_variance(mats.back(), gamma);
        }
        const auto cand = gsteer::solve_witness(
            gsteer::WitnessProblem{mats, m, part}, tol);
        if (cand.status != gsteer::SolveStatus::optimal) {
          throw std::runtime_error("stats: tomography witness failed");
        }
        double sum = 0.0, sumsq = 0.0;
        for (int trial = 0; trial < st_resim; ++trial) {
          double zbar = 0.0;
          for (size_t i = 0; i < mats.size(); ++i) {
            zbar += cand.coefficients(static_cast<Eigen::Index>(i)) *
                    gsteer::sample_variance(gsteer::simulate_homodyne(
                        mats[i], gamma, st_resim_n, rng, static_cast<int>(i)));
          }
          sum += zbar;
          sumsq += zbar * zbar;
        }
        const double mean = sum / st_resim;
        const double var = (sumsq - st_resim * mean * mean) / (st_resim - 1);
        const auto est = gsteer::error_propagation(cand.coefficients, m,
                                                   st_resim_n);
        j["error_validation"] = json{{"resimulations", st_resim},
                                     {"repetitions", st_resim_n},
                                     {"empirical_mean", mean},
                                     {"empirical_std", std::sqrt(var)},
                                     {"analytic_delta", est.delta_z},
                                     {"exact_value", cand.value}};
      }
      write_output(j.dump(2), st_out);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
