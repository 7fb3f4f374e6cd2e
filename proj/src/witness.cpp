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

#include "gsteer/witness.hpp"

#include <cmath>
#include <stdexcept>

#include "gsteer/experiment.hpp"

namespace gsteer {

VarianceSource VarianceSource::parse(const std::string& text) {
  if (text == "exact") return exact();
  const std::string prefix = "simulated:";
  if (text.rfind(prefix, 0) == 0) {
    const int n = std::stoi(text.substr(prefix.size()));
    if (n < 2) {
      throw std::invalid_argument("variance source: need >= 2 repetitions");
    }
    return simulated(n);
  }
  throw std::invalid_argument("variance source: expected 'exact' or 'simulated:<n>'");
}

std::string VarianceSource::to_string() const {
  return kind == Kind::exact ? "exact"
                             : "simulated:" + std::to_string(repetitions);
}

namespace {

// Builds the LMI in the coefficient variables. The Z >= 0 block is expressed
// in an orthonormal basis of span{u_j}: Z has no support outside that span,
// and without the compression the block would be singular for every feasible
// point whenever k < 2N.
lmi::Problem build_lmi(const WitnessProblem& wp) {
  const int k = static_cast<int>(wp.measurements.size());
  const int dim = static_cast<int>(wp.measurements.front().u.size());
  const int db = 2 * wp.partition.n_bob;
  const int da = 2 * wp.partition.n_alice;

  Eigen::MatrixXd u_mat(dim, k);
  for (int j = 0; j < k; ++j) u_mat.col(j) = wp.measurements[j].u;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(u_mat, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  }
  const Eigen::MatrixXd basis = svd.matrixU().leftCols(rank);

  const int d = rank;
  const int nbig = d + 2 * db;
  const Eigen::MatrixXd omega_bar = symplectic_form(wp.partition.n_bob) /
                                    (2.0 * wp.partition.n_bob);

  lmi::Problem prob;
  prob.cost = wp.variances;
  prob.constant = Eigen::MatrixXd::Zero(nbig, nbig);
  prob.constant.block(d, d + db, db, db) = -omega_bar;
  prob.constant.block(d + db, d, db, db) = omega_bar;
  prob.terms.reserve(k);
  for (int j = 0; j < k; ++j) {
    const Eigen::VectorXd a = basis.transpose() * wp.measurements[j].u;
    const Eigen::VectorXd ub = wp.measurements[j].u.tail(db);
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(nbig, nbig);
    f.topLeftCorner(d, d) = a * a.transpose();
    f.block(d, d, db, db) = ub * ub.transpose();
    f.block(d + db, d + db, db, db) = ub * ub.transpose();
    prob.terms.push_back(std::move(f));
  }
  (void)da;
  return prob;
}

}  // namespace

WitnessCandidate solve_witness(const WitnessProblem& wp, const Tolerances& tol,
                               const lmi::Settings& solver) {
  if (wp.measurements.empty()) {
    throw std::invalid_argument("solve_witness: need at least one measurement");
  }
  const int dim = 2 * wp.partition.modes();
  for (const auto& p : wp.measurements) {
    if (p.u.size() != dim) {
      throw std::invalid_argument("solve_witness: measurement dimension mismatch");
    }
  }
  if (wp.variances.size() != static_cast<Eigen::Index>(wp.measurements.size())) {
    throw std::invalid_argument("solve_witness: variance count mismatch");
  }
  if (wp.variances.minCoeff() <= 0.0) {
    throw std::invalid_argument("solve_witness: variances must be positive");
  }

  lmi::Settings cfg = solver;
  cfg.gap_tol = std::min(cfg.gap_tol, tol.solver_gap);
  cfg.stall_gap = tol.solver_stall_gap;
  const lmi::Solution sol = lmi::solve(build_lmi(wp), cfg);

  WitnessCandidate cand;
  cand.message = sol.message;
  if (sol.status == lmi::Status::infeasible) {
    cand.status = SolveStatus::infeasible;
    return cand;
  }
  if (sol.status != lmi::Status::optimal) {
    cand.status = SolveStatus::solver_failure;
    return cand;
  }

  cand.coefficients = sol.x;
  cand.gap = sol.gap;
  cand.value = sol.value;
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(dim, dim);
  for (size_t j = 0; j < wp.measurements.size(); ++j) {
    z += sol.x(static_cast<int>(j)) * wp.measurements[j].p;
  }
  cand.z = 0.5 * (z + z.transpose());

  // Sanity: an "optimal" candidate must actually be a steering witness.
  // Anything else is a solver artifact and must not drive a verdict.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cand.z, Eigen::EigenvaluesOnly);
  const int db = 2 * wp.partition.n_bob;
  const Eigen::MatrixXd zb = cand.z.bottomRightCorner(db, db);
  const double bob_lmi = min_eig_hermitian_pair(
      zb, symplectic_form(wp.partition.n_bob) / (2.0 * wp.partition.n_bob));
  if (es.eigenvalues().minCoeff() < -tol.witness_psd_slack ||
      bob_lmi < -tol.witness_psd_slack ||
      !verify_witness(cand.z, wp.partition, tol)) {
    cand.status = SolveStatus::solver_failure;
    cand.message = "optimal point violates witness constraints";
    return cand;
  }
  cand.status = SolveStatus::optimal;
  return cand;
}

bool verify_witness(const Eigen::MatrixXd& z, const Partition& part,
                    const Tolerances& tol) {
  if (z.rows() != z.cols() || z.rows() != 2 * part.modes()) {
    throw std::invalid_argument("verify_witness: dimension mismatch");
  }
  const Eigen::MatrixXd zs = 0.5 * (z + z.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(zs, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.witness_psd_slack) return false;

  const int db = 2 * part.n_bob;
  Eigen::MatrixXd zb = zs.bottomRightCorner(db, db);
  // Clamp the tiny negative eigenvalues allowed by the slack so the
  // symplectic trace is well defined on boundary witnesses.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esb(zb);
  const Eigen::VectorXd clamped = esb.eigenvalues().cwiseMax(0.0);
  zb = esb.eigenvectors() * clamped.asDiagonal() * esb.eigenvectors().transpose();
  return symplectic_trace(zb, tol) >= 0.5 - tol.witness_str_slack;
}

DetectionRecord detect_steering(const CovarianceMatrix& gamma,
                                const Partition& part, Rng& rng,
                                int max_settings, const VarianceSource& source,
                                const Tolerances& tol, double sigma_k) {
  part.check_against(gamma);
  if (max_settings < 2) {
    throw std::invalid_argument("detect_steering: max_settings must be >= 2");
  }
  const int n_modes = part.modes();

  DetectionRecord rec;
  std::vector<MeasurementMatrix> mats;
  std::vector<double> variances;

  auto add_direction = [&]() {
    const MeasurementDirection dir = random_direction(n_modes, rng);
    MeasurementMatrix mat = measurement_matrix(dir, n_modes);
    double m;
    if (source.kind == VarianceSource::Kind::exact) {
      m = expected_variance(mat, gamma);
    } else {
      const auto samples =
          simulate_homodyne(mat, gamma, source.repetitions, rng,
                            static_cast<int>(rec.directions.size()));
      m = sample_variance(samples);
    }
    rec.directions.push_back(dir);
    mats.push_back(std::move(mat));
    variances.push_back(m);
  };

  add_direction();
  add_direction();

  while (true) {
    WitnessProblem wp{mats, Eigen::Map<const Eigen::VectorXd>(
                                variances.data(),
                                static_cast<Eigen::Index>(variances.size())),
                      part};
    WitnessCandidate cand = solve_witness(wp, tol);
    if (cand.status == SolveStatus::solver_failure) {
      // One retry on a slightly different central path before giving up on
      // the round.
      lmi::Settings jittered;
      jittered.barrier_growth = 8.0;
      jittered.max_newton = 160;
      cand = solve_witness(wp, tol, jittered);
    }

    DetectionRound round;
    round.settings = static_cast<int>(mats.size());
    round.status = cand.status;
    round.value = cand.value;
    round.delta = 0.0;
    round.detected = false;

    if (cand.status == SolveStatus::optimal) {
      double threshold_value = cand.value;
      if (source.kind == VarianceSource::Kind::simulated) {
        const ErrorEstimate err = error_propagation(
            cand.coefficients, wp.variances, source.repetitions);
        round.delta = err.delta_z;
        threshold_value += sigma_k * err.delta_z;
      }
      round.detected = threshold_value < 1.0 - tol.detect_eps;
    } else if (cand.status == SolveStatus::solver_failure) {
      ++rec.solver_failures;
    }
    rec.rounds.push_back(round);

    if (round.detected) {
      rec.detected = true;
      rec.settings_used = round.settings;
      rec.final_value = cand.value;
      rec.witness = std::move(cand);
      return rec;
    }
    if (static_cast<int>(mats.size()) >= max_settings) {
      rec.detected = false;
      rec.settings_used = static_cast<int>(mats.size());
      rec.final_value =
          cand.status == SolveStatus::optimal ? cand.value : 0.0;
      if (cand.status == SolveStatus::optimal) rec.witness = std::move(cand);
      return rec;
    }
    add_direction();
  }
}

}  // namespace gsteer
