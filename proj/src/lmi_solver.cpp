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

#include "gsteer/lmi_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gsteer::lmi {

Eigen::MatrixXd Problem::at(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd f = constant;
  for (int j = 0; j < vars(); ++j) f += x(j) * terms[j];
  return f;
}

namespace {

// Cholesky with failure signalling; LLT is the strict-feasibility oracle.
bool try_llt(const Eigen::MatrixXd& f, Eigen::LLT<Eigen::MatrixXd>& llt) {
  llt.compute(f);
  return llt.info() == Eigen::Success;
}

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

struct CenterResult {
  bool converged = false;   // reached the Newton decrement target
  bool stalled = false;     // no further progress possible at this precision
  int steps = 0;
};

// Damped Newton minimization of t*cost.x - logdet F(x), starting strictly
// feasible. early_exit, when set, aborts as soon as the predicate holds
// (used by phase 1, which only needs enough feasibility margin).
template <typename EarlyExit>
CenterResult center(const Problem& prob, Eigen::VectorXd& x, double t,
                    const Settings& cfg, EarlyExit early_exit) {
  const int n = prob.dim();
  const int k = prob.vars();
  CenterResult res;
  Eigen::LLT<Eigen::MatrixXd> llt(n);

  for (int it = 0; it < cfg.max_newton; ++it) {
    Eigen::MatrixXd f = prob.at(x);
    if (!try_llt(f, llt)) return res;  // lost feasibility: caller treats as failure
    ++res.steps;

    // W_j = L^{-1} F_j L^{-T}; gradient and Hessian of the barrier follow
    // from traces of products of the W's.
    const Eigen::MatrixXd l = llt.matrixL();
    std::vector<Eigen::MatrixXd> w(k);
    Eigen::VectorXd grad(k);
    for (int j = 0; j < k; ++j) {
      Eigen::MatrixXd half =
          l.triangularView<Eigen::Lower>().solve(prob.terms[j]);
      w[j] = l.triangularView<Eigen::Lower>()
                 .solve(half.transpose())
                 .transpose();
      grad(j) = t * prob.cost(j) - w[j].trace();
    }
    Eigen::MatrixXd hess(k, k);
    for (int a = 0; a < k; ++a) {
      for (int b = a; b < k; ++b) {
        hess(a, b) = hess(b, a) = (w[a].array() * w[b].transpose().array()).sum();
      }
    }

    // Hessian can be singular when the terms are linearly dependent (more
    // directions than the span dimension); those directions are cost-flat,
    // so a ridge is harmless.
    double ridge = 1e-13 * (hess.trace() / k + 1.0);
    Eigen::VectorXd dx;
    double lambda2 = -1.0;
    for (int attempt = 0; attempt < 10; ++attempt) {
      Eigen::LLT<Eigen::MatrixXd> hllt(
          Eigen::MatrixXd(hess + ridge * Eigen::MatrixXd::Identity(k, k)));
      if (hllt.info() == Eigen::Success) {
        dx = hllt.solve(-grad);
        lambda2 = -grad.dot(dx);
        if (lambda2 >= 0) break;
      }
      ridge *= 100.0;
    }
    if (lambda2 < 0) return res;

    if (0.5 * lambda2 < 1e-11) {
      res.converged = true;
      return res;
    }

    // Backtracking line search; the step cap keeps unbounded phase-1 rays
    // from exploding the iterate scale.
    const double cap = 1e2 * (1.0 + x.cwiseAbs().maxCoeff());
    double alpha = std::min(1.0, cap / dx.cwiseAbs().maxCoeff());
    const double f0 = t * prob.cost.dot(x) - log_det_from_llt(llt);
    const double slope = grad.dot(dx);
    bool moved = false;
    while (alpha > 1e-14) {
      Eigen::VectorXd xn = x + alpha * dx;
      if (try_llt(prob.at(xn), llt)) {
        const double fn = t * prob.cost.dot(xn) - log_det_from_llt(llt);
        if (fn <= f0 + 0.01 * alpha * slope) {
          x = xn;
          moved = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!moved) {
      res.converged = 0.5 * lambda2 < 1e-7;
      res.stalled = !res.converged;
      return res;
    }
    if (early_exit(x)) {
      res.converged = true;
      return res;
    }
  }
  res.converged = true;  // iteration budget exhausted near the center
  return res;
}

}  // namespace

Solution solve(const Problem& problem, const Settings& cfg) {
  const int n = problem.dim();
  const int k = problem.vars();
  Solution sol;
  if (k == 0 || n == 0) {
    sol.message = "empty problem";
    return sol;
  }

  // ---- phase 1: minimize s subject to F(x) + s I > 0
  Problem phase1;
  phase1.cost = Eigen::VectorXd::Zero(k + 1);
  phase1.cost(k) = 1.0;
  phase1.constant = problem.constant;
  phase1.terms = problem.terms;
  phase1.terms.push_back(Eigen::MatrixXd::Identity(n, n));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(problem.constant,
                                                    Eigen::EigenvaluesOnly);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(k + 1);
  y(k) = std::max(0.0, -es.eigenvalues().minCoeff()) + 1.0;

  Eigen::VectorXd feasible;
  double t = 1.0;
  while (true) {
    const auto r = center(phase1, y, t, cfg,
                          [&](const Eigen::VectorXd& z) {
                            return z(k) < -cfg.feas_margin;
                          });
    sol.newton_steps += r.steps;
    if (y(k) < -cfg.feas_margin) {
      feasible = y.head(k);
      break;
    }
    const double gap = static_cast<double>(n) / t;
    if (!r.converged && !r.stalled) {
      sol.message = "phase 1: centering failed";
      return sol;
    }
    if (gap < 10 * cfg.gap_tol || r.stalled) {
      // s is within `gap` of the phase-1 optimum.
      if (y(k) < -cfg.infeas_tol) {
        feasible = y.head(k);
        break;
      }
      sol.status = Status::infeasible;
      sol.message = "no strictly feasible point (phase-1 slack " +
                    std::to_string(y(k)) + ")";
      return sol;
    }
    t *= cfg.barrier_growth;
  }

  // ---- phase 2: follow the central path
  Eigen::VectorXd x = feasible;
  t = 1.0;
  double gap = std::numeric_limits<double>::infinity();
  while (true) {
    const auto r =
        center(problem, x, t, cfg, [](const Eigen::VectorXd&) { return false; });
    sol.newton_steps += r.steps;
    gap = static_cast<double>(n) / t;
    if (!r.converged) {
      if (r.stalled && gap <= cfg.stall_gap) break;  // accurate enough
      sol.message = r.stalled ? "stalled at gap " + std::to_string(gap)
                              : "phase 2: centering failed";
      return sol;
    }
    const double value = problem.cost.dot(x);
    if (value < cfg.value_floor) {
      sol.message = "objective unbounded below (value " +
                    std::to_string(value) + "); data inconsistent";
      return sol;
    }
    if (gap <= cfg.gap_tol) break;
    t *= cfg.barrier_growth;
  }

  sol.status = Status::optimal;
  sol.x = x;
  sol.value = problem.cost.dot(x);
  sol.gap = gap;
  return sol;
}

}  // namespace gsteer::lmi
