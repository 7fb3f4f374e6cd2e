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

#ifndef GSTEER_LMI_SOLVER_HPP
#define GSTEER_LMI_SOLVER_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace gsteer::lmi {

/// Linear matrix inequality program
///   minimize cost . x   subject to   constant + sum_j x_j terms[j] >= 0.
/// All matrices symmetric and of equal dimension.
struct Problem {
  Eigen::VectorXd cost;
  Eigen::MatrixXd constant;
  std::vector<Eigen::MatrixXd> terms;

  int dim() const { return static_cast<int>(constant.rows()); }
  int vars() const { return static_cast<int>(terms.size()); }
  Eigen::MatrixXd at(const Eigen::VectorXd& x) const;
};

enum class Status { optimal, infeasible, failure };

struct Settings {
  double gap_tol = 1e-9;        // target barrier duality gap n/t
  double stall_gap = 1e-6;      // gap accepted if Newton stalls at precision
  double barrier_growth = 20.0; // t multiplier between centering stages
  int max_newton = 80;          // Newton iterations per stage
  double feas_margin = 1e-2;    // phase-1 slack proving strict feasibility
  double infeas_tol = 1e-8;     // phase-1 slack below which we call it infeasible
  double value_floor = -1e4;    // objective below this means unbounded data
};

struct Solution {
  Status status = Status::failure;
  Eigen::VectorXd x;
  double value = 0.0;
  double gap = 0.0;       // achieved barrier gap bound
  int newton_steps = 0;   // total Newton iterations spent
  std::string message;
};

/// Two-phase log-det barrier method. Phase 1 finds a strictly feasible point
/// (or certifies that none exists with the requested margin); phase 2 follows
/// the central path until the gap bound drops below gap_tol.
Solution solve(const Problem& problem, const Settings& settings = {});

}  // namespace gsteer::lmi

#endif  // GSTEER_LMI_SOLVER_HPP
