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

#include "gsteer/homodyne.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gsteer {

namespace {

constexpr double kPi = std::numbers::pi;

void check_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi)) {
    throw std::invalid_argument(std::string("measurement_matrix: angle ") +
                                name + " out of range");
  }
}

}  // namespace

MeasurementMatrix measurement_matrix(const MeasurementDirection& dir,
                                     int n_modes) {
  if (n_modes != 2 && n_modes != 3) {
    throw std::invalid_argument("measurement_matrix: supported for 2 or 3 modes");
  }
  if (dir.modes() != n_modes) {
    throw std::invalid_argument(
        "measurement_matrix: direction fields do not match the mode count");
  }
  check_range(dir.theta, 0.0, kPi, "theta");
  check_range(dir.phi, 0.0, kPi, "phi");
  check_range(dir.varphi1, 0.0, 2 * kPi, "varphi1");

  Eigen::VectorXd u(2 * n_modes);
  if (n_modes == 2) {
    u << std::cos(dir.phi) * std::cos(dir.theta - dir.varphi1),
        std::cos(dir.phi) * std::sin(dir.theta - dir.varphi1),
        std::sin(dir.phi) * std::cos(dir.theta),
        std::sin(dir.phi) * std::sin(dir.theta);
  } else {
    check_range(*dir.psi, 0.0, kPi, "psi");
    check_range(*dir.varphi2, 0.0, 2 * kPi, "varphi2");
    const double sp = std::sin(dir.phi);
    u << std::cos(dir.phi) * std::cos(dir.theta - dir.varphi1),
        std::cos(dir.phi) * std::sin(dir.theta - dir.varphi1),
        sp * std::cos(*dir.psi) * std::cos(dir.theta - *dir.varphi2),
        sp * std::cos(*dir.psi) * std::sin(dir.theta - *dir.varphi2),
        sp * std::sin(*dir.psi) * std::cos(dir.theta),
        sp * std::sin(*dir.psi) * std::sin(dir.theta);
  }
  return MeasurementMatrix{u, u * u.transpose()};
}

double expected_variance(const MeasurementMatrix& p,
                         const CovarianceMatrix& gamma) {
  if (p.u.size() != gamma.dim()) {
    throw std::invalid_argument("expected_variance: dimension mismatch");
  }
  return p.u.dot(gamma.entries() * p.u);
}

MeasurementDirection random_direction(int n_modes, Rng& rng) {
  if (n_modes != 2 && n_modes != 3) {
    throw std::invalid_argument("random_direction: supported for 2 or 3 modes");
  }
  std::uniform_real_distribution<double> half(0.0, kPi);
  std::uniform_real_distribution<double> full(0.0, 2 * kPi);
  MeasurementDirection d;
  d.theta = half(rng);
  d.phi = half(rng);
  d.varphi1 = full(rng);
  if (n_modes == 3) {
    d.psi = half(rng);
    d.varphi2 = full(rng);
  }
  return d;
}

std::vector<MeasurementDirection> tomography_directions(int n_modes) {
  const double h = kPi / 2;
  const double q = kPi / 4;
  std::vector<MeasurementDirection> dirs;
  if (n_modes == 2) {
    // Pure quadratures of each mode, in-mode mixtures, and the four
    // cross-mode combinations: spans the 10 symmetric matrix dimensions.
    const double angles[10][3] = {
        {0, 0, 0}, {h, 0, 0}, {0, h, 0}, {h, h, 0}, {q, 0, 0},
        {q, h, 0}, {0, q, 0}, {h, q, 0}, {0, q, h}, {h, q, h}};
    for (const auto& a : angles) {
      dirs.push_back({a[0], a[1], a[2], std::nullopt, std::nullopt});
    }
    return dirs;
  }
  if (n_modes == 3) {
    const double tq = 3 * kPi / 2;
    // (theta, phi, varphi1, psi, varphi2): three directions per mode block
    // plus four per cross-mode block = 21.
    const double angles[21][5] = {
        // mode 1 alone (phi = 0)
        {0, 0, 0, 0, 0}, {h, 0, 0, 0, 0}, {q, 0, 0, 0, 0},
        // mode 2 alone (phi = pi/2, psi = 0)
        {0, h, 0, 0, 0}, {h, h, 0, 0, 0}, {q, h, 0, 0, 0},
        // mode 3 alone (phi = pi/2, psi = pi/2)
        {0, h, 0, h, 0}, {h, h, 0, h, 0}, {q, h, 0, h, 0},
        // modes 1+2 (phi = pi/4, psi = 0)
        {0, q, 0, 0, 0}, {0, q, tq, 0, 0}, {h, q, h, 0, 0}, {h, q, 0, 0, 0},
        // modes 1+3 (phi = pi/4, psi = pi/2)
        {0, q, 0, h, 0}, {0, q, tq, h, 0}, {h, q, h, h, 0}, {h, q, 0, h, 0},
        // modes 2+3 (phi = pi/2, psi = pi/4)
        {0, h, 0, q, 0}, {0, h, 0, q, tq}, {h, h, 0, q, h}, {h, h, 0, q, 0}};
    for (const auto& a : angles) {
      dirs.push_back({a[0], a[1], a[2], a[3], a[4]});
    }
    return dirs;
  }
  throw std::invalid_argument("tomography_directions: supported for 2 or 3 modes");
}

HomodyneSampleSet simulate_homodyne(const MeasurementMatrix& p,
                                    const CovarianceMatrix& gamma, int n,
                                    Rng& rng, int direction_index) {
  if (n < 2) {
    throw std::invalid_argument("simulate_homodyne: need n >= 2 repetitions");
  }
  const double m = expected_variance(p, gamma);
  std::normal_distribution<double> normal(0.0, std::sqrt(m));
  HomodyneSampleSet s;
  s.direction_index = direction_index;
  s.samples.resize(n);
  for (auto& x : s.samples) x = normal(rng);
  return s;
}

double sample_variance(const HomodyneSampleSet& s) {
  const auto n = s.samples.size();
  if (n < 2) {
    throw std::invalid_argument("sample_variance: need >= 2 samples");
  }
  double mean = 0.0;
  for (double x : s.samples) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : s.samples) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(n - 1);
}

}  // namespace gsteer
