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

#include "gsteer/matrix_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gsteer {

void write_cm(const CovarianceMatrix& gamma, std::ostream& out) {
  out << "# modes=" << gamma.modes() << '\n';
  out.precision(17);
  const auto& g = gamma.entries();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      if (j) out << ',';
      out << g(i, j);
    }
    out << '\n';
  }
}

void write_cm_file(const CovarianceMatrix& gamma, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_cm(gamma, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

CovarianceMatrix read_cm(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("matrix file: empty input");
  }
  int modes = 0;
  if (std::sscanf(line.c_str(), "# modes=%d", &modes) != 1 || modes < 1) {
    throw std::runtime_error("matrix file: expected header '# modes=N', got '" +
                             line + "'");
  }
  const int d = 2 * modes;
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("matrix file: expected " + std::to_string(d) +
                               " rows, got " + std::to_string(i));
    }
    std::stringstream row(line);
    std::string cell;
    for (int j = 0; j < d; ++j) {
      if (!std::getline(row, cell, ',')) {
        throw std::runtime_error("matrix file: row " + std::to_string(i) +
                                 " has fewer than " + std::to_string(d) +
                                 " columns");
      }
      try {
        g(i, j) = std::stod(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("matrix file: bad number '" + cell + "'");
      }
    }
    if (std::getline(row, cell, ',')) {
      throw std::runtime_error("matrix file: row " + std::to_string(i) +
                               " has more than " + std::to_string(d) +
                               " columns");
    }
  }
  return CovarianceMatrix(modes, g);
}

CovarianceMatrix read_cm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_cm(in);
}

}  // namespace gsteer
