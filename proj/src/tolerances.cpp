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

#include "gsteer/tolerances.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

namespace gsteer {

Tolerances Tolerances::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tolerance file: " + path);

  Tolerances t;
  const std::map<std::string, double*> keys = {
      {"psd_floor", &t.psd_floor},
      {"strict_min", &t.strict_min},
      {"symplectic_pair", &t.symplectic_pair},
      {"symplectic_residual", &t.symplectic_residual},
      {"symmetry", &t.symmetry},
      {"detect_eps", &t.detect_eps},
      {"solver_gap", &t.solver_gap},
      {"solver_stall_gap", &t.solver_stall_gap},
      {"witness_psd_slack", &t.witness_psd_slack},
      {"witness_str_slack", &t.witness_str_slack},
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown tolerance '" + key + "'");
    }
    *it->second = std::stod(value);
  }
  return t;
}

}  // namespace gsteer
