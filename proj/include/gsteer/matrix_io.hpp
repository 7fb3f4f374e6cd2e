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

#ifndef GSTEER_MATRIX_IO_HPP
#define GSTEER_MATRIX_IO_HPP

#include <iosfwd>
#include <string>

#include "gsteer/gaussian.hpp"

namespace gsteer {

// Matrix files are plain-text CSV, row-major, one matrix row per line,
// preceded by the header line `# modes=N`.

void write_cm(const CovarianceMatrix& gamma, std::ostream& out);
void write_cm_file(const CovarianceMatrix& gamma, const std::string& path);

CovarianceMatrix read_cm(std::istream& in);
CovarianceMatrix read_cm_file(const std::string& path);

}  // namespace gsteer

#endif  // GSTEER_MATRIX_IO_HPP
