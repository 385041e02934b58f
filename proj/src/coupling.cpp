// Copyright 2026 The magic-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "magic/coupling.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "magic/error.hpp"

namespace magic {

CouplingMatrix::CouplingMatrix(RealMatrix j, std::string provenance)
    : j_(std::move(j)), provenance_(std::move(provenance)) {
  if (j_.rows() != j_.cols()) throw InvalidArgument("coupling matrix must be square");
  if (j_.rows() == 0) throw InvalidArgument("coupling matrix is empty");
  const double scale = std::max(1.0, j_.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < j_.rows(); ++i) {
    if (j_(i, i) != 0.0) throw InvalidArgument("coupling matrix must have a zero diagonal");
    for (Eigen::Index k = i + 1; k < j_.cols(); ++k) {
      if (std::abs(j_(i, k) - j_(k, i)) > 1e-9 * scale) {
        throw InvalidArgument("coupling matrix is not symmetric at (" + std::to_string(i + 1) +
                              "," + std::to_string(k + 1) + ")");
      }
      const double mean = 0.5 * (j_(i, k) + j_(k, i));
      j_(i, k) = j_(k, i) = mean;
    }
  }
}

CouplingMatrix CouplingMatrix::zero(int n, std::string provenance) {
  return CouplingMatrix(RealMatrix::Zero(n, n), std::move(provenance));
}

CouplingMatrix CouplingMatrix::three_spin(double j12, double j13, double j23,
                                          std::string provenance) {
  RealMatrix j = RealMatrix::Zero(3, 3);
  j(0, 1) = j(1, 0) = j12;
  j(0, 2) = j(2, 0) = j13;
  j(1, 2) = j(2, 1) = j23;
  return CouplingMatrix(std::move(j), std::move(provenance));
}

CouplingMatrix CouplingMatrix::scaled(double factor) const {
  return CouplingMatrix(j_ * factor, provenance_);
}

CouplingMatrix read_coupling_matrix(std::istream& in, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string raw;
  int line_no = 0;
  int first_line = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::istringstream line(hash == std::string::npos ? raw : raw.substr(0, hash));
    std::vector<double> row;
    std::string token;
    while (line >> token) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ParseError(source, line_no, "not a number: '" + token + "'");
      }
    }
    if (row.empty()) continue;
    if (rows.empty()) first_line = line_no;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(source, line_no, "row has " + std::to_string(row.size()) +
                                            " entries, expected " +
                                            std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(source, line_no, "no matrix rows found");
  if (rows.size() != rows.front().size()) {
    throw ParseError(source, first_line, "matrix is " + std::to_string(rows.size()) + "x" +
                                             std::to_string(rows.front().size()) +
                                             ", expected square");
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  RealMatrix j(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) j(r, c) = rows[r][c];
  try {
    return CouplingMatrix(std::move(j), "file:" + source);
  } catch (const InvalidArgument& e) {
    throw ParseError(source, first_line, e.what());
  }
}

CouplingMatrix load_coupling_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open coupling matrix " + path.string());
  return read_coupling_matrix(in, path.string());
}

void write_coupling_matrix(std::ostream& out, const CouplingMatrix& j) {
  char buf[32];
  for (int r = 0; r < j.size(); ++r) {
    for (int c = 0; c < j.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", j(r, c));
      out << (c ? " " : "") << buf;
    }
    out << '\n';
  }
}

void save_coupling_matrix(const std::filesystem::path& path, const CouplingMatrix& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write coupling matrix " + path.string());
  out << "# J couplings in rad/s (" << j.provenance() << ")\n";
  write_coupling_matrix(out, j);
}

}  // namespace magic
