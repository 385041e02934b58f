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

#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

#include "magic/types.hpp"

namespace magic {

/// Symmetric matrix of pairwise Ising couplings J_ij in rad/s, zero diagonal.
class CouplingMatrix {
 public:
  CouplingMatrix() = default;
  /// Throws InvalidArgument unless `j` is square, symmetric (1e-9 relative) and has a zero diagonal.
  explicit CouplingMatrix(RealMatrix j, std::string provenance = "user-supplied");

  static CouplingMatrix zero(int n, std::string provenance = "zero");
  /// Three-spin matrix from the pair values J12, J13, J23 (rad/s).
  static CouplingMatrix three_spin(double j12, double j13, double j23,
                                   std::string provenance = "user-supplied");

  int size() const { return static_cast<int>(j_.rows()); }
  double operator()(int i, int j) const { return j_(i, j); }
  const RealMatrix& matrix() const { return j_; }
  const std::string& provenance() const { return provenance_; }

  CouplingMatrix scaled(double factor) const;

 private:
  RealMatrix j_;
  std::string provenance_;
};

/// Row-per-line, whitespace-separated matrix in rad/s. `#` starts a comment.
CouplingMatrix read_coupling_matrix(std::istream& in, const std::string& source = "<input>");
CouplingMatrix load_coupling_matrix(const std::filesystem::path& path);
void write_coupling_matrix(std::ostream& out, const CouplingMatrix& j);
void save_coupling_matrix(const std::filesystem::path& path, const CouplingMatrix& j);

}  // namespace magic
