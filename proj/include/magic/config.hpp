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
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace magic {

/// Parses a scalar such as `0.25`, `3/16pi`, `2pi*130e3` or `-0.5pi`.
/// Factors separated by `*` are multiplied; a trailing `pi` multiplies by pi.
double parse_scalar(const std::string& text);

/// Sectioned `key = value` text configuration.
///
/// ```
/// # comment
/// [trap]
/// ion_count = 3
/// axial_frequency = 2pi*130e3
/// ```
/// Keys outside any section live in the section named "". Every lookup error
/// reports the line of the offending entry.
class KeyValueConfig {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static KeyValueConfig parse(std::istream& in, const std::string& source = "<input>");
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const;

  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  long get_int(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key,
                               const std::vector<double>& fallback) const;

  const std::string& source() const { return source_; }
  int line_of(const std::string& section, const std::string& key) const;

 private:
  const Entry* find(const std::string& section, const std::string& key) const;

  std::string source_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
};

}  // namespace magic
