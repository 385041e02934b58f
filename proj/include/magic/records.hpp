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

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace magic::records {

using Cell = std::variant<std::string, double, long long, bool>;

/// Shortest text that round-trips the cell (doubles via std::to_chars).
std::string format_cell(const Cell& c);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  Table() = default;
  Table(std::string n, std::vector<std::string> cols) : name(std::move(n)), columns(std::move(cols)) {}
  /// Throws InvalidArgument when the row width differs from the header.
  void add_row(std::vector<Cell> row);
};

struct RunRecord {
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> metadata;  // insertion order kept
  std::vector<Table> tables;
  std::vector<std::string> events;

  Table& table(const std::string& name);
  const Table* find(const std::string& name) const;
};

void write_csv(std::ostream& out, const Table& t);
/// {"name": ..., "columns": [...], "rows": [{column: value, ...}, ...]}
std::string table_json(const Table& t);
std::string record_json(const RunRecord& r);

/// Writes <dir>/<table>.csv and <dir>/<table>.json for each table, <dir>/record.json, and
/// <dir>/events.log when events exist. Returns the files written.
std::vector<std::filesystem::path> emit_records(const RunRecord& r, const std::filesystem::path& dir);

/// $MAGIC_FORGE_OUT, or ./out when unset.
std::filesystem::path output_root();

}  // namespace magic::records
