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

#include "magic/records.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "magic/error.hpp"

namespace magic::records {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const Cell& c) {
  return std::visit([](const auto& v) { return ordered_json(v); }, c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

ordered_json table_object(const Table& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t k = 0; k < row.size(); ++k) obj[t.columns[k]] = to_json(row[k]);
    rows.push_back(std::move(obj));
  }
  ordered_json j;
  j["name"] = t.name;
  j["columns"] = t.columns;
  j["rows"] = std::move(rows);
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("failed while writing " + path.string());
}

}  // namespace

std::string format_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, std::get<double>(c));
  return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw InvalidArgument("table '" + name + "' expects " + std::to_string(columns.size()) + " cells, got " +
                          std::to_string(row.size()));
  }
  rows.push_back(std::move(row));
}

Table& RunRecord::table(const std::string& name) {
  for (auto& t : tables)
    if (t.name == name) return t;
  throw InvalidArgument("record has no table '" + name + "'");
}

const Table* RunRecord::find(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return &t;
  return nullptr;
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) out << (k ? "," : "") << csv_escape(t.columns[k]);
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_escape(format_cell(row[k]));
    out << '\n';
  }
}

std::string table_json(const Table& t) { return table_object(t).dump(2) + "\n"; }

std::string record_json(const RunRecord& r) {
  ordered_json j;
  j["scenario"] = r.scenario;
  j["seed"] = r.seed;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = v;
  j["metadata"] = std::move(meta);
  ordered_json tables = ordered_json::array();
  for (const auto& t : r.tables) tables.push_back(table_object(t));
  j["tables"] = std::move(tables);
  j["event_count"] = r.events.size();
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit_records(const RunRecord& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& t : r.tables) {
    std::ostringstream csv;
    write_csv(csv, t);
    write_file(dir / (t.name + ".csv"), csv.str());
    write_file(dir / (t.name + ".json"), table_json(t));
    written.push_back(dir / (t.name + ".csv"));
    written.push_back(dir / (t.name + ".json"));
  }
  write_file(dir / "record.json", record_json(r));
  written.push_back(dir / "record.json");
  if (!r.events.empty()) {
    std::string log;
    for (const auto& e : r.events) log += e + "\n";
    write_file(dir / "events.log", log);
    written.push_back(dir / "events.log");
  }
  return written;
}

std::filesystem::path output_root() {
  const char* env = std::getenv("MAGIC_FORGE_OUT");
  if (env && *env) return env;
  return "out";
}

}  // namespace magic::records
