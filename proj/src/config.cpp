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

#include "magic/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "magic/error.hpp"
#include "magic/types.hpp"

namespace magic {
namespace {

std::string trim(const std::string& s) {
  auto begin = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  auto end = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return begin < end ? std::string(begin, end) : std::string();
}

double parse_number(const std::string& text) {
  if (text.empty()) throw InvalidArgument("empty number");
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + text + "'");
  }
  if (used != text.size()) throw InvalidArgument("not a number: '" + text + "'");
  return value;
}

double parse_factor(std::string factor) {
  factor = trim(factor);
  double scale = 1.0;
  if (factor.size() >= 2 && factor.compare(factor.size() - 2, 2, "pi") == 0) {
    scale = kPi;
    factor.erase(factor.size() - 2);
    if (factor.empty() || factor == "+") return scale;
    if (factor == "-") return -scale;
  }
  const auto slash = factor.find('/');
  if (slash != std::string::npos) {
    const double num = parse_number(trim(factor.substr(0, slash)));
    const double den = parse_number(trim(factor.substr(slash + 1)));
    if (den == 0.0) throw InvalidArgument("division by zero in '" + factor + "'");
    return scale * num / den;
  }
  return scale * parse_number(factor);
}

}  // namespace

double parse_scalar(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw InvalidArgument("empty scalar");
  double value = 1.0;
  std::size_t start = 0;
  while (true) {
    const auto star = t.find('*', start);
    value *= parse_factor(t.substr(start, star == std::string::npos ? std::string::npos : star - start));
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return value;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
  KeyValueConfig config;
  config.source_ = source;
  std::string section;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source, line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ParseError(source, line_no, "empty section name");
      config.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(source, line_no, "missing key");
    auto& entries = config.sections_[section];
    if (entries.count(key) != 0) throw ParseError(source, line_no, "duplicate key '" + key + "'");
    entries[key] = Entry{trim(line.substr(eq + 1)), line_no};
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open configuration file " + path.string());
  return parse(in, path.string());
}

const KeyValueConfig::Entry* KeyValueConfig::find(const std::string& section,
                                                  const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto e = s->second.find(key);
  return e == s->second.end() ? nullptr : &e->second;
}

bool KeyValueConfig::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

bool KeyValueConfig::has_section(const std::string& section) const {
  return sections_.count(section) != 0;
}

int KeyValueConfig::line_of(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  return e ? e->line : 0;
}

std::optional<std::string> KeyValueConfig::get(const std::string& section,
                                               const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) return std::nullopt;
  return e->value;
}

std::string KeyValueConfig::get_string(const std::string& section, const std::string& key,
                                       const std::string& fallback) const {
  return get(section, key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& section, const std::string& key,
                                  double fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  try {
    return parse_scalar(e->value);
  } catch (const InvalidArgument& ex) {
    throw ParseError(source_, e->line, "[" + section + "] " + key + ": " + ex.what());
  }
}

long KeyValueConfig::get_int(const std::string& section, const std::string& key,
                             long fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  long value = 0;
  const char* first = e->value.data();
  const char* last = first + e->value.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(source_, e->line, "[" + section + "] " + key + ": expected an integer");
  }
  return value;
}

bool KeyValueConfig::get_bool(const std::string& section, const std::string& key,
                              bool fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::string v = e->value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ParseError(source_, e->line, "[" + section + "] " + key + ": expected a boolean");
}

std::vector<double> KeyValueConfig::get_list(const std::string& section, const std::string& key,
                                             const std::vector<double>& fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::vector<double> out;
  std::stringstream ss(e->value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_scalar(item));
    } catch (const InvalidArgument& ex) {
      throw ParseError(source_, e->line, "[" + section + "] " + key + ": " + ex.what());
    }
  }
  return out;
}

}  // namespace magic
