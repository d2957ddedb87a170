// Copyright 2026 The acoroute Authors
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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "acoroute/errors.hpp"

namespace acoroute {
namespace csv {

inline std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Header names are matched ignoring case, spaces, underscores and other
// punctuation, so "Daily Capacity", "daily_capacity" and "DailyCapacity"
// all land on the same column.
inline std::string canon_header(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) out.push_back(static_cast<char>(std::tolower(u)));
  }
  return out;
}

// Splits one CSV record. Quotes per RFC 4180: field may be wrapped in
// double quotes, "" inside quotes is a literal quote. No embedded newlines
// (none of the seven tables needs them).
inline std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c == '\r') {
      // tolerate CRLF
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

inline std::string quote_field(const std::string& f) {
  if (f.find_first_of(",\"\n\r") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

struct Table {
  std::string name;                        // table name for error messages
  std::vector<std::string> headers;        // as read, trimmed
  std::vector<std::vector<std::string>> rows;

  // column index by canonical header name, -1 if absent
  int find(std::string_view header) const {
    std::string want = canon_header(header);
    for (size_t i = 0; i < headers.size(); ++i)
      if (canon_header(headers[i]) == want) return static_cast<int>(i);
    return -1;
  }

  int require(std::string_view header) const {
    int idx = find(header);
    if (idx < 0)
      throw SchemaError(name + ": required column '" + std::string(header) +
                        "' not found");
    return idx;
  }

  const std::string& cell(size_t row, int col) const {
    return rows[row][static_cast<size_t>(col)];
  }
};

inline Table read_table(const std::string& path, const std::string& name) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Table t;
  t.name = name;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF)
      line.erase(0, 3);  // strip UTF-8 BOM
    std::vector<std::string> rec = split_record(line);
    if (first) {
      for (auto& h : rec) t.headers.push_back(trim(h));
      first = false;
      continue;
    }
    bool all_empty = true;
    for (auto& f : rec)
      if (!trim(f).empty()) { all_empty = false; break; }
    if (all_empty) continue;
    while (rec.size() < t.headers.size()) rec.emplace_back();
    if (rec.size() > t.headers.size())
      throw SchemaError(name + ": row with " + std::to_string(rec.size()) +
                        " fields, header has " +
                        std::to_string(t.headers.size()));
    t.rows.push_back(std::move(rec));
  }
  if (first) throw SchemaError(name + ": empty file (no header row)");
  return t;
}

inline void write_table(const std::string& path,
                        const std::vector<std::string>& headers,
                        const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (size_t i = 0; i < headers.size(); ++i) {
    if (i) out << ',';
    out << quote_field(headers[i]);
  }
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << quote_field(row[i]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

inline double parse_double(const std::string& raw, const std::string& where) {
  std::string s = trim(raw);
  if (s.empty()) throw SchemaError(where + ": empty numeric field");
  // The published tables write money with thousands separators; strip them.
  std::string clean;
  clean.reserve(s.size());
  for (char c : s)
    if (c != ',' && c != '$' && c != ' ') clean.push_back(c);
  double v = 0;
  auto [p, ec] = std::from_chars(clean.data(), clean.data() + clean.size(), v);
  if (ec != std::errc() || p != clean.data() + clean.size())
    throw SchemaError(where + ": not a number: '" + s + "'");
  return v;
}

inline long long parse_int(const std::string& raw, const std::string& where) {
  double v = parse_double(raw, where);
  long long i = static_cast<long long>(v);
  if (static_cast<double>(i) != v)
    throw SchemaError(where + ": not an integer: '" + trim(raw) + "'");
  return i;
}

// Full-width parse for 64-bit seeds, which exceed double precision.
inline std::uint64_t parse_uint64(const std::string& raw,
                                  const std::string& where) {
  std::string s = trim(raw);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw SchemaError(where + ": not an unsigned integer: '" + s + "'");
  return v;
}

// key=value file, one pair per line, '#' comments, used for both column
// mappings and experiment configs.
inline std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = val;
  }
  return kv;
}

}  // namespace csv
}  // namespace acoroute
