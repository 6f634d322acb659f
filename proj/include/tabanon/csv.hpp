// Copyright 2026 The tabanon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TABANON_CSV_HPP_
#define TABANON_CSV_HPP_

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tabanon/dataset.hpp"
#include "tabanon/error.hpp"

namespace tabanon {

inline std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

namespace csv {

/// Parses a whole CSV stream into records. Quoted fields may contain
/// commas, doubled quotes and line breaks; CRLF line endings are accepted.
/// A trailing final newline does not produce an extra record.
inline std::vector<std::vector<std::string>> read_records(std::istream& in,
                                                          const std::string& origin) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // true once the current record has content
  int c;
  while ((c = in.get()) != std::char_traits<char>::eof()) {
    char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(field);
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (field_started || !field.empty()) {
          record.push_back(field);
          records.push_back(record);
        } else if (!record.empty()) {
          records.push_back(record);
        } else {
          // blank line: a record holding a single empty field
          records.push_back({std::string()});
        }
        record.clear();
        field.clear();
        field_started = false;
        break;
      default:
        field.push_back(ch);
        field_started = true;
        break;
    }
  }
  if (in_quotes) {
    throw InputError(origin + ": unterminated quoted field");
  }
  if (field_started || !field.empty() || !record.empty()) {
    record.push_back(field);
    records.push_back(record);
  }
  return records;
}

inline std::vector<std::vector<std::string>> read_records_file(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open file '" + path + "'");
  }
  return read_records(in, path);
}

inline bool needs_quoting(std::string_view value) {
  return value.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline void write_field(std::ostream& out, std::string_view value) {
  if (!needs_quoting(value)) {
    out << value;
    return;
  }
  out << '"';
  for (char ch : value) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

inline void write_record(std::ostream& out,
                         const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    write_field(out, fields[i]);
  }
  out << '\n';
}

}  // namespace csv

/// Loads a CSV file with a header row into a Dataset. Header names and
/// cell values are whitespace-stripped. Columns not named in `roles`
/// default to insensitive.
inline Dataset load_csv(const std::string& path,
                        const std::map<std::string, ColumnRole>& roles) {
  auto records = csv::read_records_file(path);
  if (records.empty()) {
    throw InputError(path + ": missing header row");
  }
  std::vector<std::string> header;
  header.reserve(records[0].size());
  for (const std::string& h : records[0]) header.push_back(strip(h));
  std::set<std::string> seen;
  for (const std::string& h : header) {
    if (!seen.insert(h).second) {
      throw InputError(path + ": duplicate header name '" + h + "'");
    }
  }
  for (const auto& [name, role] : roles) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw InputError(path + ": role given for absent column '" + name + "'");
    }
  }
  std::vector<Column> columns;
  columns.reserve(header.size());
  for (const std::string& name : header) {
    auto it = roles.find(name);
    ColumnRole role = it == roles.end() ? ColumnRole::kInsensitive : it->second;
    Column col{name, role, {}};
    col.cells.reserve(records.size() - 1);
    columns.push_back(std::move(col));
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size()) {
      throw InputError(path + ": row " + std::to_string(r) + " has " +
                       std::to_string(records[r].size()) + " fields, expected " +
                       std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      columns[c].cells.push_back(strip(records[r][c]));
    }
  }
  return Dataset(std::move(columns));
}

/// Writes header + rows, comma separated, quoting only cells that contain
/// a comma, quote or line break.
inline void write_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot open '" + path + "' for writing");
  }
  csv::write_record(out, ds.column_names());
  std::vector<std::string> row(ds.column_count());
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    for (std::size_t c = 0; c < ds.column_count(); ++c) {
      row[c] = ds.cell(r, c);
    }
    csv::write_record(out, row);
  }
  if (!out) {
    throw InputError("write to '" + path + "' failed");
  }
}

}  // namespace tabanon

#endif  // TABANON_CSV_HPP_
