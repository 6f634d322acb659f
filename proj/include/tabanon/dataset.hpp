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

#ifndef TABANON_DATASET_HPP_
#define TABANON_DATASET_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tabanon/error.hpp"

namespace tabanon {

/// Role of a column with respect to re-identification risk.
enum class ColumnRole {
  kIdentifier,       // alone re-identifies a person; always masked
  kQuasiIdentifier,  // re-identifies in combination; generalized
  kSensitive,        // must not be inferable for an individual
  kInsensitive,      // no treatment required
};

inline const char* to_string(ColumnRole role) {
  switch (role) {
    case ColumnRole::kIdentifier: return "identifier";
    case ColumnRole::kQuasiIdentifier: return "quasi_identifier";
    case ColumnRole::kSensitive: return "sensitive";
    case ColumnRole::kInsensitive: return "insensitive";
  }
  return "insensitive";
}

struct Column {
  std::string name;
  ColumnRole role = ColumnRole::kInsensitive;
  std::vector<std::string> cells;
};

/// Immutable table of text cells with per-column role metadata.
///
/// All cells are plain text; values are compared as exact text. Rows keep
/// the order they were constructed with, and every accessor is const, so a
/// Dataset can be shared freely across threads.
class Dataset {
 public:
  Dataset() = default;

  explicit Dataset(std::vector<Column> columns)
      : columns_(std::move(columns)) {
    row_count_ = columns_.empty() ? 0 : columns_.front().cells.size();
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      const Column& col = columns_[i];
      if (col.name.empty()) {
        throw InputError("column " + std::to_string(i) + " has an empty name");
      }
      if (col.cells.size() != row_count_) {
        throw InputError("column '" + col.name + "' has " +
                         std::to_string(col.cells.size()) + " cells, expected " +
                         std::to_string(row_count_));
      }
      if (!index_.emplace(col.name, i).second) {
        throw InputError("duplicate column name '" + col.name + "'");
      }
    }
  }

  std::size_t row_count() const { return row_count_; }
  std::size_t column_count() const { return columns_.size(); }

  bool has_column(std::string_view name) const {
    return index_.find(std::string(name)) != index_.end();
  }

  std::size_t column_index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
      throw InputError("unknown column '" + std::string(name) + "'");
    }
    return it->second;
  }

  const Column& column(std::size_t i) const { return columns_.at(i); }
  const Column& column(std::string_view name) const {
    return columns_[column_index(name)];
  }

  const std::string& cell(std::size_t row, std::size_t col) const {
    return columns_.at(col).cells.at(row);
  }

  std::vector<std::string> column_names() const {
    std::vector<std::string> names;
    names.reserve(columns_.size());
    for (const Column& c : columns_) names.push_back(c.name);
    return names;
  }

  std::vector<std::string> columns_with_role(ColumnRole role) const {
    std::vector<std::string> names;
    for (const Column& c : columns_) {
      if (c.role == role) names.push_back(c.name);
    }
    return names;
  }

  /// Copy with the listed columns reassigned to the given roles. Columns
  /// not mentioned keep their current role.
  Dataset with_roles(const std::map<std::string, ColumnRole>& roles) const {
    std::vector<Column> cols = columns_;
    for (const auto& [name, role] : roles) {
      cols[column_index(name)].role = role;
    }
    return Dataset(std::move(cols));
  }

  /// Copy with one column's cells replaced (same length required).
  Dataset with_column_values(std::string_view name,
                             std::vector<std::string> cells) const {
    std::vector<Column> cols = columns_;
    Column& col = cols[column_index(name)];
    if (cells.size() != row_count_) {
      throw InputError("replacement for column '" + std::string(name) +
                       "' has wrong length");
    }
    col.cells = std::move(cells);
    return Dataset(std::move(cols));
  }

  /// Copy keeping only the given rows, in ascending index order, so the
  /// survivors preserve their relative order.
  Dataset select_rows(const std::vector<std::size_t>& keep) const {
    std::vector<Column> cols;
    cols.reserve(columns_.size());
    for (const Column& c : columns_) {
      Column out{c.name, c.role, {}};
      out.cells.reserve(keep.size());
      for (std::size_t r : keep) out.cells.push_back(c.cells.at(r));
      cols.push_back(std::move(out));
    }
    return Dataset(std::move(cols));
  }

  bool same_cells(const Dataset& other) const {
    if (row_count_ != other.row_count_ || columns_.size() != other.columns_.size()) {
      return false;
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (columns_[i].name != other.columns_[i].name ||
          columns_[i].cells != other.columns_[i].cells) {
        return false;
      }
    }
    return true;
  }

 private:
  std::vector<Column> columns_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t row_count_ = 0;
};

/// Replaces every cell of every identifier column with "*".
inline Dataset suppress_identifiers(const Dataset& ds) {
  Dataset out = ds;
  for (const std::string& name : ds.columns_with_role(ColumnRole::kIdentifier)) {
    out = out.with_column_values(
        name, std::vector<std::string>(ds.row_count(), "*"));
  }
  return out;
}

}  // namespace tabanon

#endif  // TABANON_DATASET_HPP_
