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

#ifndef TABANON_PARTITION_HPP_
#define TABANON_PARTITION_HPP_

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "tabanon/dataset.hpp"
#include "tabanon/error.hpp"

namespace tabanon {

/// Partition of the row indices into equivalence classes: maximal sets of
/// rows that agree on every quasi-identifier column of the key.
///
/// Classes are ordered by the index of their first row; rows inside a
/// class are ascending.
struct EquivalenceClassPartition {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::string> qi_names;

  std::size_t min_class_size() const {
    std::size_t m = classes.empty() ? 0 : classes.front().size();
    for (const auto& c : classes) {
      if (c.size() < m) m = c.size();
    }
    return m;
  }
};

/// Groups rows by exact equality on the qi tuple, in the caller's qi order.
inline EquivalenceClassPartition partition(const Dataset& ds,
                                           const std::vector<std::string>& qi) {
  std::vector<const std::vector<std::string>*> key_cols;
  key_cols.reserve(qi.size());
  for (const std::string& name : qi) {
    const Column& col = ds.column(name);  // throws if absent
    if (col.role != ColumnRole::kQuasiIdentifier) {
      throw InputError("column '" + name + "' is not a quasi-identifier");
    }
    key_cols.push_back(&col.cells);
  }
  EquivalenceClassPartition part;
  part.qi_names = qi;
  // Length-prefixed key encoding: collision-free for arbitrary cell text.
  std::unordered_map<std::string, std::size_t> class_of;
  std::string key;
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    key.clear();
    for (const auto* col : key_cols) {
      const std::string& cell = (*col)[r];
      key += std::to_string(cell.size());
      key += ':';
      key += cell;
    }
    auto [it, inserted] = class_of.emplace(key, part.classes.size());
    if (inserted) {
      part.classes.emplace_back();
    }
    part.classes[it->second].push_back(r);
  }
  return part;
}

}  // namespace tabanon

#endif  // TABANON_PARTITION_HPP_
