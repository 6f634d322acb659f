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

#ifndef TABANON_HIERARCHY_HPP_
#define TABANON_HIERARCHY_HPP_

#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tabanon/csv.hpp"
#include "tabanon/dataset.hpp"
#include "tabanon/distribution.hpp"
#include "tabanon/error.hpp"

namespace tabanon {

/// Hierarchy level applied per quasi-identifier, in QI declaration order.
using TransformationVector = std::vector<int>;

/// Chain of generalization levels for one quasi-identifier. Level 0 is the
/// raw value domain; level i maps every raw value to its i-times
/// generalized form. Two raw values equal at some level stay equal at
/// every higher level (validated on construction).
class Hierarchy {
 public:
  /// `rows`: one entry per raw value, [raw, level-1 value, ..., level-n
  /// value]. Exact duplicate rows are collapsed; rows must share one arity.
  Hierarchy(std::string qi_name, const std::vector<std::vector<std::string>>& rows)
      : qi_name_(std::move(qi_name)) {
    if (rows.empty()) {
      throw InputError("hierarchy for '" + qi_name_ + "' has no rows");
    }
    const std::size_t arity = rows.front().size();
    if (arity == 0) {
      throw InputError("hierarchy for '" + qi_name_ + "' has an empty row");
    }
    levels_.assign(arity, {});
    for (const auto& row : rows) {
      if (row.size() != arity) {
        throw InputError("hierarchy for '" + qi_name_ +
                         "': ragged row starting with '" +
                         (row.empty() ? std::string() : row[0]) + "'");
      }
      auto it = index_.find(row[0]);
      if (it != index_.end()) {
        // duplicates are legal only when identical across all columns
        for (std::size_t l = 0; l < arity; ++l) {
          if (levels_[l][it->second] != row[l]) {
            throw InputError("hierarchy for '" + qi_name_ +
                             "': conflicting rows for raw value '" + row[0] + "'");
          }
        }
        continue;
      }
      index_.emplace(row[0], levels_[0].size());
      for (std::size_t l = 0; l < arity; ++l) {
        levels_[l].push_back(row[l]);
      }
    }
    // composition: equal at level l implies equal at level l+1
    for (std::size_t l = 0; l + 1 < arity; ++l) {
      std::unordered_map<std::string, std::string> next;
      for (std::size_t i = 0; i < levels_[l].size(); ++i) {
        auto [it, inserted] = next.emplace(levels_[l][i], levels_[l + 1][i]);
        if (!inserted && it->second != levels_[l + 1][i]) {
          throw InputError("hierarchy for '" + qi_name_ + "': value '" +
                           levels_[l][i] + "' at level " + std::to_string(l) +
                           " maps to both '" + it->second + "' and '" +
                           levels_[l + 1][i] + "' at level " + std::to_string(l + 1));
        }
      }
    }
  }

  const std::string& qi_name() const { return qi_name_; }
  int max_level() const { return static_cast<int>(levels_.size()) - 1; }

  const std::vector<std::string>& raw_domain() const { return levels_[0]; }

  /// Values at `level`, aligned with raw_domain().
  const std::vector<std::string>& values_at_level(int level) const {
    check_level(level);
    return levels_[static_cast<std::size_t>(level)];
  }

  bool contains_raw(const std::string& raw) const {
    return index_.find(raw) != index_.end();
  }

  const std::string& value_at(const std::string& raw, int level) const {
    check_level(level);
    auto it = index_.find(raw);
    if (it == index_.end()) {
      throw InputError("hierarchy for '" + qi_name_ +
                       "': value '" + raw + "' not in the raw domain");
    }
    return levels_[static_cast<std::size_t>(level)][it->second];
  }

  /// Distinct values of a level, in raw-domain order.
  std::vector<std::string> level_image(int level) const {
    check_level(level);
    std::vector<std::string> image;
    std::unordered_set<std::string> seen;
    for (const std::string& v : levels_[static_cast<std::size_t>(level)]) {
      if (seen.insert(v).second) image.push_back(v);
    }
    return image;
  }

  /// Map from level-`from` values to level-`to` values, `from` <= `to`.
  /// Well defined because of the composition property.
  std::unordered_map<std::string, std::string> level_map(int from, int to) const {
    check_level(from);
    check_level(to);
    if (from > to) {
      throw InputError("hierarchy for '" + qi_name_ + "': cannot map level " +
                       std::to_string(from) + " down to " + std::to_string(to));
    }
    std::unordered_map<std::string, std::string> map;
    const auto& src = levels_[static_cast<std::size_t>(from)];
    const auto& dst = levels_[static_cast<std::size_t>(to)];
    for (std::size_t i = 0; i < src.size(); ++i) map.emplace(src[i], dst[i]);
    return map;
  }

 private:
  void check_level(int level) const {
    if (level < 0 || level > max_level()) {
      throw InputError("hierarchy for '" + qi_name_ + "': level " +
                       std::to_string(level) + " out of range (max " +
                       std::to_string(max_level()) + ")");
    }
  }

  std::string qi_name_;
  std::vector<std::vector<std::string>> levels_;  // levels_[l][i], l=0 raw
  std::unordered_map<std::string, std::size_t> index_;
};

/// Quasi-identifiers absent from the map are never generalized (their only
/// level is 0).
using HierarchySet = std::map<std::string, Hierarchy>;

/// Loads a headerless CSV where each row is a raw value followed by its
/// generalizations at levels 1..n; column count fixes max_level.
inline Hierarchy load_hierarchy_csv(const std::string& path,
                                    const std::string& qi_name) {
  auto records = csv::read_records_file(path);
  for (auto& row : records) {
    for (auto& cell : row) cell = strip(cell);
  }
  try {
    return Hierarchy(qi_name, records);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

namespace detail {

inline std::string format_bound(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Label of the half-open bucket containing v on the grid
/// lower, lower+step, lower+2*step, ...
inline std::string interval_label(double v, double lower, double upper,
                                  double step) {
  if (step <= 0) {
    throw InputError("interval step must be positive");
  }
  if (lower >= upper) {
    throw InputError("interval bounds require lower < upper");
  }
  if (v < lower || v >= upper) {
    throw InputError("value " + detail::format_bound(v) +
                     " outside the interval range [" +
                     detail::format_bound(lower) + ", " +
                     detail::format_bound(upper) + ")");
  }
  double a = lower + step * std::floor((v - lower) / step);
  double b = a + step;
  return "[" + detail::format_bound(a) + ", " + detail::format_bound(b) + ")";
}

/// Replaces each numeric cell with its "[a, b)" bucket label.
inline std::vector<std::string> generate_intervals(
    const std::vector<std::string>& values, double lower, double upper,
    double step) {
  std::vector<std::string> labels;
  labels.reserve(values.size());
  for (const std::string& cell : values) {
    auto v = parse_number(cell);
    if (!v) {
      throw InputError("cannot generate an interval for non-numeric value '" +
                       cell + "'");
    }
    labels.push_back(interval_label(*v, lower, upper, step));
  }
  return labels;
}

/// Constant "*" sequence of the same length; the usual final hierarchy level.
inline std::vector<std::string> suppression_level(
    const std::vector<std::string>& values) {
  return std::vector<std::string>(values.size(), "*");
}

/// Interval hierarchy over the distinct values of `values`: level k uses
/// steps[k-1]. Convenience for interval generalizations declared inline.
inline Hierarchy interval_hierarchy(const std::string& qi_name,
                                    const std::vector<std::string>& values,
                                    double lower, double upper,
                                    const std::vector<double>& steps) {
  std::vector<std::string> domain;
  std::unordered_set<std::string> seen;
  for (const std::string& v : values) {
    if (seen.insert(v).second) domain.push_back(v);
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(domain.size());
  for (const std::string& v : domain) {
    std::vector<std::string> row{v};
    auto num = parse_number(v);
    if (!num) {
      throw InputError("cannot build an interval hierarchy for '" + qi_name +
                       "': non-numeric value '" + v + "'");
    }
    for (double step : steps) {
      row.push_back(interval_label(*num, lower, upper, step));
    }
    rows.push_back(std::move(row));
  }
  return Hierarchy(qi_name, rows);
}

/// Single-level hierarchy that suppresses every distinct value to "*".
inline Hierarchy suppress_only_hierarchy(const std::string& qi_name,
                                         const std::vector<std::string>& values) {
  std::vector<std::vector<std::string>> rows;
  std::unordered_set<std::string> seen;
  for (const std::string& v : values) {
    if (seen.insert(v).second) rows.push_back({v, "*"});
  }
  return Hierarchy(qi_name, rows);
}

/// Rewrites QI column i by its level-t[i] mapping; other columns untouched.
inline Dataset apply_transformation(const Dataset& ds, const HierarchySet& hs,
                                    const TransformationVector& t,
                                    const std::vector<std::string>& qi) {
  if (t.size() != qi.size()) {
    throw InputError("transformation has " + std::to_string(t.size()) +
                     " levels for " + std::to_string(qi.size()) +
                     " quasi-identifiers");
  }
  Dataset out = ds;
  for (std::size_t i = 0; i < qi.size(); ++i) {
    if (t[i] < 0) {
      throw InputError("negative hierarchy level for '" + qi[i] + "'");
    }
    if (t[i] == 0) continue;
    auto it = hs.find(qi[i]);
    if (it == hs.end()) {
      throw InputError("quasi-identifier '" + qi[i] +
                       "' has no hierarchy but level " + std::to_string(t[i]) +
                       " was requested");
    }
    const Hierarchy& h = it->second;
    if (t[i] > h.max_level()) {
      throw InputError("level " + std::to_string(t[i]) + " exceeds max level " +
                       std::to_string(h.max_level()) + " for '" + qi[i] + "'");
    }
    const Column& col = ds.column(qi[i]);
    std::vector<std::string> cells;
    cells.reserve(col.cells.size());
    for (const std::string& v : col.cells) {
      cells.push_back(h.value_at(v, t[i]));  // throws naming column and value
    }
    out = out.with_column_values(qi[i], std::move(cells));
  }
  return out;
}

/// Infers, per QI, the smallest level whose image contains every observed
/// value; 0 for quasi-identifiers without a hierarchy.
inline TransformationVector get_transformation(const Dataset& anon,
                                               const HierarchySet& hs,
                                               const std::vector<std::string>& qi) {
  TransformationVector t;
  t.reserve(qi.size());
  for (const std::string& name : qi) {
    auto it = hs.find(name);
    if (it == hs.end()) {
      t.push_back(0);
      continue;
    }
    const Hierarchy& h = it->second;
    std::unordered_set<std::string> observed;
    for (const std::string& v : anon.column(name).cells) observed.insert(v);
    int found = -1;
    for (int level = 0; level <= h.max_level() && found < 0; ++level) {
      const auto& values = h.values_at_level(level);
      std::unordered_set<std::string> image(values.begin(), values.end());
      bool all = true;
      for (const std::string& v : observed) {
        if (image.find(v) == image.end()) {
          all = false;
          break;
        }
      }
      if (all) found = level;
    }
    if (found < 0) {
      // name one offending value: prefer one outside every level
      for (const std::string& v : observed) {
        bool anywhere = false;
        for (int level = 0; level <= h.max_level() && !anywhere; ++level) {
          const auto& values = h.values_at_level(level);
          for (const std::string& lv : values) {
            if (lv == v) {
              anywhere = true;
              break;
            }
          }
        }
        if (!anywhere) {
          throw InputError("value '" + v + "' of column '" + name +
                           "' does not appear in any hierarchy level");
        }
      }
      throw InputError("values of column '" + name +
                       "' do not all belong to a single hierarchy level");
    }
    t.push_back(found);
  }
  return t;
}

}  // namespace tabanon

#endif  // TABANON_HIERARCHY_HPP_
