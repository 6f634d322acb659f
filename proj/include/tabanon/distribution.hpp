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

#ifndef TABANON_DISTRIBUTION_HPP_
#define TABANON_DISTRIBUTION_HPP_

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tabanon/dataset.hpp"
#include "tabanon/error.hpp"

namespace tabanon {

/// Full-string numeric parse; locale independent.
inline std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

/// Relative frequencies of the values observed in a selection of rows.
/// Only observed values appear, so every probability is positive and they
/// sum to 1. When every value parses as a number, `numeric_order` holds
/// the entry indices sorted by numeric value (ties by text).
struct Distribution {
  std::vector<std::string> values;  // first-occurrence order
  std::vector<double> probs;
  std::optional<std::vector<std::size_t>> numeric_order;

  std::size_t size() const { return values.size(); }

  double prob_of(std::string_view value) const {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == value) return probs[i];
    }
    return 0.0;
  }
};

namespace detail {

inline Distribution distribution_of_counts(
    const std::vector<std::string>& values, const std::vector<std::size_t>& counts,
    std::size_t total) {
  Distribution dist;
  dist.values = values;
  dist.probs.reserve(values.size());
  for (std::size_t c : counts) {
    dist.probs.push_back(static_cast<double>(c) / static_cast<double>(total));
  }
  std::vector<double> parsed(values.size());
  bool numeric = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto v = parse_number(values[i]);
    if (!v) {
      numeric = false;
      break;
    }
    parsed[i] = *v;
  }
  if (numeric && !values.empty()) {
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (parsed[a] != parsed[b]) return parsed[a] < parsed[b];
      return values[a] < values[b];
    });
    dist.numeric_order = std::move(order);
  }
  return dist;
}

}  // namespace detail

/// Distribution of a sensitive column over the given rows (all rows when
/// `rows` is null).
inline Distribution sa_distribution(const Dataset& ds, const std::string& sa,
                                    const std::vector<std::size_t>* rows = nullptr) {
  const Column& col = ds.column(sa);
  if (col.role != ColumnRole::kSensitive) {
    throw InputError("column '" + sa + "' is not a sensitive attribute");
  }
  if (rows != nullptr && rows->empty()) {
    throw InputError("empty row selection for distribution of '" + sa + "'");
  }
  std::vector<std::string> values;
  std::vector<std::size_t> counts;
  std::unordered_map<std::string, std::size_t> index;
  auto add = [&](const std::string& v) {
    auto [it, inserted] = index.emplace(v, values.size());
    if (inserted) {
      values.push_back(v);
      counts.push_back(0);
    }
    ++counts[it->second];
  };
  std::size_t total = 0;
  if (rows == nullptr) {
    if (ds.row_count() == 0) {
      throw InputError("distribution of '" + sa + "' over an empty dataset");
    }
    for (const std::string& v : col.cells) add(v);
    total = ds.row_count();
  } else {
    for (std::size_t r : *rows) {
      if (r >= ds.row_count()) {
        throw InputError("row index " + std::to_string(r) + " out of range");
      }
      add(col.cells[r]);
    }
    total = rows->size();
  }
  return detail::distribution_of_counts(values, counts, total);
}

}  // namespace tabanon

#endif  // TABANON_DISTRIBUTION_HPP_
