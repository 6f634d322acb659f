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

// Naive reference implementations of every privacy measure, written
// straight from the definitions with quadratic grouping and explicit
// loops. They exist only to check the library and must stay independent
// of tabanon/partition.hpp and tabanon/metrics.hpp.

#ifndef TABANON_TESTS_ORACLE_HPP_
#define TABANON_TESTS_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tabanon/dataset.hpp"

namespace oracle {

using tabanon::ColumnRole;
using tabanon::Column;
using tabanon::Dataset;

/// Quadratic pairwise grouping by the qi tuple.
inline std::vector<std::vector<std::size_t>> classes_of(
    const Dataset& ds, const std::vector<std::string>& qi) {
  std::vector<std::size_t> cols;
  for (const std::string& name : qi) cols.push_back(ds.column_index(name));
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> taken(ds.row_count(), false);
  for (std::size_t i = 0; i < ds.row_count(); ++i) {
    if (taken[i]) continue;
    std::vector<std::size_t> members{i};
    taken[i] = true;
    for (std::size_t j = i + 1; j < ds.row_count(); ++j) {
      if (taken[j]) continue;
      bool same = true;
      for (std::size_t c : cols) {
        if (ds.cell(i, c) != ds.cell(j, c)) {
          same = false;
          break;
        }
      }
      if (same) {
        members.push_back(j);
        taken[j] = true;
      }
    }
    classes.push_back(std::move(members));
  }
  return classes;
}

inline std::map<std::string, std::size_t> counts_in(
    const Dataset& ds, std::size_t col, const std::vector<std::size_t>& rows) {
  std::map<std::string, std::size_t> counts;
  for (std::size_t r : rows) ++counts[ds.cell(r, col)];
  return counts;
}

inline std::map<std::string, std::size_t> counts_all(const Dataset& ds,
                                                     std::size_t col) {
  std::map<std::string, std::size_t> counts;
  for (std::size_t r = 0; r < ds.row_count(); ++r) ++counts[ds.cell(r, col)];
  return counts;
}

inline long k_anonymity(const Dataset& ds, const std::vector<std::string>& qi) {
  long best = static_cast<long>(ds.row_count());
  for (const auto& cls : classes_of(ds, qi)) {
    best = std::min(best, static_cast<long>(cls.size()));
  }
  return best;
}

inline double alpha(const Dataset& ds, const std::vector<std::string>& qi,
                    const std::string& sa) {
  std::size_t col = ds.column_index(sa);
  double worst = 0.0;
  for (const auto& cls : classes_of(ds, qi)) {
    for (const auto& [value, count] : counts_in(ds, col, cls)) {
      worst = std::max(worst, double(count) / double(cls.size()));
    }
  }
  return worst;
}

inline long l_diversity(const Dataset& ds, const std::vector<std::string>& qi,
                        const std::string& sa) {
  std::size_t col = ds.column_index(sa);
  long best = static_cast<long>(ds.row_count());
  for (const auto& cls : classes_of(ds, qi)) {
    best = std::min(best, static_cast<long>(counts_in(ds, col, cls).size()));
  }
  return best;
}

inline double min_entropy(const Dataset& ds, const std::vector<std::string>& qi,
                          const std::string& sa) {
  std::size_t col = ds.column_index(sa);
  double best = 1e300;
  for (const auto& cls : classes_of(ds, qi)) {
    double h = 0.0;
    for (const auto& [value, count] : counts_in(ds, col, cls)) {
      double q = double(count) / double(cls.size());
      h -= q * std::log(q);
    }
    best = std::min(best, h);
  }
  return best;
}

/// Largest l with every class entropy at least ln l, found by counting up.
inline long entropy_l(const Dataset& ds, const std::vector<std::string>& qi,
                      const std::string& sa) {
  double h = min_entropy(ds, qi, sa);
  long l = 1;
  while (h >= std::log(double(l + 1)) - 1e-9) ++l;
  return l;
}

inline bool recursive_cl(const Dataset& ds, const std::vector<std::string>& qi,
                         const std::string& sa, double c, long l) {
  std::size_t col = ds.column_index(sa);
  for (const auto& cls : classes_of(ds, qi)) {
    std::vector<std::size_t> sorted;
    for (const auto& [value, count] : counts_in(ds, col, cls)) {
      sorted.push_back(count);
    }
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (static_cast<long>(sorted.size()) < l) return false;
    double tail = 0.0;
    for (std::size_t i = std::size_t(l) - 1; i < sorted.size(); ++i) tail += double(sorted[i]);
    if (!(double(sorted[0]) < c * tail)) return false;
  }
  return true;
}

inline bool all_numeric(const std::map<std::string, std::size_t>& counts) {
  for (const auto& [value, count] : counts) {
    const char* begin = value.c_str();
    char* end = nullptr;
    std::strtod(begin, &end);
    if (value.empty() || end != begin + value.size()) return false;
  }
  return true;
}

inline double t_closeness(const Dataset& ds, const std::vector<std::string>& qi,
                          const std::string& sa) {
  std::size_t col = ds.column_index(sa);
  auto global = counts_all(ds, col);
  double n = double(ds.row_count());
  bool numeric = all_numeric(global);
  std::vector<std::string> support;
  for (const auto& [value, count] : global) support.push_back(value);
  if (numeric) {
    std::sort(support.begin(), support.end(),
              [](const std::string& a, const std::string& b) {
                double da = std::strtod(a.c_str(), nullptr);
                double db = std::strtod(b.c_str(), nullptr);
                if (da != db) return da < db;
                return a < b;
              });
  }
  double worst = 0.0;
  for (const auto& cls : classes_of(ds, qi)) {
    auto local = counts_in(ds, col, cls);
    auto q_of = [&](const std::string& v) {
      auto it = local.find(v);
      return it == local.end() ? 0.0 : double(it->second) / double(cls.size());
    };
    auto p_of = [&](const std::string& v) { return double(global.at(v)) / n; };
    double dist = 0.0;
    if (numeric) {
      if (support.size() > 1) {
        double cum = 0.0;
        for (const std::string& v : support) {
          cum += q_of(v) - p_of(v);
          dist += std::abs(cum);
        }
        dist /= double(support.size() - 1);
      }
    } else {
      for (const std::string& v : support) dist += std::abs(q_of(v) - p_of(v));
      dist /= 2.0;
    }
    worst = std::max(worst, dist);
  }
  return worst;
}

inline double delta_disclosure(const Dataset& ds,
                               const std::vector<std::string>& qi,
                               const std::string& sa) {
  std::size_t col = ds.column_index(sa);
  auto global = counts_all(ds, col);
  double n = double(ds.row_count());
  double worst = 0.0;
  for (const auto& cls : classes_of(ds, qi)) {
    for (const auto& [value, count] : counts_in(ds, col, cls)) {
      double q = double(count) / double(cls.size());
      double p = double(global.at(value)) / n;
      worst = std::max(worst, std::abs(std::log(q / p)));
    }
  }
  return worst;
}

inline double basic_beta(const Dataset& ds, const std::vector<std::string>& qi,
                         const std::string& sa) {
  std::size_t col = ds.column_index(sa);
  auto global = counts_all(ds, col);
  double n = double(ds.row_count());
  double worst = 0.0;
  for (const auto& cls : classes_of(ds, qi)) {
    for (const auto& [value, count] : counts_in(ds, col, cls)) {
      double q = double(count) / double(cls.size());
      double p = double(global.at(value)) / n;
      if (q > p) worst = std::max(worst, (q - p) / p);
    }
  }
  return worst;
}

/// (smallest covering beta, whether the -ln p cap holds everywhere).
inline std::pair<double, bool> enhanced_beta(const Dataset& ds,
                                             const std::vector<std::string>& qi,
                                             const std::string& sa) {
  std::size_t col = ds.column_index(sa);
  auto global = counts_all(ds, col);
  double n = double(ds.row_count());
  double worst = 0.0;
  bool satisfiable = true;
  for (const auto& cls : classes_of(ds, qi)) {
    for (const auto& [value, count] : counts_in(ds, col, cls)) {
      double q = double(count) / double(cls.size());
      double p = double(global.at(value)) / n;
      if (q <= p) continue;
      double gain = (q - p) / p;
      worst = std::max(worst, gain);
      if (gain > -std::log(p) + 1e-12) satisfiable = false;
    }
  }
  return {worst, satisfiable};
}

// ---------------------------------------------------------------------
// deterministic random instances

struct RandomTable {
  Dataset ds;
  std::vector<std::string> qi;
  std::string sa;
};

/// Table with 1..200 rows, 1..4 QI columns over small alphabets and one
/// sensitive column with up to 6 values, sometimes all numeric.
inline RandomTable random_table(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> row_dist(1, 200);
  std::uniform_int_distribution<std::size_t> qi_count_dist(1, 4);
  std::uniform_int_distribution<std::size_t> alphabet_dist(1, 5);
  std::uniform_int_distribution<std::size_t> sa_values_dist(1, 6);
  std::uniform_int_distribution<int> coin(0, 1);

  const std::size_t rows = row_dist(rng);
  const std::size_t qi_count = qi_count_dist(rng);
  const bool numeric_sa = coin(rng) == 1;

  std::vector<Column> columns;
  std::vector<std::string> qi;
  for (std::size_t c = 0; c < qi_count; ++c) {
    std::size_t alphabet = alphabet_dist(rng);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet - 1);
    Column col{"q" + std::to_string(c), ColumnRole::kQuasiIdentifier, {}};
    for (std::size_t r = 0; r < rows; ++r) {
      col.cells.push_back("v" + std::to_string(pick(rng)));
    }
    qi.push_back(col.name);
    columns.push_back(std::move(col));
  }
  std::size_t sa_values = sa_values_dist(rng);
  std::uniform_int_distribution<std::size_t> pick_sa(0, sa_values - 1);
  Column sa_col{"s", ColumnRole::kSensitive, {}};
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t v = pick_sa(rng);
    sa_col.cells.push_back(numeric_sa ? std::to_string(v * 3 + 1)
                                      : "sv" + std::to_string(v));
  }
  columns.push_back(std::move(sa_col));
  return RandomTable{Dataset(std::move(columns)), std::move(qi), "s"};
}

}  // namespace oracle

#endif  // TABANON_TESTS_ORACLE_HPP_
