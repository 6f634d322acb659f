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

#ifndef TABANON_METRICS_HPP_
#define TABANON_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tabanon/dataset.hpp"
#include "tabanon/distribution.hpp"
#include "tabanon/error.hpp"
#include "tabanon/partition.hpp"

namespace tabanon {
namespace metrics {

// Tolerance for boundary comparisons that hinge on libm rounding (a
// two-value uniform class must count as entropy >= ln 2).
inline constexpr double kEntropyTolerance = 1e-9;

/// Smallest beta covering every positive frequency gain, plus whether the
/// -ln p(s) cap of the enhanced model is respected at all; when it is not,
/// no beta satisfies the model.
struct EnhancedBeta {
  double value = 0.0;
  bool satisfiable = true;
};

struct MetricReport {
  long k = 0;
  std::optional<double> alpha;
  std::optional<long> l;
  std::optional<long> entropy_l;
  std::optional<double> t;
  std::optional<double> delta;
  std::optional<double> basic_beta;
  std::optional<EnhancedBeta> enhanced_beta;
};

struct RecursiveCLCheck {
  double c = 0.0;
  long l = 0;
  bool satisfied = false;
};

namespace detail {

/// Per-class sensitive-value counts over the table-wide support.
struct SaTable {
  std::vector<std::string> support;               // first-occurrence order
  std::vector<std::size_t> global_counts;         // per support value
  std::vector<std::vector<std::size_t>> class_counts;  // [class][support value]
  std::vector<std::size_t> class_sizes;
  std::optional<std::vector<std::size_t>> numeric_order;
  std::size_t total = 0;

  double p(std::size_t v) const {
    return static_cast<double>(global_counts[v]) / static_cast<double>(total);
  }
  double q(std::size_t cls, std::size_t v) const {
    return static_cast<double>(class_counts[cls][v]) /
           static_cast<double>(class_sizes[cls]);
  }
};

inline void require_nonempty(const Dataset& ds) {
  if (ds.row_count() == 0) {
    throw InputError("metric undefined on an empty dataset");
  }
}

inline SaTable build_sa_table(const Dataset& ds,
                              const std::vector<std::string>& qi,
                              const std::string& sa) {
  require_nonempty(ds);
  const Column& col = ds.column(sa);
  if (col.role != ColumnRole::kSensitive) {
    throw InputError("column '" + sa + "' is not a sensitive attribute");
  }
  SaTable table;
  table.total = ds.row_count();
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::size_t> value_of_row(ds.row_count());
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    auto [it, inserted] = index.emplace(col.cells[r], table.support.size());
    if (inserted) {
      table.support.push_back(col.cells[r]);
      table.global_counts.push_back(0);
    }
    ++table.global_counts[it->second];
    value_of_row[r] = it->second;
  }
  EquivalenceClassPartition part = partition(ds, qi);
  table.class_counts.assign(part.classes.size(),
                            std::vector<std::size_t>(table.support.size(), 0));
  table.class_sizes.reserve(part.classes.size());
  for (std::size_t c = 0; c < part.classes.size(); ++c) {
    for (std::size_t r : part.classes[c]) {
      ++table.class_counts[c][value_of_row[r]];
    }
    table.class_sizes.push_back(part.classes[c].size());
  }
  std::vector<double> parsed(table.support.size());
  bool numeric = true;
  for (std::size_t v = 0; v < table.support.size() && numeric; ++v) {
    auto num = parse_number(table.support[v]);
    if (num) {
      parsed[v] = *num;
    } else {
      numeric = false;
    }
  }
  if (numeric) {
    std::vector<std::size_t> order(table.support.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (parsed[a] != parsed[b]) return parsed[a] < parsed[b];
      return table.support[a] < table.support[b];
    });
    table.numeric_order = std::move(order);
  }
  return table;
}

inline double class_entropy(const SaTable& t, std::size_t cls) {
  double h = 0.0;
  for (std::size_t v = 0; v < t.support.size(); ++v) {
    if (t.class_counts[cls][v] == 0) continue;
    double q = t.q(cls, v);
    h -= q * std::log(q);
  }
  return h;
}

inline double class_tv_distance(const SaTable& t, std::size_t cls) {
  double sum = 0.0;
  for (std::size_t v = 0; v < t.support.size(); ++v) {
    sum += std::abs(t.q(cls, v) - t.p(v));
  }
  return 0.5 * sum;
}

/// Ordered-distance earth mover over the numerically sorted support.
inline double class_emd_distance(const SaTable& t, std::size_t cls) {
  const auto& order = *t.numeric_order;
  const std::size_t m = order.size();
  if (m <= 1) return 0.0;
  double cum = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cum += t.q(cls, order[i]) - t.p(order[i]);
    sum += std::abs(cum);
  }
  return sum / static_cast<double>(m - 1);
}

inline double class_distance(const SaTable& t, std::size_t cls) {
  return t.numeric_order ? class_emd_distance(t, cls) : class_tv_distance(t, cls);
}

inline double class_delta(const SaTable& t, std::size_t cls) {
  double worst = 0.0;
  for (std::size_t v = 0; v < t.support.size(); ++v) {
    if (t.class_counts[cls][v] == 0) continue;
    worst = std::max(worst, std::abs(std::log(t.q(cls, v) / t.p(v))));
  }
  return worst;
}

inline double class_beta_gain(const SaTable& t, std::size_t cls) {
  double worst = 0.0;
  for (std::size_t v = 0; v < t.support.size(); ++v) {
    if (t.class_counts[cls][v] == 0) continue;
    double p = t.p(v);
    double q = t.q(cls, v);
    if (q > p) worst = std::max(worst, (q - p) / p);
  }
  return worst;
}

/// True when some value's gain exceeds the -ln p(s) cap of enhanced
/// beta-likeness, which no beta can repair.
inline bool class_breaks_beta_cap(const SaTable& t, std::size_t cls) {
  for (std::size_t v = 0; v < t.support.size(); ++v) {
    if (t.class_counts[cls][v] == 0) continue;
    double p = t.p(v);
    double q = t.q(cls, v);
    if (q > p && (q - p) / p > -std::log(p) + 1e-12) return true;
  }
  return false;
}

inline std::vector<std::size_t> sorted_desc_counts(const SaTable& t,
                                                   std::size_t cls) {
  std::vector<std::size_t> counts;
  for (std::size_t v = 0; v < t.support.size(); ++v) {
    if (t.class_counts[cls][v] > 0) counts.push_back(t.class_counts[cls][v]);
  }
  std::sort(counts.rbegin(), counts.rend());
  return counts;
}

inline bool recursive_cl_holds(const std::vector<std::size_t>& desc, double c,
                               long l) {
  if (static_cast<long>(desc.size()) < l) return false;
  double tail = 0.0;
  for (std::size_t i = static_cast<std::size_t>(l) - 1; i < desc.size(); ++i) {
    tail += static_cast<double>(desc[i]);
  }
  return static_cast<double>(desc[0]) < c * tail;
}

}  // namespace detail

/// Minimum equivalence-class size.
inline long calc_k(const Dataset& ds, const std::vector<std::string>& qi) {
  detail::require_nonempty(ds);
  return static_cast<long>(partition(ds, qi).min_class_size());
}

/// Largest within-class frequency of any sensitive value.
inline double calc_alpha(const Dataset& ds, const std::vector<std::string>& qi,
                         const std::string& sa) {
  auto table = detail::build_sa_table(ds, qi, sa);
  double worst = 0.0;
  for (std::size_t c = 0; c < table.class_counts.size(); ++c) {
    for (std::size_t v = 0; v < table.support.size(); ++v) {
      if (table.class_counts[c][v] > 0) {
        worst = std::max(worst, table.q(c, v));
      }
    }
  }
  return worst;
}

/// Minimum count of distinct sensitive values per class.
inline long calc_l(const Dataset& ds, const std::vector<std::string>& qi,
                   const std::string& sa) {
  auto table = detail::build_sa_table(ds, qi, sa);
  long best = static_cast<long>(table.support.size());
  for (std::size_t c = 0; c < table.class_counts.size(); ++c) {
    long distinct = 0;
    for (std::size_t v = 0; v < table.support.size(); ++v) {
      if (table.class_counts[c][v] > 0) ++distinct;
    }
    best = std::min(best, distinct);
  }
  return best;
}

/// Largest integer l with every class entropy >= ln l.
inline long calc_entropy_l(const Dataset& ds, const std::vector<std::string>& qi,
                           const std::string& sa) {
  auto table = detail::build_sa_table(ds, qi, sa);
  double min_entropy = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < table.class_counts.size(); ++c) {
    min_entropy = std::min(min_entropy, detail::class_entropy(table, c));
  }
  long l = static_cast<long>(std::floor(std::exp(min_entropy) + kEntropyTolerance));
  return std::max<long>(l, 1);
}

/// Smallest class entropy, the quantity entropy l-diversity bounds from
/// below by ln l.
inline double min_class_entropy(const Dataset& ds,
                                const std::vector<std::string>& qi,
                                const std::string& sa) {
  auto table = detail::build_sa_table(ds, qi, sa);
  double min_entropy = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < table.class_counts.size(); ++c) {
    min_entropy = std::min(min_entropy, detail::class_entropy(table, c));
  }
  return min_entropy;
}

/// Per class with descending counts r1 >= ... >= rm: r1 < c*(rl+...+rm).
inline RecursiveCLCheck check_recursive_cl(const Dataset& ds,
                                           const std::vector<std::string>& qi,
                                           const std::string& sa, double c,
                                           long l) {
  if (l < 1) {
    throw InputError("recursive (c,l)-diversity requires l >= 1");
  }
  if (c <= 0) {
    throw InputError("recursive (c,l)-diversity requires c > 0");
  }
  auto table = detail::build_sa_table(ds, qi, sa);
  bool ok = true;
  for (std::size_t cls = 0; cls < table.class_counts.size() && ok; ++cls) {
    ok = detail::recursive_cl_holds(detail::sorted_desc_counts(table, cls), c, l);
  }
  return RecursiveCLCheck{c, l, ok};
}

/// Largest distance between a class distribution and the table
/// distribution: total variation for categorical values, ordered earth
/// mover for fully numeric ones.
inline double calc_t(const Dataset& ds, const std::vector<std::string>& qi,
                     const std::string& sa) {
  auto table = detail::build_sa_table(ds, qi, sa);
  double worst = 0.0;
  for (std::size_t c = 0; c < table.class_counts.size(); ++c) {
    worst = std::max(worst, detail::class_distance(table, c));
  }
  return worst;
}

/// Largest |ln(q(s)/p(s))| over classes and their observed values.
inline double calc_delta(const Dataset& ds, const std::vector<std::string>& qi,
                         const std::string& sa) {
  auto table = detail::build_sa_table(ds, qi, sa);
  double worst = 0.0;
  for (std::size_t c = 0; c < table.class_counts.size(); ++c) {
    worst = std::max(worst, detail::class_delta(table, c));
  }
  return worst;
}

/// Largest relative positive frequency gain (q-p)/p; 0 when none exists.
inline double calc_basic_beta(const Dataset& ds,
                              const std::vector<std::string>& qi,
                              const std::string& sa) {
  auto table = detail::build_sa_table(ds, qi, sa);
  double worst = 0.0;
  for (std::size_t c = 0; c < table.class_counts.size(); ++c) {
    worst = std::max(worst, detail::class_beta_gain(table, c));
  }
  return worst;
}

/// Smallest beta whose cap min(beta, -ln p(s)) covers every gain, with the
/// unsatisfiable case (a gain above its cap) reported distinctly.
inline EnhancedBeta calc_enhanced_beta(const Dataset& ds,
                                       const std::vector<std::string>& qi,
                                       const std::string& sa) {
  auto table = detail::build_sa_table(ds, qi, sa);
  EnhancedBeta result;
  for (std::size_t c = 0; c < table.class_counts.size(); ++c) {
    result.value = std::max(result.value, detail::class_beta_gain(table, c));
    if (detail::class_breaks_beta_cap(table, c)) result.satisfiable = false;
  }
  return result;
}

/// Every scalar metric in one pass; the sensitive-attribute metrics are
/// present only when a sensitive column is given.
inline MetricReport full_report(const Dataset& ds,
                                const std::vector<std::string>& qi,
                                const std::optional<std::string>& sa = std::nullopt) {
  MetricReport report;
  report.k = calc_k(ds, qi);
  if (!sa) return report;
  auto table = detail::build_sa_table(ds, qi, *sa);
  double alpha = 0.0;
  long l = static_cast<long>(table.support.size());
  double min_entropy = std::numeric_limits<double>::infinity();
  double t = 0.0;
  double delta = 0.0;
  EnhancedBeta enhanced;
  for (std::size_t c = 0; c < table.class_counts.size(); ++c) {
    long distinct = 0;
    for (std::size_t v = 0; v < table.support.size(); ++v) {
      if (table.class_counts[c][v] > 0) {
        ++distinct;
        alpha = std::max(alpha, table.q(c, v));
      }
    }
    l = std::min(l, distinct);
    min_entropy = std::min(min_entropy, detail::class_entropy(table, c));
    t = std::max(t, detail::class_distance(table, c));
    delta = std::max(delta, detail::class_delta(table, c));
    enhanced.value = std::max(enhanced.value, detail::class_beta_gain(table, c));
    if (detail::class_breaks_beta_cap(table, c)) enhanced.satisfiable = false;
  }
  report.alpha = alpha;
  report.l = l;
  report.entropy_l = std::max<long>(
      static_cast<long>(std::floor(std::exp(min_entropy) + kEntropyTolerance)), 1);
  report.t = t;
  report.delta = delta;
  report.basic_beta = enhanced.value;
  report.enhanced_beta = enhanced;
  return report;
}

}  // namespace metrics
}  // namespace tabanon

#endif  // TABANON_METRICS_HPP_
