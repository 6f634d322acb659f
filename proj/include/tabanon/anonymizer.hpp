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

#ifndef TABANON_ANONYMIZER_HPP_
#define TABANON_ANONYMIZER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tabanon/dataset.hpp"
#include "tabanon/error.hpp"
#include "tabanon/hierarchy.hpp"
#include "tabanon/metrics.hpp"
#include "tabanon/partition.hpp"

namespace tabanon {
namespace anonymity {

enum class Technique {
  kKAnonymity,
  kAlphaKAnonymity,
  kLDiversity,
  kEntropyLDiversity,
  kRecursiveCLDiversity,
  kTCloseness,
  kDeltaDisclosure,
  kBasicBetaLikeness,
  kEnhancedBetaLikeness,
};

inline const char* to_string(Technique technique) {
  switch (technique) {
    case Technique::kKAnonymity: return "k_anonymity";
    case Technique::kAlphaKAnonymity: return "alpha_k_anonymity";
    case Technique::kLDiversity: return "l_diversity";
    case Technique::kEntropyLDiversity: return "entropy_l_diversity";
    case Technique::kRecursiveCLDiversity: return "recursive_c_l_diversity";
    case Technique::kTCloseness: return "t_closeness";
    case Technique::kDeltaDisclosure: return "delta_disclosure";
    case Technique::kBasicBetaLikeness: return "basic_beta_likeness";
    case Technique::kEnhancedBetaLikeness: return "enhanced_beta_likeness";
  }
  return "k_anonymity";
}

/// Chosen privacy model plus its parameters and the suppression budget.
/// A value of k is always present; the other parameters exist only for the
/// techniques that use them, all validated on construction.
class PrivacySpec {
 public:
  static PrivacySpec k_anonymity(long k, double supp_level) {
    return PrivacySpec(Technique::kKAnonymity, k, supp_level);
  }
  static PrivacySpec alpha_k_anonymity(double alpha, long k, double supp_level) {
    PrivacySpec spec(Technique::kAlphaKAnonymity, k, supp_level);
    if (!(alpha > 0.0) || alpha > 1.0) {
      throw InputError("alpha must be in (0, 1]");
    }
    spec.alpha_ = alpha;
    return spec;
  }
  static PrivacySpec l_diversity(long k, long l, double supp_level) {
    PrivacySpec spec(Technique::kLDiversity, k, supp_level);
    spec.l_ = check_l(l);
    return spec;
  }
  static PrivacySpec entropy_l_diversity(long k, long l, double supp_level) {
    PrivacySpec spec(Technique::kEntropyLDiversity, k, supp_level);
    spec.l_ = check_l(l);
    return spec;
  }
  static PrivacySpec recursive_c_l_diversity(long k, double c, long l,
                                             double supp_level) {
    PrivacySpec spec(Technique::kRecursiveCLDiversity, k, supp_level);
    if (!(c > 0.0)) {
      throw InputError("c must be positive");
    }
    spec.c_ = c;
    spec.l_ = check_l(l);
    return spec;
  }
  static PrivacySpec t_closeness(long k, double t, double supp_level) {
    PrivacySpec spec(Technique::kTCloseness, k, supp_level);
    if (t < 0.0) {
      throw InputError("t must be >= 0");
    }
    spec.t_ = t;
    return spec;
  }
  static PrivacySpec delta_disclosure(long k, double delta, double supp_level) {
    PrivacySpec spec(Technique::kDeltaDisclosure, k, supp_level);
    if (!(delta > 0.0)) {
      throw InputError("delta must be positive");
    }
    spec.delta_ = delta;
    return spec;
  }
  static PrivacySpec basic_beta_likeness(long k, double beta, double supp_level) {
    PrivacySpec spec(Technique::kBasicBetaLikeness, k, supp_level);
    spec.beta_ = check_beta(beta);
    return spec;
  }
  static PrivacySpec enhanced_beta_likeness(long k, double beta,
                                            double supp_level) {
    PrivacySpec spec(Technique::kEnhancedBetaLikeness, k, supp_level);
    spec.beta_ = check_beta(beta);
    return spec;
  }

  Technique technique() const { return technique_; }
  long k() const { return k_; }
  double supp_level() const { return supp_level_; }
  bool requires_sensitive() const {
    return technique_ != Technique::kKAnonymity;
  }

  double alpha() const { return require(alpha_, "alpha"); }
  long l() const {
    if (!l_) throw Error("spec has no l parameter");
    return *l_;
  }
  double c() const { return require(c_, "c"); }
  double t() const { return require(t_, "t"); }
  double delta() const { return require(delta_, "delta"); }
  double beta() const { return require(beta_, "beta"); }

 private:
  PrivacySpec(Technique technique, long k, double supp_level)
      : technique_(technique), k_(k), supp_level_(supp_level) {
    if (k < 1) {
      throw InputError("k must be >= 1");
    }
    if (supp_level < 0.0 || supp_level > 100.0) {
      throw InputError("supp_level must be in [0, 100]");
    }
  }

  static long check_l(long l) {
    if (l < 1) throw InputError("l must be >= 1");
    return l;
  }
  static double check_beta(double beta) {
    if (!(beta > 0.0)) throw InputError("beta must be positive");
    return beta;
  }
  double require(const std::optional<double>& v, const char* name) const {
    if (!v) throw Error(std::string("spec has no ") + name + " parameter");
    return *v;
  }

  Technique technique_;
  long k_;
  double supp_level_;
  std::optional<double> alpha_, c_, t_, delta_, beta_;
  std::optional<long> l_;
};

struct AnonymizationResult {
  Dataset data;
  TransformationVector transformation;
  std::size_t suppressed_count = 0;
  double suppressed_percent = 0.0;
  metrics::MetricReport achieved;
};

/// True when the table, as given, satisfies the spec's predicate according
/// to the metrics module.
inline bool verifies(const Dataset& ds, const std::vector<std::string>& qi,
                     const std::optional<std::string>& sa,
                     const PrivacySpec& spec) {
  if (spec.requires_sensitive() && !sa) {
    throw InputError(std::string(to_string(spec.technique())) +
                     " requires a sensitive attribute");
  }
  if (metrics::calc_k(ds, qi) < spec.k()) return false;
  switch (spec.technique()) {
    case Technique::kKAnonymity:
      return true;
    case Technique::kAlphaKAnonymity:
      return metrics::calc_alpha(ds, qi, *sa) <= spec.alpha();
    case Technique::kLDiversity:
      return metrics::calc_l(ds, qi, *sa) >= spec.l();
    case Technique::kEntropyLDiversity:
      return metrics::min_class_entropy(ds, qi, *sa) >=
             std::log(static_cast<double>(spec.l())) - metrics::kEntropyTolerance;
    case Technique::kRecursiveCLDiversity:
      return metrics::check_recursive_cl(ds, qi, *sa, spec.c(), spec.l()).satisfied;
    case Technique::kTCloseness:
      return metrics::calc_t(ds, qi, *sa) <= spec.t();
    case Technique::kDeltaDisclosure:
      return metrics::calc_delta(ds, qi, *sa) < spec.delta();
    case Technique::kBasicBetaLikeness:
      return metrics::calc_basic_beta(ds, qi, *sa) <= spec.beta();
    case Technique::kEnhancedBetaLikeness: {
      auto enhanced = metrics::calc_enhanced_beta(ds, qi, *sa);
      return enhanced.satisfiable && enhanced.value <= spec.beta();
    }
  }
  return false;
}

namespace detail {

// Equivalence classes over the alive rows of the working state, together
// with the sensitive-value counts the SA predicates need.
struct NodeClasses {
  std::vector<std::vector<std::size_t>> rows;            // per class, ascending
  std::vector<std::string> support;                      // SA values observed
  std::vector<std::vector<std::size_t>> sa_counts;       // [class][value]
  std::vector<std::size_t> global_counts;                // per value
  std::optional<std::vector<std::size_t>> numeric_order;
  std::size_t alive = 0;
};

struct SearchState {
  std::vector<std::vector<std::string>> qi_values;  // current generalized text
  std::vector<std::size_t> alive;                   // ascending row indices
  TransformationVector t;
  std::size_t suppressed = 0;
};

inline NodeClasses group_alive(const SearchState& state,
                               const std::vector<std::string>* sa_cells) {
  NodeClasses node;
  node.alive = state.alive.size();
  std::unordered_map<std::string, std::size_t> class_of;
  std::string key;
  for (std::size_t r : state.alive) {
    key.clear();
    for (const auto& col : state.qi_values) {
      key += std::to_string(col[r].size());
      key += ':';
      key += col[r];
    }
    auto [it, inserted] = class_of.emplace(key, node.rows.size());
    if (inserted) node.rows.emplace_back();
    node.rows[it->second].push_back(r);
  }
  if (sa_cells != nullptr) {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::size_t> code((*sa_cells).size());
    for (std::size_t r : state.alive) {
      auto [it, inserted] = index.emplace((*sa_cells)[r], node.support.size());
      if (inserted) {
        node.support.push_back((*sa_cells)[r]);
        node.global_counts.push_back(0);
      }
      code[r] = it->second;
      ++node.global_counts[it->second];
    }
    node.sa_counts.assign(node.rows.size(),
                          std::vector<std::size_t>(node.support.size(), 0));
    for (std::size_t c = 0; c < node.rows.size(); ++c) {
      for (std::size_t r : node.rows[c]) ++node.sa_counts[c][code[r]];
    }
    std::vector<double> parsed(node.support.size());
    bool numeric = true;
    for (std::size_t v = 0; v < node.support.size() && numeric; ++v) {
      auto num = parse_number(node.support[v]);
      if (num) {
        parsed[v] = *num;
      } else {
        numeric = false;
      }
    }
    if (numeric) {
      std::vector<std::size_t> order(node.support.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (parsed[a] != parsed[b]) return parsed[a] < parsed[b];
        return node.support[a] < node.support[b];
      });
      node.numeric_order = std::move(order);
    }
  }
  return node;
}

// Scratch view of one class while the deletion loop runs.
struct ClassView {
  std::size_t index;       // into NodeClasses::rows
  std::size_t size;
  std::size_t first_row;
  bool deleted = false;
};

class SaPredicate {
 public:
  SaPredicate(const PrivacySpec& spec) : spec_(spec) {}

  // Whether deleting a class changes other classes' statistics (the
  // statistic depends on the table-global distribution).
  bool global() const {
    switch (spec_.technique()) {
      case Technique::kTCloseness:
      case Technique::kDeltaDisclosure:
      case Technique::kBasicBetaLikeness:
      case Technique::kEnhancedBetaLikeness:
        return true;
      default:
        return false;
    }
  }

  // Violation badness of one class; <= 0 means the class satisfies the
  // predicate, larger means a worse violator.
  double badness(const NodeClasses& node,
                 const std::vector<std::size_t>& global_counts,
                 std::size_t total_alive, std::size_t cls) const {
    const auto& counts = node.sa_counts[cls];
    const double size = static_cast<double>(node.rows[cls].size());
    switch (spec_.technique()) {
      case Technique::kKAnonymity:
        return -1.0;
      case Technique::kAlphaKAnonymity: {
        std::size_t worst = 0;
        for (std::size_t c : counts) worst = std::max(worst, c);
        return static_cast<double>(worst) / size - spec_.alpha();
      }
      case Technique::kLDiversity: {
        long distinct = 0;
        for (std::size_t c : counts) {
          if (c > 0) ++distinct;
        }
        return static_cast<double>(spec_.l() - distinct);
      }
      case Technique::kEntropyLDiversity: {
        double h = 0.0;
        for (std::size_t c : counts) {
          if (c == 0) continue;
          double q = static_cast<double>(c) / size;
          h -= q * std::log(q);
        }
        return std::log(static_cast<double>(spec_.l())) -
               metrics::kEntropyTolerance - h;
      }
      case Technique::kRecursiveCLDiversity: {
        std::vector<std::size_t> desc;
        for (std::size_t c : counts) {
          if (c > 0) desc.push_back(c);
        }
        std::sort(desc.rbegin(), desc.rend());
        if (static_cast<long>(desc.size()) < spec_.l()) {
          return std::numeric_limits<double>::infinity();
        }
        double tail = 0.0;
        for (std::size_t i = static_cast<std::size_t>(spec_.l()) - 1;
             i < desc.size(); ++i) {
          tail += static_cast<double>(desc[i]);
        }
        // the model demands r1 strictly below c*tail, so equality violates
        double margin = static_cast<double>(desc[0]) - spec_.c() * tail;
        return margin >= 0.0 ? margin + 1.0 : margin;
      }
      case Technique::kTCloseness:
        return class_distance(node, global_counts, total_alive, cls) - spec_.t();
      case Technique::kDeltaDisclosure: {
        double worst = 0.0;
        for (std::size_t v = 0; v < counts.size(); ++v) {
          if (counts[v] == 0) continue;
          double q = static_cast<double>(counts[v]) / size;
          double p = static_cast<double>(global_counts[v]) /
                     static_cast<double>(total_alive);
          worst = std::max(worst, std::abs(std::log(q / p)));
        }
        // delta-disclosure demands strictly less than delta
        return worst >= spec_.delta() ? worst - spec_.delta() + 1.0 : -1.0;
      }
      case Technique::kBasicBetaLikeness: {
        double worst = 0.0;
        for (std::size_t v = 0; v < counts.size(); ++v) {
          if (counts[v] == 0) continue;
          double q = static_cast<double>(counts[v]) / size;
          double p = static_cast<double>(global_counts[v]) /
                     static_cast<double>(total_alive);
          if (q > p) worst = std::max(worst, (q - p) / p);
        }
        return worst - spec_.beta();
      }
      case Technique::kEnhancedBetaLikeness: {
        double margin = -std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < counts.size(); ++v) {
          if (counts[v] == 0) continue;
          double q = static_cast<double>(counts[v]) / size;
          double p = static_cast<double>(global_counts[v]) /
                     static_cast<double>(total_alive);
          if (q <= p) continue;
          double cap = std::min(spec_.beta(), -std::log(p));
          margin = std::max(margin, (q - p) / p - cap);
        }
        return margin;
      }
    }
    return -1.0;
  }

 private:
  static double class_distance(const NodeClasses& node,
                               const std::vector<std::size_t>& global_counts,
                               std::size_t total_alive, std::size_t cls) {
    const auto& counts = node.sa_counts[cls];
    const double size = static_cast<double>(node.rows[cls].size());
    if (node.numeric_order) {
      const auto& order = *node.numeric_order;
      if (order.size() <= 1) return 0.0;
      double cum = 0.0, sum = 0.0;
      for (std::size_t v : order) {
        double q = static_cast<double>(counts[v]) / size;
        double p = static_cast<double>(global_counts[v]) /
                   static_cast<double>(total_alive);
        cum += q - p;
        sum += std::abs(cum);
      }
      return sum / static_cast<double>(order.size() - 1);
    }
    double sum = 0.0;
    for (std::size_t v = 0; v < counts.size(); ++v) {
      double q = static_cast<double>(counts[v]) / size;
      double p = static_cast<double>(global_counts[v]) /
                 static_cast<double>(total_alive);
      sum += std::abs(q - p);
    }
    return 0.5 * sum;
  }

  const PrivacySpec& spec_;
};

struct DeletionPlan {
  bool feasible = false;
  std::vector<std::size_t> classes_to_delete;  // indices into NodeClasses::rows
  std::size_t rows_to_delete = 0;
};

// Budget check: cumulative suppression, measured against the row count the
// search started with, may never exceed supp_level percent, and at least
// one row must survive.
inline bool fits_budget(std::size_t already, std::size_t extra,
                        std::size_t original_rows, std::size_t alive,
                        double supp_level) {
  if (extra >= alive) return false;
  double suppressed = static_cast<double>(already + extra) * 100.0;
  return suppressed <= supp_level * static_cast<double>(original_rows);
}

// Deletes, worst violator first, until the k predicate holds. Class sizes
// never change when other classes are deleted, so the loop reduces to
// deleting every undersized class, smallest first; the plan fails when the
// cumulative budget cannot absorb all of them.
inline DeletionPlan plan_k_phase(const NodeClasses& node, long k,
                                 std::size_t already, std::size_t original_rows,
                                 double supp_level) {
  DeletionPlan plan;
  std::vector<std::size_t> violators;
  for (std::size_t c = 0; c < node.rows.size(); ++c) {
    if (node.rows[c].size() < static_cast<std::size_t>(k)) {
      violators.push_back(c);
      plan.rows_to_delete += node.rows[c].size();
    }
  }
  if (!fits_budget(already, plan.rows_to_delete, original_rows, node.alive,
                   supp_level)) {
    return plan;  // infeasible
  }
  std::sort(violators.begin(), violators.end(),
            [&](std::size_t a, std::size_t b) {
              if (node.rows[a].size() != node.rows[b].size()) {
                return node.rows[a].size() < node.rows[b].size();
              }
              return node.rows[a].front() < node.rows[b].front();
            });
  plan.feasible = true;
  plan.classes_to_delete = std::move(violators);
  return plan;
}

// Deletes, worst violator first, until the SA predicate holds everywhere,
// recomputing the global distribution after every deletion. For
// class-local statistics the deleted set is order-independent, so the loop
// is collapsed the same way as the k phase.
inline DeletionPlan plan_sa_phase(const NodeClasses& node,
                                  const SaPredicate& predicate,
                                  std::size_t already, std::size_t original_rows,
                                  double supp_level) {
  DeletionPlan plan;
  if (!predicate.global()) {
    std::vector<std::pair<double, std::size_t>> violators;  // (badness, class)
    for (std::size_t c = 0; c < node.rows.size(); ++c) {
      double b = predicate.badness(node, node.global_counts, node.alive, c);
      if (b > 0.0) {
        violators.emplace_back(b, c);
        plan.rows_to_delete += node.rows[c].size();
      }
    }
    if (!fits_budget(already, plan.rows_to_delete, original_rows, node.alive,
                     supp_level)) {
      return plan;
    }
    std::sort(violators.begin(), violators.end(),
              [&](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return node.rows[a.second].front() < node.rows[b.second].front();
              });
    plan.feasible = true;
    for (const auto& [badness, c] : violators) plan.classes_to_delete.push_back(c);
    return plan;
  }

  // global statistic: iterate one deletion at a time
  std::vector<std::size_t> global = node.global_counts;
  std::size_t alive = node.alive;
  std::vector<bool> deleted(node.rows.size(), false);
  while (true) {
    double worst_badness = 0.0;
    std::size_t worst = node.rows.size();
    for (std::size_t c = 0; c < node.rows.size(); ++c) {
      if (deleted[c]) continue;
      double b = predicate.badness(node, global, alive, c);
      if (b > 0.0 &&
          (worst == node.rows.size() || b > worst_badness ||
           (b == worst_badness &&
            node.rows[c].front() < node.rows[worst].front()))) {
        worst_badness = b;
        worst = c;
      }
    }
    if (worst == node.rows.size()) {
      plan.feasible = true;
      return plan;
    }
    std::size_t size = node.rows[worst].size();
    if (!fits_budget(already, plan.rows_to_delete + size, original_rows,
                     node.alive, supp_level)) {
      plan.feasible = false;
      return plan;
    }
    deleted[worst] = true;
    plan.classes_to_delete.push_back(worst);
    plan.rows_to_delete += size;
    alive -= size;
    for (std::size_t v = 0; v < global.size(); ++v) {
      global[v] -= node.sa_counts[worst][v];
    }
    if (alive == 0) {  // unreachable: fits_budget keeps one row
      plan.feasible = false;
      return plan;
    }
  }
}

inline void commit_plan(SearchState& state, const NodeClasses& node,
                        const DeletionPlan& plan) {
  if (plan.classes_to_delete.empty()) return;
  std::unordered_set<std::size_t> doomed;
  for (std::size_t c : plan.classes_to_delete) {
    for (std::size_t r : node.rows[c]) doomed.insert(r);
  }
  std::vector<std::size_t> alive;
  alive.reserve(state.alive.size() - doomed.size());
  for (std::size_t r : state.alive) {
    if (doomed.find(r) == doomed.end()) alive.push_back(r);
  }
  state.alive = std::move(alive);
  state.suppressed += doomed.size();
}

}  // namespace detail

/// Deterministic transformation search with bounded record suppression.
///
/// Starts from the least generalization consistent with the input (raw
/// data starts at level 0 everywhere; a previously generalized table is
/// picked up at its detected levels, so pipelined runs continue upward).
/// Two phases: first class sizes are brought up to k, then the technique's
/// sensitive-attribute predicate is satisfied. In each phase, equivalence
/// classes violating the predicate are deleted worst-violator-first while
/// the cumulative deleted fraction stays inside the suppression budget,
/// with global distributions recomputed after every deletion; when the
/// violating rows do not fit the budget, the quasi-identifier with the
/// most distinct values in the current table is generalized one level and
/// the phase restarts. The search fails only when no quasi-identifier can
/// be generalized further.
///
/// Identifier columns are masked in the result, and the finished table is
/// always re-verified through the metrics module.
inline AnonymizationResult search(const Dataset& ds, const HierarchySet& hs,
                                  const std::vector<std::string>& qi,
                                  const std::optional<std::string>& sa,
                                  const PrivacySpec& spec) {
  if (spec.requires_sensitive() && !sa) {
    throw InputError(std::string(to_string(spec.technique())) +
                     " requires a sensitive attribute");
  }
  Dataset working = suppress_identifiers(ds);
  const std::size_t n = working.row_count();
  if (n == 0) {
    throw InputError("cannot anonymize an empty dataset");
  }
  for (const std::string& name : qi) {
    working.column_index(name);  // throws if absent
  }

  detail::SearchState state;
  state.t = get_transformation(working, hs, qi);  // detects prior levels
  state.qi_values.reserve(qi.size());
  for (const std::string& name : qi) {
    state.qi_values.push_back(working.column(name).cells);
  }
  state.alive.resize(n);
  for (std::size_t r = 0; r < n; ++r) state.alive[r] = r;

  std::vector<int> max_levels(qi.size(), 0);
  for (std::size_t i = 0; i < qi.size(); ++i) {
    auto it = hs.find(qi[i]);
    if (it != hs.end()) max_levels[i] = it->second.max_level();
  }

  const std::vector<std::string>* sa_cells = nullptr;
  if (sa) {
    sa_cells = &working.column(*sa).cells;
  }

  // best candidate, for Unachievable diagnostics
  long best_k = 0;
  double best_supp = 100.0;
  TransformationVector best_t = state.t;
  auto note_candidate = [&](const detail::NodeClasses& node) {
    long k_here = node.rows.empty()
                      ? 0
                      : static_cast<long>(node.rows.front().size());
    for (const auto& rows : node.rows) {
      k_here = std::min(k_here, static_cast<long>(rows.size()));
    }
    double supp_here = 100.0 * static_cast<double>(state.suppressed) /
                       static_cast<double>(n);
    if (k_here > best_k || (k_here == best_k && supp_here < best_supp)) {
      best_k = k_here;
      best_supp = supp_here;
      best_t = state.t;
    }
  };

  auto generalize_step = [&]() -> bool {
    // QI with the most distinct values in the current table; ties resolve
    // to the earliest declared.
    std::size_t pick = qi.size();
    std::size_t pick_distinct = 0;
    for (std::size_t i = 0; i < qi.size(); ++i) {
      if (state.t[i] >= max_levels[i]) continue;
      std::unordered_set<std::string_view> distinct;
      for (std::size_t r : state.alive) {
        distinct.insert(state.qi_values[i][r]);
      }
      if (pick == qi.size() || distinct.size() > pick_distinct) {
        pick = i;
        pick_distinct = distinct.size();
      }
    }
    if (pick == qi.size()) return false;
    const Hierarchy& h = hs.at(qi[pick]);
    auto map = h.level_map(state.t[pick], state.t[pick] + 1);
    for (std::string& v : state.qi_values[pick]) {
      auto it = map.find(v);
      if (it == map.end()) {
        throw InputError("value '" + v + "' of column '" + qi[pick] +
                         "' is missing from the hierarchy");
      }
      v = it->second;
    }
    ++state.t[pick];
    return true;
  };

  auto run_phase = [&](bool k_phase) {
    while (true) {
      detail::NodeClasses node =
          detail::group_alive(state, k_phase ? nullptr : sa_cells);
      note_candidate(node);
      detail::DeletionPlan plan;
      if (k_phase) {
        plan = detail::plan_k_phase(node, spec.k(), state.suppressed, n,
                                    spec.supp_level());
      } else {
        detail::SaPredicate predicate(spec);
        plan = detail::plan_sa_phase(node, predicate, state.suppressed, n,
                                     spec.supp_level());
      }
      if (plan.feasible) {
        detail::commit_plan(state, node, plan);
        return;
      }
      if (!generalize_step()) {
        throw UnachievableError(
            std::string(to_string(spec.technique())) +
                ": no transformation satisfies the requested privacy level "
                "within the suppression budget (best candidate: k=" +
                std::to_string(best_k) + ", suppressed " +
                std::to_string(best_supp) + "%)",
            best_t, best_k, best_supp);
      }
    }
  };

  run_phase(/*k_phase=*/true);
  if (spec.requires_sensitive()) {
    run_phase(/*k_phase=*/false);
  }

  // materialize the surviving rows with the final generalization
  Dataset out = working;
  for (std::size_t i = 0; i < qi.size(); ++i) {
    out = out.with_column_values(qi[i], state.qi_values[i]);
  }
  out = out.select_rows(state.alive);

  AnonymizationResult result;
  result.data = std::move(out);
  result.transformation = state.t;
  result.suppressed_count = n - state.alive.size();
  result.suppressed_percent =
      100.0 * static_cast<double>(result.suppressed_count) / static_cast<double>(n);
  result.achieved = metrics::full_report(result.data, qi, sa);

  // the finished table must pass the independent checker
  if (!verifies(result.data, qi, sa, spec)) {
    throw Error(std::string(to_string(spec.technique())) +
                ": internal error, search result failed verification");
  }
  if (result.suppressed_percent >
      spec.supp_level() + 100.0 * std::numeric_limits<double>::epsilon()) {
    throw Error("internal error: suppression budget exceeded");
  }
  return result;
}

namespace detail {

inline Dataset prepare_roles(const Dataset& ds,
                             const std::vector<std::string>& ids,
                             const std::vector<std::string>& qi,
                             const std::optional<std::string>& sa) {
  std::map<std::string, ColumnRole> roles;
  for (const std::string& name : ds.column_names()) {
    roles[name] = ColumnRole::kInsensitive;
  }
  auto assign = [&](const std::string& name, ColumnRole role) {
    auto it = roles.find(name);
    if (it == roles.end()) {
      throw InputError("unknown column '" + name + "'");
    }
    if (it->second != ColumnRole::kInsensitive) {
      throw InputError("column '" + name + "' given more than one role");
    }
    it->second = role;
  };
  for (const std::string& name : ids) assign(name, ColumnRole::kIdentifier);
  for (const std::string& name : qi) assign(name, ColumnRole::kQuasiIdentifier);
  if (sa) assign(*sa, ColumnRole::kSensitive);
  return ds.with_roles(roles);
}

}  // namespace detail

inline AnonymizationResult k_anonymity(const Dataset& ds,
                                       const std::vector<std::string>& ids,
                                       const std::vector<std::string>& qi,
                                       long k, double supp_level,
                                       const HierarchySet& hs) {
  return search(detail::prepare_roles(ds, ids, qi, std::nullopt), hs, qi,
                std::nullopt, PrivacySpec::k_anonymity(k, supp_level));
}

inline AnonymizationResult alpha_k_anonymity(
    const Dataset& ds, const std::vector<std::string>& ids,
    const std::vector<std::string>& qi, const std::string& sa, double alpha,
    long k, double supp_level, const HierarchySet& hs) {
  return search(detail::prepare_roles(ds, ids, qi, sa), hs, qi, sa,
                PrivacySpec::alpha_k_anonymity(alpha, k, supp_level));
}

inline AnonymizationResult l_diversity(const Dataset& ds,
                                       const std::vector<std::string>& ids,
                                       const std::vector<std::string>& qi,
                                       const std::string& sa, long k, long l,
                                       double supp_level, const HierarchySet& hs) {
  return search(detail::prepare_roles(ds, ids, qi, sa), hs, qi, sa,
                PrivacySpec::l_diversity(k, l, supp_level));
}

inline AnonymizationResult entropy_l_diversity(
    const Dataset& ds, const std::vector<std::string>& ids,
    const std::vector<std::string>& qi, const std::string& sa, long k, long l,
    double supp_level, const HierarchySet& hs) {
  return search(detail::prepare_roles(ds, ids, qi, sa), hs, qi, sa,
                PrivacySpec::entropy_l_diversity(k, l, supp_level));
}

inline AnonymizationResult recursive_c_l_diversity(
    const Dataset& ds, const std::vector<std::string>& ids,
    const std::vector<std::string>& qi, const std::string& sa, long k, double c,
    long l, double supp_level, const HierarchySet& hs) {
  return search(detail::prepare_roles(ds, ids, qi, sa), hs, qi, sa,
                PrivacySpec::recursive_c_l_diversity(k, c, l, supp_level));
}

inline AnonymizationResult t_closeness(const Dataset& ds,
                                       const std::vector<std::string>& ids,
                                       const std::vector<std::string>& qi,
                                       const std::string& sa, long k, double t,
                                       double supp_level, const HierarchySet& hs) {
  return search(detail::prepare_roles(ds, ids, qi, sa), hs, qi, sa,
                PrivacySpec::t_closeness(k, t, supp_level));
}

inline AnonymizationResult delta_disclosure(
    const Dataset& ds, const std::vector<std::string>& ids,
    const std::vector<std::string>& qi, const std::string& sa, long k,
    double delta, double supp_level, const HierarchySet& hs) {
  return search(detail::prepare_roles(ds, ids, qi, sa), hs, qi, sa,
                PrivacySpec::delta_disclosure(k, delta, supp_level));
}

inline AnonymizationResult basic_beta_likeness(
    const Dataset& ds, const std::vector<std::string>& ids,
    const std::vector<std::string>& qi, const std::string& sa, long k,
    double beta, double supp_level, const HierarchySet& hs) {
  return search(detail::prepare_roles(ds, ids, qi, sa), hs, qi, sa,
                PrivacySpec::basic_beta_likeness(k, beta, supp_level));
}

inline AnonymizationResult enhanced_beta_likeness(
    const Dataset& ds, const std::vector<std::string>& ids,
    const std::vector<std::string>& qi, const std::string& sa, long k,
    double beta, double supp_level, const HierarchySet& hs) {
  return search(detail::prepare_roles(ds, ids, qi, sa), hs, qi, sa,
                PrivacySpec::enhanced_beta_likeness(k, beta, supp_level));
}

/// How to handle several sensitive attributes.
enum class MultiSaStrategy {
  kHarmonization,  // anonymize for each SA in turn on the previous output
  kQiUpdate,       // promoted SAs join the QI list for the other stages
};

struct SaStage {
  std::string sensitive_attribute;
  PrivacySpec spec;
};

struct StageReport {
  std::string sensitive_attribute;
  std::vector<std::string> qi;  // partition key the stage was checked with
  metrics::MetricReport achieved;
  bool satisfied = false;
};

struct MultiSaResult {
  Dataset data;
  TransformationVector transformation;  // over the base QI list
  std::size_t suppressed_count = 0;
  double suppressed_percent = 0.0;
  // per-stage guarantees re-verified on the final table: a later stage's
  // suppression may have strengthened or weakened an earlier one
  std::vector<StageReport> stages;
};

/// Runs the stages in order. Harmonization re-anonymizes each stage's
/// output for the next sensitive attribute with the same QI list. QI
/// update appends the caller's promoted sensitive attributes (minus the
/// stage's own) to the stage's QI list.
inline MultiSaResult anonymize_multi_sa(const Dataset& ds,
                                        const std::vector<std::string>& ids,
                                        const std::vector<std::string>& qi,
                                        const std::vector<SaStage>& stages,
                                        MultiSaStrategy strategy,
                                        const HierarchySet& hs,
                                        const std::vector<std::string>& promoted = {}) {
  if (stages.empty()) {
    throw InputError("multi-SA anonymization needs at least one stage");
  }
  for (const std::string& name : promoted) {
    bool is_stage_sa = false;
    for (const SaStage& stage : stages) {
      if (stage.sensitive_attribute == name) is_stage_sa = true;
    }
    if (!is_stage_sa) {
      throw InputError("promoted column '" + name +
                       "' is not one of the sensitive attributes");
    }
  }

  auto stage_qi = [&](const SaStage& stage) {
    std::vector<std::string> names = qi;
    if (strategy == MultiSaStrategy::kQiUpdate) {
      for (const std::string& name : promoted) {
        if (name != stage.sensitive_attribute) names.push_back(name);
      }
    }
    return names;
  };

  const std::size_t n = ds.row_count();
  Dataset current = ds;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const SaStage& stage = stages[i];
    std::vector<std::string> names = stage_qi(stage);
    Dataset roled =
        detail::prepare_roles(current, ids, names, stage.sensitive_attribute);
    try {
      AnonymizationResult result =
          search(roled, hs, names, stage.sensitive_attribute, stage.spec);
      current = std::move(result.data);
    } catch (const UnachievableError& e) {
      throw UnachievableError("stage " + std::to_string(i + 1) + " (" +
                                  stage.sensitive_attribute + "): " + e.what(),
                              e.best_transformation, e.best_k,
                              e.best_suppressed_percent);
    }
  }

  MultiSaResult result;
  result.suppressed_count = n - current.row_count();
  result.suppressed_percent =
      n == 0 ? 0.0
             : 100.0 * static_cast<double>(result.suppressed_count) /
                   static_cast<double>(n);
  result.transformation = get_transformation(current, hs, qi);
  for (const SaStage& stage : stages) {
    std::vector<std::string> names = stage_qi(stage);
    Dataset roled =
        detail::prepare_roles(current, ids, names, stage.sensitive_attribute);
    StageReport report;
    report.sensitive_attribute = stage.sensitive_attribute;
    report.qi = names;
    report.achieved =
        metrics::full_report(roled, names, stage.sensitive_attribute);
    report.satisfied =
        verifies(roled, names, stage.sensitive_attribute, stage.spec);
    result.stages.push_back(std::move(report));
  }
  result.data = std::move(current);
  return result;
}

}  // namespace anonymity
}  // namespace tabanon

#endif  // TABANON_ANONYMIZER_HPP_
