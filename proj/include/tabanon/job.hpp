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

#ifndef TABANON_JOB_HPP_
#define TABANON_JOB_HPP_

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tabanon/anonymizer.hpp"
#include "tabanon/csv.hpp"
#include "tabanon/dataset.hpp"
#include "tabanon/error.hpp"
#include "tabanon/hierarchy.hpp"
#include "tabanon/metrics.hpp"

namespace tabanon {
namespace job {

using nlohmann::json;

/// How one quasi-identifier's hierarchy is declared in the config: a
/// hierarchy CSV path, an inline interval ladder, or plain suppression.
struct HierarchyDecl {
  enum class Kind { kFile, kIntervals, kSuppressOnly };
  Kind kind = Kind::kSuppressOnly;
  std::string path;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> steps;
};

struct SingleJob {
  std::string technique_name;
  anonymity::PrivacySpec spec;
  json params_echo;
};

struct MultiJob {
  anonymity::MultiSaStrategy strategy = anonymity::MultiSaStrategy::kHarmonization;
  std::vector<std::string> promoted;
  std::vector<anonymity::SaStage> stages;
  json params_echo;
};

struct JobConfig {
  std::string input;
  std::string output;
  std::string report;
  std::vector<std::string> identifiers;
  std::vector<std::string> quasi_identifiers;
  std::optional<std::string> sensitive_attribute;
  std::map<std::string, HierarchyDecl> hierarchies;
  std::optional<SingleJob> single;
  std::optional<MultiJob> multi;
};

namespace detail {

inline const json& require_field(const json& j, const std::string& name,
                                 const std::string& context) {
  auto it = j.find(name);
  if (it == j.end()) {
    throw InputError(context + ": missing field \"" + name + "\"");
  }
  return *it;
}

inline std::string require_string(const json& j, const std::string& name,
                                  const std::string& context) {
  const json& v = require_field(j, name, context);
  if (!v.is_string()) {
    throw InputError(context + ": field \"" + name + "\" must be a string");
  }
  return v.get<std::string>();
}

inline double require_number(const json& j, const std::string& name,
                             const std::string& context) {
  const json& v = require_field(j, name, context);
  if (!v.is_number()) {
    throw InputError(context + ": field \"" + name + "\" must be a number");
  }
  return v.get<double>();
}

inline long require_integer(const json& j, const std::string& name,
                            const std::string& context) {
  const json& v = require_field(j, name, context);
  if (!v.is_number_integer()) {
    throw InputError(context + ": field \"" + name + "\" must be an integer");
  }
  return v.get<long>();
}

inline std::vector<std::string> string_list(const json& v, const std::string& name,
                                            const std::string& context) {
  if (!v.is_array()) {
    throw InputError(context + ": field \"" + name + "\" must be a list");
  }
  std::vector<std::string> out;
  for (const json& item : v) {
    if (!item.is_string()) {
      throw InputError(context + ": field \"" + name +
                       "\" must contain only strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

inline anonymity::PrivacySpec build_spec(const std::string& technique,
                                         const json& params, double supp_level,
                                         const std::string& context) {
  using anonymity::PrivacySpec;
  try {
    if (technique == "k_anonymity") {
      return PrivacySpec::k_anonymity(require_integer(params, "k", context),
                                      supp_level);
    }
    if (technique == "alpha_k_anonymity") {
      return PrivacySpec::alpha_k_anonymity(
          require_number(params, "alpha", context),
          require_integer(params, "k", context), supp_level);
    }
    if (technique == "l_diversity") {
      return PrivacySpec::l_diversity(require_integer(params, "k", context),
                                      require_integer(params, "l", context),
                                      supp_level);
    }
    if (technique == "entropy_l_diversity") {
      return PrivacySpec::entropy_l_diversity(
          require_integer(params, "k", context),
          require_integer(params, "l", context), supp_level);
    }
    if (technique == "recursive_c_l_diversity") {
      return PrivacySpec::recursive_c_l_diversity(
          require_integer(params, "k", context),
          require_number(params, "c", context),
          require_integer(params, "l", context), supp_level);
    }
    if (technique == "t_closeness") {
      return PrivacySpec::t_closeness(require_integer(params, "k", context),
                                      require_number(params, "t", context),
                                      supp_level);
    }
    if (technique == "delta_disclosure") {
      return PrivacySpec::delta_disclosure(
          require_integer(params, "k", context),
          require_number(params, "delta", context), supp_level);
    }
    if (technique == "basic_beta_likeness") {
      return PrivacySpec::basic_beta_likeness(
          require_integer(params, "k", context),
          require_number(params, "beta", context), supp_level);
    }
    if (technique == "enhanced_beta_likeness") {
      return PrivacySpec::enhanced_beta_likeness(
          require_integer(params, "k", context),
          require_number(params, "beta", context), supp_level);
    }
  } catch (const InputError& e) {
    throw InputError(std::string(e.what()) + " (technique \"" + technique + "\")");
  }
  throw InputError(context + ": unknown technique \"" + technique + "\"");
}

inline HierarchyDecl parse_hierarchy_decl(const json& v, const std::string& name,
                                          const std::string& context) {
  HierarchyDecl decl;
  if (v.is_string()) {
    if (v.get<std::string>() == "suppress-only") {
      decl.kind = HierarchyDecl::Kind::kSuppressOnly;
    } else {
      decl.kind = HierarchyDecl::Kind::kFile;
      decl.path = v.get<std::string>();
    }
    return decl;
  }
  if (v.is_object()) {
    decl.kind = HierarchyDecl::Kind::kIntervals;
    std::string ctx = context + ": hierarchy for \"" + name + "\"";
    decl.lower = require_number(v, "lower", ctx);
    decl.upper = require_number(v, "upper", ctx);
    const json& steps = require_field(v, "steps", ctx);
    if (!steps.is_array() || steps.empty()) {
      throw InputError(ctx + ": field \"steps\" must be a non-empty list");
    }
    for (const json& s : steps) {
      if (!s.is_number()) {
        throw InputError(ctx + ": field \"steps\" must contain numbers");
      }
      decl.steps.push_back(s.get<double>());
    }
    return decl;
  }
  throw InputError(context + ": hierarchy for \"" + name +
                   "\" must be a file path, \"suppress-only\", or an "
                   "interval object");
}

}  // namespace detail

/// Parses and validates a job configuration document.
inline JobConfig parse_job_config(const json& doc,
                                  const std::string& context = "config") {
  if (!doc.is_object()) {
    throw InputError(context + ": document must be a JSON object");
  }
  JobConfig cfg;
  if (doc.contains("input")) {
    cfg.input = detail::require_string(doc, "input", context);
  }
  if (doc.contains("output")) {
    cfg.output = detail::require_string(doc, "output", context);
  }
  if (doc.contains("report")) {
    cfg.report = detail::require_string(doc, "report", context);
  }
  if (doc.contains("identifiers")) {
    cfg.identifiers =
        detail::string_list(doc.at("identifiers"), "identifiers", context);
  }
  cfg.quasi_identifiers = detail::string_list(
      detail::require_field(doc, "quasi_identifiers", context),
      "quasi_identifiers", context);
  if (cfg.quasi_identifiers.empty()) {
    throw InputError(context + ": field \"quasi_identifiers\" must not be empty");
  }
  if (doc.contains("sensitive_attribute") &&
      !doc.at("sensitive_attribute").is_null()) {
    cfg.sensitive_attribute =
        detail::require_string(doc, "sensitive_attribute", context);
  }
  if (doc.contains("hierarchies")) {
    const json& hs = doc.at("hierarchies");
    if (!hs.is_object()) {
      throw InputError(context + ": field \"hierarchies\" must be an object");
    }
    for (auto it = hs.begin(); it != hs.end(); ++it) {
      cfg.hierarchies.emplace(
          it.key(), detail::parse_hierarchy_decl(it.value(), it.key(), context));
    }
  }

  const bool has_single = doc.contains("technique");
  const bool has_multi = doc.contains("multi_sa");
  if (has_single && has_multi) {
    throw InputError(context + ": give either \"technique\" or \"multi_sa\", not both");
  }
  if (has_single) {
    SingleJob job{detail::require_string(doc, "technique", context),
                  detail::build_spec(
                      detail::require_string(doc, "technique", context),
                      doc.contains("params") ? doc.at("params") : json::object(),
                      detail::require_number(doc, "supp_level", context), context),
                  doc.contains("params") ? doc.at("params") : json::object()};
    if (job.spec.requires_sensitive() && !cfg.sensitive_attribute) {
      throw InputError(context + ": technique \"" + job.technique_name +
                       "\" requires field \"sensitive_attribute\"");
    }
    cfg.single = std::move(job);
  } else if (has_multi) {
    const json& multi = doc.at("multi_sa");
    std::string ctx = context + ": multi_sa";
    MultiJob job;
    std::string strategy = detail::require_string(multi, "strategy", ctx);
    if (strategy == "harmonization") {
      job.strategy = anonymity::MultiSaStrategy::kHarmonization;
    } else if (strategy == "qi_update") {
      job.strategy = anonymity::MultiSaStrategy::kQiUpdate;
    } else {
      throw InputError(ctx + ": unknown strategy \"" + strategy + "\"");
    }
    if (multi.contains("promoted")) {
      job.promoted = detail::string_list(multi.at("promoted"), "promoted", ctx);
    }
    const json& stages = detail::require_field(multi, "stages", ctx);
    if (!stages.is_array() || stages.empty()) {
      throw InputError(ctx + ": field \"stages\" must be a non-empty list");
    }
    for (std::size_t i = 0; i < stages.size(); ++i) {
      std::string stage_ctx = ctx + " stage " + std::to_string(i + 1);
      const json& stage = stages[i];
      std::string sa = detail::require_string(stage, "sensitive_attribute", stage_ctx);
      std::string technique = detail::require_string(stage, "technique", stage_ctx);
      anonymity::PrivacySpec spec = detail::build_spec(
          technique, stage.contains("params") ? stage.at("params") : json::object(),
          detail::require_number(stage, "supp_level", stage_ctx), stage_ctx);
      job.stages.push_back(anonymity::SaStage{std::move(sa), std::move(spec)});
    }
    job.params_echo = multi;
    cfg.multi = std::move(job);
  }

  if (!cfg.output.empty() && cfg.output == cfg.input) {
    throw InputError(context + ": \"output\" must differ from \"input\"");
  }
  if (!cfg.report.empty() &&
      (cfg.report == cfg.input || cfg.report == cfg.output)) {
    throw InputError(context + ": \"report\" must differ from the other paths");
  }
  return cfg;
}

inline JobConfig load_job_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open config file '" + path + "'");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_job_config(doc, path);
}

namespace detail {

inline std::map<std::string, ColumnRole> role_map(const JobConfig& cfg) {
  std::map<std::string, ColumnRole> roles;
  for (const std::string& name : cfg.identifiers) {
    roles[name] = ColumnRole::kIdentifier;
  }
  for (const std::string& name : cfg.quasi_identifiers) {
    roles[name] = ColumnRole::kQuasiIdentifier;
  }
  if (cfg.sensitive_attribute) {
    roles[*cfg.sensitive_attribute] = ColumnRole::kSensitive;
  }
  if (cfg.multi) {
    for (const anonymity::SaStage& stage : cfg.multi->stages) {
      roles[stage.sensitive_attribute] = ColumnRole::kSensitive;
    }
  }
  return roles;
}

inline HierarchySet build_hierarchies(const JobConfig& cfg, const Dataset& ds) {
  HierarchySet hs;
  for (const auto& [name, decl] : cfg.hierarchies) {
    const Column& col = ds.column(name);  // throws if absent
    switch (decl.kind) {
      case HierarchyDecl::Kind::kFile:
        hs.emplace(name, load_hierarchy_csv(decl.path, name));
        break;
      case HierarchyDecl::Kind::kIntervals:
        hs.emplace(name, interval_hierarchy(name, col.cells, decl.lower,
                                            decl.upper, decl.steps));
        break;
      case HierarchyDecl::Kind::kSuppressOnly:
        hs.emplace(name, suppress_only_hierarchy(name, col.cells));
        break;
    }
  }
  return hs;
}

inline json metric_report_json(const metrics::MetricReport& report,
                               bool audit_extras = false) {
  json achieved;
  achieved["k"] = report.k;
  achieved["alpha"] = report.alpha ? json(*report.alpha) : json(nullptr);
  achieved["l"] = report.l ? json(*report.l) : json(nullptr);
  achieved["entropy_l"] = report.entropy_l ? json(*report.entropy_l) : json(nullptr);
  achieved["t"] = report.t ? json(*report.t) : json(nullptr);
  achieved["delta"] = report.delta ? json(*report.delta) : json(nullptr);
  achieved["basic_beta"] =
      report.basic_beta ? json(*report.basic_beta) : json(nullptr);
  if (report.enhanced_beta && report.enhanced_beta->satisfiable) {
    achieved["enhanced_beta"] = report.enhanced_beta->value;
  } else {
    achieved["enhanced_beta"] = nullptr;  // unsatisfiable or not computed
  }
  if (audit_extras && report.enhanced_beta) {
    achieved["enhanced_beta_satisfiable"] = report.enhanced_beta->satisfiable;
  }
  return achieved;
}

inline void write_report_file(const std::string& path, const json& report) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot open report file '" + path + "' for writing");
  }
  out << report.dump(2) << '\n';
}

}  // namespace detail

/// Runs a single-technique or multi-SA job: reads the input table, builds
/// the hierarchies, anonymizes, writes the output CSV and the report.
/// Throws UnachievableError (exit status 2) or InputError (exit status 1).
inline json run_job(const JobConfig& cfg) {
  if (cfg.input.empty()) {
    throw InputError("no input path given (flag --input or config \"input\")");
  }
  if (cfg.output.empty()) {
    throw InputError("no output path given (flag --output or config \"output\")");
  }
  if (!cfg.single && !cfg.multi) {
    throw InputError("config names no technique (field \"technique\" or \"multi_sa\")");
  }
  Dataset ds = load_csv(cfg.input, detail::role_map(cfg));
  HierarchySet hs = detail::build_hierarchies(cfg, ds);

  json report;
  auto start = std::chrono::steady_clock::now();
  if (cfg.single) {
    anonymity::AnonymizationResult result =
        anonymity::search(ds, hs, cfg.quasi_identifiers, cfg.sensitive_attribute,
                          cfg.single->spec);
    auto elapsed = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    write_csv(result.data, cfg.output);
    report["technique"] = cfg.single->technique_name;
    report["params"] = cfg.single->params_echo;
    report["transformation"] = result.transformation;
    report["suppressed"] = {{"count", result.suppressed_count},
                            {"percent", result.suppressed_percent}};
    report["achieved"] = detail::metric_report_json(result.achieved);
    report["duration_ms"] = elapsed;
  } else {
    anonymity::MultiSaResult result = anonymity::anonymize_multi_sa(
        ds, cfg.identifiers, cfg.quasi_identifiers, cfg.multi->stages,
        cfg.multi->strategy, hs, cfg.multi->promoted);
    auto elapsed = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    write_csv(result.data, cfg.output);
    report["technique"] = "multi_sa";
    report["params"] = cfg.multi->params_echo;
    report["transformation"] = result.transformation;
    report["suppressed"] = {{"count", result.suppressed_count},
                            {"percent", result.suppressed_percent}};
    json stages = json::array();
    for (const anonymity::StageReport& stage : result.stages) {
      stages.push_back({{"sensitive_attribute", stage.sensitive_attribute},
                        {"qi", stage.qi},
                        {"satisfied", stage.satisfied},
                        {"achieved", detail::metric_report_json(stage.achieved)}});
    }
    report["achieved"] =
        detail::metric_report_json(result.stages.back().achieved);
    report["stages"] = std::move(stages);
    report["duration_ms"] = elapsed;
  }
  detail::write_report_file(cfg.report, report);
  return report;
}

/// Metrics-only mode: report the table exactly as it stands.
inline json audit_job(const JobConfig& cfg) {
  if (cfg.input.empty()) {
    throw InputError("no input path given (flag --input or config \"input\")");
  }
  Dataset ds = load_csv(cfg.input, detail::role_map(cfg));
  auto start = std::chrono::steady_clock::now();
  metrics::MetricReport achieved =
      metrics::full_report(ds, cfg.quasi_identifiers, cfg.sensitive_attribute);
  auto elapsed = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  json report;
  report["achieved"] = detail::metric_report_json(achieved, /*audit_extras=*/true);
  report["duration_ms"] = elapsed;
  detail::write_report_file(cfg.report, report);
  return report;
}

/// Best-candidate diagnostics written when the search gives up.
inline json unachievable_report(const JobConfig& cfg, const UnachievableError& e) {
  json report;
  if (cfg.single) {
    report["technique"] = cfg.single->technique_name;
    report["params"] = cfg.single->params_echo;
  } else if (cfg.multi) {
    report["technique"] = "multi_sa";
    report["params"] = cfg.multi->params_echo;
  }
  report["unachievable"] = true;
  report["message"] = e.what();
  report["best_candidate"] = {{"transformation", e.best_transformation},
                              {"k", e.best_k},
                              {"suppressed_percent", e.best_suppressed_percent}};
  return report;
}

}  // namespace job
}  // namespace tabanon

#endif  // TABANON_JOB_HPP_
