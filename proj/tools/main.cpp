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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tabanon/job.hpp"
#include "tabanon/tabanon.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitUnachievable = 2;

void print_summary(const nlohmann::json& report) {
  if (report.contains("technique")) {
    std::cout << "technique:      " << report.at("technique").get<std::string>()
              << '\n';
  }
  if (report.contains("transformation")) {
    std::cout << "transformation: " << report.at("transformation").dump() << '\n';
  }
  if (report.contains("suppressed")) {
    const auto& s = report.at("suppressed");
    std::cout << "suppressed:     " << s.at("count").get<long>() << " rows ("
              << s.at("percent").get<double>() << "%)\n";
  }
  std::cout << "achieved:       " << report.at("achieved").dump() << '\n';
  std::cout << "duration_ms:    " << report.at("duration_ms").get<double>()
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Anonymize tabular data with generalization hierarchies and bounded "
      "record suppression, or audit the privacy level of a table"};

  std::string input_path, config_path, output_path, report_path;
  bool audit = false;
  bool seedless = false;
  app.add_option("--input", input_path, "Input CSV (overrides the config)");
  app.add_option("--config", config_path, "Job configuration JSON")->required();
  app.add_option("--output", output_path, "Anonymized CSV (overrides the config)");
  app.add_option("--report", report_path, "Report JSON (overrides the config)");
  app.add_flag("--audit", audit, "Only compute the metric report, change nothing");
  app.add_flag("--seedless", seedless,
               "Deterministic run (always on; accepted for interface stability)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  tabanon::job::JobConfig cfg;
  try {
    cfg = tabanon::job::load_job_config(config_path);
    if (!input_path.empty()) cfg.input = input_path;
    if (!output_path.empty()) cfg.output = output_path;
    if (!report_path.empty()) cfg.report = report_path;
  } catch (const tabanon::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    nlohmann::json report =
        audit ? tabanon::job::audit_job(cfg) : tabanon::job::run_job(cfg);
    print_summary(report);
    if (cfg.report.empty()) {
      std::cout << report.dump(2) << '\n';
    }
    return kExitOk;
  } catch (const tabanon::UnachievableError& e) {
    std::cerr << "unachievable: " << e.what() << '\n';
    try {
      nlohmann::json report = tabanon::job::unachievable_report(cfg, e);
      tabanon::job::detail::write_report_file(cfg.report, report);
      if (cfg.report.empty()) {
        std::cerr << report.dump(2) << '\n';
      }
    } catch (const tabanon::Error& write_error) {
      std::cerr << "error: " << write_error.what() << '\n';
    }
    return kExitUnachievable;
  } catch (const tabanon::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}
