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

// Shared fixtures: the 13-row hospital table, its interval/suppression
// hierarchies, and the frozen expected outputs of the two golden runs.

#ifndef TABANON_TESTS_TEST_SUPPORT_HPP_
#define TABANON_TESTS_TEST_SUPPORT_HPP_

#include <array>
#include <string>
#include <vector>

#include "tabanon/csv.hpp"
#include "tabanon/dataset.hpp"
#include "tabanon/hierarchy.hpp"

namespace testsupport {

inline std::string data_path(const std::string& name) {
  return std::string(TABANON_TEST_DATA_DIR) + "/" + name;
}

inline const std::vector<std::string>& hospital_qi() {
  static const std::vector<std::string> qi{"age", "gender", "city"};
  return qi;
}

inline tabanon::Dataset load_hospital() {
  using tabanon::ColumnRole;
  return tabanon::load_csv(data_path("hospital.csv"),
                           {{"name", ColumnRole::kIdentifier},
                            {"age", ColumnRole::kQuasiIdentifier},
                            {"gender", ColumnRole::kQuasiIdentifier},
                            {"city", ColumnRole::kQuasiIdentifier},
                            {"religion", ColumnRole::kInsensitive},
                            {"disease", ColumnRole::kSensitive}});
}

/// Age generalized to 5- then 10-year intervals; gender and city have a
/// single suppression level.
inline tabanon::HierarchySet hospital_hierarchies(const tabanon::Dataset& ds) {
  tabanon::HierarchySet hs;
  hs.emplace("age", tabanon::interval_hierarchy("age", ds.column("age").cells,
                                                0, 100, {5, 10}));
  hs.emplace("gender",
             tabanon::suppress_only_hierarchy("gender", ds.column("gender").cells));
  hs.emplace("city",
             tabanon::suppress_only_hierarchy("city", ds.column("city").cells));
  return hs;
}

struct ExpectedRow {
  std::array<const char*, 6> cells;  // name, age, gender, city, religion, disease
};

/// 2-anonymous output: ages in 10-year intervals, everything else raw.
inline const std::vector<ExpectedRow>& expected_k2() {
  static const std::vector<ExpectedRow> rows{
      {{"*", "[20, 30)", "Female", "Tamil Nadu", "Hindu", "Cancer"}},
      {{"*", "[20, 30)", "Male", "Tamil Nadu", "Hindu", "Cancer"}},
      {{"*", "[20, 30)", "Male", "Tamil Nadu", "Hindu", "Cancer"}},
      {{"*", "[20, 30)", "Male", "Tamil Nadu", "Hindu", "Cancer"}},
      {{"*", "[20, 30)", "Female", "Kerala", "Hindu", "Viral infection"}},
      {{"*", "[20, 30)", "Female", "Tamil Nadu", "Muslim", "TB"}},
      {{"*", "[20, 30)", "Male", "Karnataka", "Parsi", "No illness"}},
      {{"*", "[20, 30)", "Female", "Kerala", "Christian", "Heart-related"}},
      {{"*", "[20, 30)", "Male", "Karnataka", "Buddhist", "TB"}},
      {{"*", "[10, 20)", "Male", "Kerala", "Hindu", "Cancer"}},
      {{"*", "[20, 30)", "Male", "Karnataka", "Hindu", "Heart-related"}},
      {{"*", "[10, 20)", "Male", "Kerala", "Christian", "Heart-related"}},
      {{"*", "[10, 20)", "Male", "Kerala", "Christian", "Viral infection"}},
  };
  return rows;
}

/// 2-anonymous and 2-diverse output: ages in 10-year intervals and the
/// city column suppressed.
inline const std::vector<ExpectedRow>& expected_k2_l2() {
  static const std::vector<ExpectedRow> rows{
      {{"*", "[20, 30)", "Female", "*", "Hindu", "Cancer"}},
      {{"*", "[20, 30)", "Male", "*", "Hindu", "Cancer"}},
      {{"*", "[20, 30)", "Male", "*", "Hindu", "Cancer"}},
      {{"*", "[20, 30)", "Male", "*", "Hindu", "Cancer"}},
      {{"*", "[20, 30)", "Female", "*", "Hindu", "Viral infection"}},
      {{"*", "[20, 30)", "Female", "*", "Muslim", "TB"}},
      {{"*", "[20, 30)", "Male", "*", "Parsi", "No illness"}},
      {{"*", "[20, 30)", "Female", "*", "Christian", "Heart-related"}},
      {{"*", "[20, 30)", "Male", "*", "Buddhist", "TB"}},
      {{"*", "[10, 20)", "Male", "*", "Hindu", "Cancer"}},
      {{"*", "[20, 30)", "Male", "*", "Hindu", "Heart-related"}},
      {{"*", "[10, 20)", "Male", "*", "Christian", "Heart-related"}},
      {{"*", "[10, 20)", "Male", "*", "Christian", "Viral infection"}},
  };
  return rows;
}

inline bool matches_expected(const tabanon::Dataset& ds,
                             const std::vector<ExpectedRow>& expected) {
  if (ds.row_count() != expected.size() || ds.column_count() != 6) return false;
  for (std::size_t r = 0; r < expected.size(); ++r) {
    for (std::size_t c = 0; c < 6; ++c) {
      if (ds.cell(r, c) != expected[r].cells[c]) return false;
    }
  }
  return true;
}

}  // namespace testsupport

#endif  // TABANON_TESTS_TEST_SUPPORT_HPP_
