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

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "tabanon/csv.hpp"
#include "tabanon/dataset.hpp"
#include "tabanon/distribution.hpp"
#include "tabanon/partition.hpp"
#include "test_support.hpp"

using tabanon::ColumnRole;
using tabanon::Column;
using tabanon::Dataset;
using tabanon::InputError;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("load_csv reads the hospital table") {
  Dataset ds = testsupport::load_hospital();
  CHECK(ds.row_count() == 13);
  CHECK(ds.column_count() == 6);
  CHECK(ds.column("name").role == ColumnRole::kIdentifier);
  CHECK(ds.column("disease").role == ColumnRole::kSensitive);
  CHECK(ds.cell(0, 0) == "Ramsha");
  CHECK(ds.cell(12, 5) == "Viral infection");
}

TEST_CASE("load_csv strips whitespace and defaults to insensitive") {
  auto path = temp_file("tabanon_strip.csv");
  write_file(path, " a , b \n 1 ,  x y \n2,z\n");
  Dataset ds = tabanon::load_csv(path.string(), {{"a", ColumnRole::kQuasiIdentifier}});
  CHECK(ds.column("a").role == ColumnRole::kQuasiIdentifier);
  CHECK(ds.column("b").role == ColumnRole::kInsensitive);
  CHECK(ds.cell(0, 0) == "1");
  CHECK(ds.cell(0, 1) == "x y");  // inner whitespace survives
  std::filesystem::remove(path);
}

TEST_CASE("load_csv edge cases and errors") {
  SECTION("header only gives an empty table") {
    auto path = temp_file("tabanon_empty.csv");
    write_file(path, "a,b\n");
    Dataset ds = tabanon::load_csv(path.string(), {});
    CHECK(ds.row_count() == 0);
    CHECK(ds.column_count() == 2);
    std::filesystem::remove(path);
  }
  SECTION("missing file") {
    CHECK_THROWS_AS(tabanon::load_csv("/nonexistent/nope.csv", {}), InputError);
  }
  SECTION("duplicate header names") {
    auto path = temp_file("tabanon_dup.csv");
    write_file(path, "a,a\n1,2\n");
    CHECK_THROWS_AS(tabanon::load_csv(path.string(), {}), InputError);
    std::filesystem::remove(path);
  }
  SECTION("role for an absent column") {
    auto path = temp_file("tabanon_absent.csv");
    write_file(path, "a,b\n1,2\n");
    CHECK_THROWS_WITH(
        tabanon::load_csv(path.string(), {{"zz", ColumnRole::kSensitive}}),
        Catch::Matchers::ContainsSubstring("zz"));
    std::filesystem::remove(path);
  }
  SECTION("ragged row") {
    auto path = temp_file("tabanon_ragged.csv");
    write_file(path, "a,b\n1,2\n3\n");
    CHECK_THROWS_AS(tabanon::load_csv(path.string(), {}), InputError);
    std::filesystem::remove(path);
  }
}

TEST_CASE("partition groups the hospital rows") {
  Dataset ds = testsupport::load_hospital();
  auto part = tabanon::partition(ds, testsupport::hospital_qi());
  REQUIRE(part.classes.size() == 11);

  std::multiset<std::size_t> sizes;
  for (const auto& cls : part.classes) sizes.insert(cls.size());
  CHECK(sizes.count(2) == 2);
  CHECK(sizes.count(1) == 9);

  // (24, Female, Kerala) pairs Yadu with Joan; (19, Male, Kerala) pairs
  // Rambha with John
  std::set<std::vector<std::size_t>> pairs;
  for (const auto& cls : part.classes) {
    if (cls.size() == 2) pairs.insert(cls);
  }
  CHECK(pairs.count({4, 7}) == 1);
  CHECK(pairs.count({9, 12}) == 1);
}

TEST_CASE("partition of a constant column is one class") {
  Column c{"q", ColumnRole::kQuasiIdentifier, {"x", "x", "x", "x"}};
  Dataset ds{std::vector<Column>{c}};
  auto part = tabanon::partition(ds, {"q"});
  REQUIRE(part.classes.size() == 1);
  CHECK(part.classes[0].size() == 4);
}

TEST_CASE("partition rejects non-quasi-identifier keys") {
  Dataset ds = testsupport::load_hospital();
  CHECK_THROWS_AS(tabanon::partition(ds, {"age", "religion"}), InputError);
  CHECK_THROWS_AS(tabanon::partition(ds, {"missing"}), InputError);
}

TEST_CASE("partition matches the quadratic oracle on random tables") {
  std::mt19937 rng(7001);
  for (int trial = 0; trial < 150; ++trial) {
    auto table = oracle::random_table(rng);
    auto part = tabanon::partition(table.ds, table.qi);
    auto expected = oracle::classes_of(table.ds, table.qi);

    std::size_t total = 0;
    for (const auto& cls : part.classes) total += cls.size();
    REQUIRE(total == table.ds.row_count());

    REQUIRE(part.classes.size() == expected.size());
    std::set<std::vector<std::size_t>> got(part.classes.begin(), part.classes.end());
    for (const auto& cls : expected) {
      REQUIRE(got.count(cls) == 1);
    }
  }
}

TEST_CASE("dropping a key column never increases the class count") {
  std::mt19937 rng(7002);
  for (int trial = 0; trial < 80; ++trial) {
    auto table = oracle::random_table(rng);
    if (table.qi.size() < 2) continue;
    auto full = tabanon::partition(table.ds, table.qi);
    std::vector<std::string> coarser(table.qi.begin(), table.qi.end() - 1);
    auto dropped = tabanon::partition(table.ds, coarser);
    CHECK(dropped.classes.size() <= full.classes.size());
  }
}

TEST_CASE("suppress_identifiers masks exactly the identifier columns") {
  Dataset ds = testsupport::load_hospital();
  Dataset masked = tabanon::suppress_identifiers(ds);
  for (std::size_t r = 0; r < masked.row_count(); ++r) {
    CHECK(masked.cell(r, 0) == "*");
  }
  CHECK(masked.column("age").cells == ds.column("age").cells);
  CHECK(masked.column("religion").cells == ds.column("religion").cells);

  SECTION("no identifier columns is a no-op") {
    Dataset plain = ds.with_roles({{"name", ColumnRole::kInsensitive}});
    CHECK(tabanon::suppress_identifiers(plain).same_cells(plain));
  }
  SECTION("two identifier columns are both masked") {
    Dataset two = ds.with_roles({{"religion", ColumnRole::kIdentifier}});
    Dataset out = tabanon::suppress_identifiers(two);
    for (std::size_t r = 0; r < out.row_count(); ++r) {
      CHECK(out.cell(r, 0) == "*");
      CHECK(out.cell(r, 4) == "*");
    }
  }
  SECTION("idempotent") {
    CHECK(tabanon::suppress_identifiers(masked).same_cells(masked));
  }
}

TEST_CASE("sa_distribution of the hospital diseases") {
  Dataset ds = testsupport::load_hospital();
  auto dist = tabanon::sa_distribution(ds, "disease");
  REQUIRE(dist.size() == 5);
  CHECK_THAT(dist.prob_of("Cancer"), Catch::Matchers::WithinAbs(5.0 / 13, 1e-12));
  CHECK_THAT(dist.prob_of("Viral infection"),
             Catch::Matchers::WithinAbs(2.0 / 13, 1e-12));
  CHECK_THAT(dist.prob_of("TB"), Catch::Matchers::WithinAbs(2.0 / 13, 1e-12));
  CHECK_THAT(dist.prob_of("No illness"),
             Catch::Matchers::WithinAbs(1.0 / 13, 1e-12));
  CHECK_THAT(dist.prob_of("Heart-related"),
             Catch::Matchers::WithinAbs(3.0 / 13, 1e-12));
  CHECK_FALSE(dist.numeric_order.has_value());
}

TEST_CASE("sa_distribution edge cases") {
  Dataset ds = testsupport::load_hospital();
  SECTION("single row selection") {
    std::vector<std::size_t> rows{6};
    auto dist = tabanon::sa_distribution(ds, "disease", &rows);
    REQUIRE(dist.size() == 1);
    CHECK(dist.values[0] == "No illness");
    CHECK(dist.probs[0] == 1.0);
  }
  SECTION("two equal values collapse") {
    std::vector<std::size_t> rows{0, 1};  // both Cancer
    auto dist = tabanon::sa_distribution(ds, "disease", &rows);
    REQUIRE(dist.size() == 1);
    CHECK(dist.probs[0] == 1.0);
  }
  SECTION("empty selection is an error") {
    std::vector<std::size_t> rows;
    CHECK_THROWS_AS(tabanon::sa_distribution(ds, "disease", &rows), InputError);
  }
  SECTION("non-sensitive column is an error") {
    CHECK_THROWS_AS(tabanon::sa_distribution(ds, "age"), InputError);
  }
  SECTION("numeric support is ordered") {
    Column c{"s", ColumnRole::kSensitive, {"10", "2", "2", "33"}};
    Dataset numeric{std::vector<Column>{c}};
    auto dist = tabanon::sa_distribution(numeric, "s");
    REQUIRE(dist.numeric_order.has_value());
    CHECK(dist.values[(*dist.numeric_order)[0]] == "2");
    CHECK(dist.values[(*dist.numeric_order)[1]] == "10");
    CHECK(dist.values[(*dist.numeric_order)[2]] == "33");
  }
}

TEST_CASE("sa_distribution probabilities sum to one and stay positive") {
  std::mt19937 rng(7003);
  for (int trial = 0; trial < 100; ++trial) {
    auto table = oracle::random_table(rng);
    auto dist = tabanon::sa_distribution(table.ds, table.sa);
    double sum = 0.0;
    for (double p : dist.probs) {
      CHECK(p > 0.0);
      sum += p;
    }
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("write_csv round-trips, quoting only where needed") {
  Column a{"plain", ColumnRole::kInsensitive, {"x", "with space", ""}};
  Column b{"tricky", ColumnRole::kInsensitive,
           {"a,b", "say \"hi\"", "line\nbreak"}};
  Dataset ds{std::vector<Column>{a, b}};

  auto path = temp_file("tabanon_roundtrip.csv");
  tabanon::write_csv(ds, path.string());
  Dataset back = tabanon::load_csv(path.string(), {});
  CHECK(back.same_cells(ds));

  std::ifstream in(path);
  std::string first_data_line;
  std::getline(in, first_data_line);  // header
  std::getline(in, first_data_line);
  CHECK(first_data_line == "x,\"a,b\"");
  std::filesystem::remove(path);
}

TEST_CASE("write_csv of an empty table emits only the header") {
  Column a{"a", ColumnRole::kInsensitive, {}};
  Column b{"b", ColumnRole::kInsensitive, {}};
  Dataset ds{std::vector<Column>{a, b}};
  auto path = temp_file("tabanon_header_only.csv");
  tabanon::write_csv(ds, path.string());
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == "a,b\n");
  std::filesystem::remove(path);
}

TEST_CASE("dataset constructor enforces its invariants") {
  Column a{"a", ColumnRole::kInsensitive, {"1", "2"}};
  Column short_b{"b", ColumnRole::kInsensitive, {"1"}};
  CHECK_THROWS_AS(Dataset(std::vector<Column>{a, short_b}), InputError);
  Column dup{"a", ColumnRole::kInsensitive, {"1", "2"}};
  CHECK_THROWS_AS(Dataset(std::vector<Column>{a, dup}), InputError);
}
