/*
 *   Copyright 2026 The Roundtable Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <roundtable/dataset_io.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "support/proc.hpp"

using roundtable::IdMap;
using roundtable::LoadOptions;
using roundtable::TrustRecord;
namespace ts = roundtable::testsupport;

namespace {

std::string temp_path(const std::string& dir, const std::string& name) {
    return dir + "/" + name;
}

}  // namespace

TEST_CASE("a single statement densifies to a two-entity network") {
    const std::string dir = ts::make_temp_dir("roundtable_io");
    const std::string path = temp_path(dir, "one.tsv");
    ts::write_file(path, "7\t9\t0.5\n");

    const auto loaded = roundtable::load_ternary(path);
    CHECK(loaded.dimension == 2);
    CHECK(loaded.malformed_lines == 0);
    REQUIRE(loaded.records.size() == 1);
    CHECK(loaded.records[0] == TrustRecord{0, 1, 0.5});
    CHECK(loaded.id_map.to_raw(0) == 7);
    CHECK(loaded.id_map.to_raw(1) == 9);
    CHECK(loaded.id_map.to_dense(9) == std::size_t{1});
    CHECK_FALSE(loaded.id_map.to_dense(8).has_value());
}

TEST_CASE("value scaling divides star levels into the unit interval") {
    const std::string dir = ts::make_temp_dir("roundtable_io");
    const std::string path = temp_path(dir, "stars.tsv");
    ts::write_file(path, "1\t2\t4\n2\t1\t5\n");

    LoadOptions options;
    options.value_scale = 5.0;
    const auto loaded = roundtable::load_ternary(path, options);
    REQUIRE(loaded.records.size() == 2);
    CHECK(loaded.records[0].value == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(loaded.records[1].value == 1.0);
}

TEST_CASE("raw ids densify in ascending raw order regardless of file order") {
    const std::string dir = ts::make_temp_dir("roundtable_io");
    const std::string path = temp_path(dir, "shuffled.tsv");
    ts::write_file(path, "5\t3\t0.1\n2\t7\t0.2\n7\t5\t0.3\n");

    const auto loaded = roundtable::load_ternary(path);
    CHECK(loaded.dimension == 4);
    CHECK(loaded.id_map.to_raw(0) == 2);
    CHECK(loaded.id_map.to_raw(1) == 3);
    CHECK(loaded.id_map.to_raw(2) == 5);
    CHECK(loaded.id_map.to_raw(3) == 7);
    // Records keep file order with translated ids.
    const std::vector<TrustRecord> expected = {{2, 1, 0.1}, {0, 3, 0.2}, {3, 2, 0.3}};
    CHECK(loaded.records == expected);
}

TEST_CASE("malformed lines are counted while good lines still load") {
    const std::string dir = ts::make_temp_dir("roundtable_io");
    const std::string path = temp_path(dir, "messy.tsv");
    ts::write_file(path,
                   "1\t2\t0.5\n"
                   "1\t2\n"              // two fields
                   "1\t2\t0.5\t9\n"      // four fields
                   "x\t2\t0.5\n"         // bad integer
                   "1\t2\tzero\n"        // bad floating value
                   "-1\t2\t0.5\n"        // negative id
                   "3\t4\t0.25\n");

    const auto loaded = roundtable::load_ternary(path);
    CHECK(loaded.malformed_lines == 5);
    REQUIRE(loaded.records.size() == 2);
    CHECK(loaded.records[1].value == 0.25);
    CHECK(loaded.dimension == 4);
}

TEST_CASE("comments, blank lines, and CRLF endings are tolerated") {
    const std::string dir = ts::make_temp_dir("roundtable_io");
    const std::string path = temp_path(dir, "crlf.tsv");
    ts::write_file(path,
                   "# trustor trustee value\r\n"
                   "\r\n"
                   "1\t2\t0.5\r\n"
                   "\n"
                   "2\t1\t0.75\r\n");

    const auto loaded = roundtable::load_ternary(path);
    CHECK(loaded.malformed_lines == 0);
    REQUIRE(loaded.records.size() == 2);
    CHECK(loaded.records[0].value == 0.5);
    CHECK(loaded.records[1].value == 0.75);
}

TEST_CASE("a header line is skipped only when announced") {
    const std::string dir = ts::make_temp_dir("roundtable_io");
    const std::string path = temp_path(dir, "header.csv");
    ts::write_file(path, "trustor,trustee,value\n1,2,0.5\n");

    LoadOptions options;
    options.delimiter = ',';
    options.has_header = true;
    const auto with_header = roundtable::load_ternary(path, options);
    CHECK(with_header.malformed_lines == 0);
    CHECK(with_header.records.size() == 1);

    options.has_header = false;
    const auto without = roundtable::load_ternary(path, options);
    CHECK(without.malformed_lines == 1);  // the header fails to parse
    CHECK(without.records.size() == 1);
}

TEST_CASE("out-of-range values report the file and line") {
    const std::string dir = ts::make_temp_dir("roundtable_io");
    const std::string path = temp_path(dir, "range.tsv");
    ts::write_file(path, "1\t2\t0.5\n1\t3\t1.5\n");

    CHECK_THROWS_WITH_AS(roundtable::load_ternary(path), doctest::Contains(":2:"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(roundtable::load_ternary(path),
                         doctest::Contains("range.tsv"), std::runtime_error);
}

TEST_CASE("empty and unreadable files are rejected") {
    const std::string dir = ts::make_temp_dir("roundtable_io");
    const std::string empty = temp_path(dir, "empty.tsv");
    ts::write_file(empty, "# only a comment\n");
    CHECK_THROWS_WITH_AS(roundtable::load_ternary(empty),
                         doctest::Contains("no records"), std::runtime_error);

    CHECK_THROWS_WITH_AS(roundtable::load_ternary(temp_path(dir, "missing.tsv")),
                         doctest::Contains("cannot open"), std::runtime_error);
}

TEST_CASE("write_ternary sorts by key and prints twelve significant digits") {
    const std::string dir = ts::make_temp_dir("roundtable_io");
    const std::string path = temp_path(dir, "out.tsv");
    const std::vector<TrustRecord> records = {
        {3, 1, 0.25}, {0, 2, 1.0 / 3.0}, {3, 0, 0.6224593312018546}};
    roundtable::write_ternary(records, path);

    CHECK(ts::read_file(path) ==
          "0\t2\t0.333333333333\n"
          "3\t0\t0.622459331202\n"
          "3\t1\t0.25\n");
}

TEST_CASE("write_ternary with an id map restores raw ids and round-trips") {
    const std::string dir = ts::make_temp_dir("roundtable_io");
    const std::string source = temp_path(dir, "source.tsv");
    ts::write_file(source, "40\t10\t0.5\n10\t20\t0.125\n20\t40\t0.75\n");
    const auto loaded = roundtable::load_ternary(source);

    const std::string echoed = temp_path(dir, "echoed.tsv");
    roundtable::write_ternary(loaded.records, loaded.id_map, echoed);
    CHECK(ts::read_file(echoed) ==
          "10\t20\t0.125\n"
          "20\t40\t0.75\n"
          "40\t10\t0.5\n");

    const auto reloaded = roundtable::load_ternary(echoed);
    CHECK(reloaded.dimension == loaded.dimension);
    // Same keyed content, just emitted in sorted order.
    auto sort_records = [](std::vector<TrustRecord> r) {
        std::sort(r.begin(), r.end(), [](const TrustRecord& a, const TrustRecord& b) {
            return a.trustor != b.trustor ? a.trustor < b.trustor
                                          : a.trustee < b.trustee;
        });
        return r;
    };
    CHECK(sort_records(reloaded.records) == sort_records(loaded.records));
}

TEST_CASE("alternate delimiters round-trip") {
    const std::string dir = ts::make_temp_dir("roundtable_io");
    const std::string path = temp_path(dir, "semi.csv");
    const std::vector<TrustRecord> records = {{1, 2, 0.5}, {2, 1, 0.25}};
    roundtable::write_ternary(records, path, ';');
    CHECK(ts::read_file(path) == "1;2;0.5\n2;1;0.25\n");

    LoadOptions options;
    options.delimiter = ';';
    const auto loaded = roundtable::load_ternary(path, options);
    CHECK(loaded.records.size() == 2);
    CHECK(loaded.id_map.to_raw(0) == 1);
}

TEST_CASE("IdMap validates construction and lookups") {
    const IdMap map(std::vector<std::uint64_t>{2, 5, 9});
    CHECK(map.size() == 3);
    CHECK(map.to_raw(2) == 9);
    CHECK(map.to_dense(5) == std::size_t{1});
    CHECK_FALSE(map.to_dense(3).has_value());
    CHECK_THROWS_AS(map.to_raw(3), std::out_of_range);

    CHECK_THROWS_AS(IdMap(std::vector<std::uint64_t>{5, 2}), std::invalid_argument);
    CHECK_THROWS_AS(IdMap(std::vector<std::uint64_t>{2, 2, 5}), std::invalid_argument);
    CHECK(IdMap().size() == 0);
}

TEST_CASE("dataset statistics match the published network shapes") {
    const auto epinions = roundtable::dataset_stats(49289, 139738, 664823);
    CHECK(epinions.sparsity_degree ==
          doctest::Approx(664823.0 / (49289.0 * 139738.0)).epsilon(1e-12));
    CHECK(epinions.mean_friends_per_user ==
          doctest::Approx(664823.0 / 49289.0).epsilon(1e-12));

    const auto film = roundtable::dataset_stats(7375, 99746, 278483);
    CHECK(film.sparsity_degree ==
          doctest::Approx(278483.0 / (7375.0 * 99746.0)).epsilon(1e-12));

    const auto square = roundtable::dataset_stats(1000, 0, 5000);
    CHECK(square.num_items == 0);
    CHECK(square.sparsity_degree == doctest::Approx(5000.0 / 1e6).epsilon(1e-12));

    const auto none = roundtable::dataset_stats(10, 0, 0);
    CHECK(none.sparsity_degree == 0.0);
    CHECK(none.mean_friends_per_user == 0.0);

    CHECK_THROWS_AS(roundtable::dataset_stats(0, 0, 1), std::invalid_argument);

    const std::vector<TrustRecord> records = {{0, 1, 0.5}, {1, 0, 0.5}, {1, 2, 0.5}};
    const auto from_records = roundtable::dataset_stats(records, 3);
    CHECK(from_records.num_trust_edges == 3);
    CHECK(from_records.sparsity_degree == doctest::Approx(3.0 / 9.0).epsilon(1e-12));
}
