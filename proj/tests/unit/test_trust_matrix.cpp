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

#include <roundtable/trust_matrix.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "support/dense_reference.hpp"
#include "support/test_graphs.hpp"

using roundtable::SparseTrustMatrix;
using roundtable::SpmmOptions;
using roundtable::TrustRecord;
namespace ts = roundtable::testsupport;

TEST_CASE("from_records stores sorted rows and answers point queries") {
    const std::vector<TrustRecord> records = {{0, 2, 0.8}, {0, 1, 0.3}, {1, 2, 0.5}};
    const auto s = SparseTrustMatrix::from_records(records, 3);
    CHECK(s.dim() == 3);
    CHECK(s.nnz() == 3);
    CHECK_FALSE(s.empty());
    CHECK(s.get(0, 1) == 0.3);
    CHECK(s.get(0, 2) == 0.8);
    CHECK(s.get(1, 2) == 0.5);
    CHECK_FALSE(s.get(1, 0).has_value());
    CHECK_FALSE(s.get(2, 2).has_value());
    const auto row0 = s.row(0);
    REQUIRE(row0.size() == 2);
    CHECK(row0.cols[0] == 1);
    CHECK(row0.cols[1] == 2);
    CHECK(row0.vals[0] == 0.3);
    CHECK(row0.vals[1] == 0.8);
    CHECK(s.row(2).size() == 0);
}

TEST_CASE("from_records resolves duplicate keys last-wins") {
    const std::vector<TrustRecord> records = {{0, 1, 0.3}, {0, 1, 0.9}};
    const auto s = SparseTrustMatrix::from_records(records, 2);
    CHECK(s.nnz() == 1);
    CHECK(s.get(0, 1) == 0.9);
}

TEST_CASE("from_records drops explicit zeros, including zero-overwrites") {
    const std::vector<TrustRecord> zero_only = {{0, 1, 0.0}};
    CHECK(SparseTrustMatrix::from_records(zero_only, 2).empty());

    const std::vector<TrustRecord> overwritten = {{0, 1, 0.5}, {0, 1, 0.0}};
    const auto s = SparseTrustMatrix::from_records(overwritten, 2);
    CHECK(s.nnz() == 0);
    CHECK_FALSE(s.get(0, 1).has_value());
}

TEST_CASE("from_records rejects bad ids and values with the record index") {
    const std::vector<TrustRecord> bad_id = {{0, 1, 0.5}, {3, 0, 0.5}};
    CHECK_THROWS_WITH_AS(SparseTrustMatrix::from_records(bad_id, 3).nnz(),
                         doctest::Contains("record 1"), std::out_of_range);

    const std::vector<TrustRecord> bad_value = {{0, 1, 1.5}};
    CHECK_THROWS_AS(SparseTrustMatrix::from_records(bad_value, 2).nnz(),
                    std::invalid_argument);
    const std::vector<TrustRecord> negative = {{0, 1, -0.1}};
    CHECK_THROWS_AS(SparseTrustMatrix::from_records(negative, 2).nnz(),
                    std::invalid_argument);
    const std::vector<TrustRecord> nan_value = {
        {0, 1, std::numeric_limits<double>::quiet_NaN()}};
    CHECK_THROWS_AS(SparseTrustMatrix::from_records(nan_value, 2).nnz(),
                    std::invalid_argument);
}

TEST_CASE("from_records rejects dimensions beyond the 32-bit id space") {
    const std::vector<TrustRecord> empty;
    CHECK_THROWS_AS(
        SparseTrustMatrix::from_records(empty, (std::size_t(1) << 32) + 1).dim(),
        std::invalid_argument);
}

TEST_CASE("from_csr equals the record-built matrix") {
    const std::vector<TrustRecord> records = {{0, 0, 0.2}, {0, 1, 0.4}, {2, 1, 0.9}};
    const auto via_records = SparseTrustMatrix::from_records(records, 3);
    const auto via_csr =
        SparseTrustMatrix::from_csr(3, {0, 2, 2, 3}, {0, 1, 1}, {0.2, 0.4, 0.9});
    CHECK(via_csr == via_records);
    CHECK_THROWS_AS(SparseTrustMatrix::from_csr(2, {0, 1}, {0}, {0.5}).dim(),
                    std::invalid_argument);
}

TEST_CASE("sparsity degree matches the stored-fraction formula") {
    CHECK(roundtable::sparsity_degree(664823, 49289, 139738) ==
          doctest::Approx(664823.0 / (49289.0 * 139738.0)).epsilon(1e-12));
    CHECK(roundtable::sparsity_degree(278483, 7375, 99746) ==
          doctest::Approx(278483.0 / (7375.0 * 99746.0)).epsilon(1e-12));
    CHECK(roundtable::sparsity_degree(16830939, 129490, 58541) ==
          doctest::Approx(16830939.0 / (129490.0 * 58541.0)).epsilon(1e-12));
    CHECK(roundtable::sparsity_degree(0, 10, 10) == 0.0);
    CHECK_THROWS_AS(roundtable::sparsity_degree(1, 0, 5), std::invalid_argument);

    const auto s = SparseTrustMatrix::from_records(
        std::vector<TrustRecord>{{0, 1, 0.5}, {1, 0, 0.5}}, 4);
    CHECK(s.sparsity_degree() == doctest::Approx(2.0 / 16.0).epsilon(1e-15));
}

TEST_CASE("spmm matches the dense reference on random graphs") {
    for (const std::uint64_t seed : {11ULL, 12ULL, 13ULL, 14ULL}) {
        for (const double density : {0.05, 0.2, 0.6}) {
            const std::size_t m = 16 * (seed % 4 + 1);  // 16..64
            const auto ra = ts::random_graph(seed * 2 + 1, m, density);
            const auto rb = ts::random_graph(seed * 2 + 2, m, density);
            const auto a = SparseTrustMatrix::from_records(ra, m);
            const auto b = SparseTrustMatrix::from_records(rb, m);
            const auto product = roundtable::spmm(a, b);
            const auto expected =
                ts::dense_matmul(ts::dense_from_records(ra, m), ts::dense_from_records(rb, m));
            CHECK(ts::max_abs_diff(expected, product) <= 1e-12);
        }
    }
}

TEST_CASE("spmm with the identity preserves the matrix bitwise") {
    const std::size_t m = 17;
    std::vector<TrustRecord> diag;
    for (std::size_t i = 0; i < m; ++i) diag.push_back({i, i, 1.0});
    const auto identity = SparseTrustMatrix::from_records(diag, m);
    const auto a =
        SparseTrustMatrix::from_records(ts::random_graph(99, m, 0.3), m);
    CHECK(roundtable::spmm(identity, a) == a);
    CHECK(roundtable::spmm(a, identity) == a);
}

TEST_CASE("spmm is bit-identical across thread counts") {
    const std::size_t m = 40;
    const auto a = SparseTrustMatrix::from_records(ts::random_graph(7, m, 0.25), m);
    const auto b = SparseTrustMatrix::from_records(ts::random_graph(8, m, 0.25), m);
    SpmmOptions one;
    one.threads = 1;
    const auto reference = roundtable::spmm(a, b, one);
    for (const unsigned threads : {2u, 3u, 4u, 8u}) {
        SpmmOptions options;
        options.threads = threads;
        CHECK(roundtable::spmm(a, b, options) == reference);
    }
}

TEST_CASE("spmm drop tolerance removes small products") {
    const std::vector<TrustRecord> records = {{0, 0, 0.5}, {0, 1, 0.5}};
    const auto a = SparseTrustMatrix::from_records(records, 2);
    SpmmOptions options;
    options.drop_tolerance = 0.3;
    CHECK(roundtable::spmm(a, a, options).nnz() == 0);
    CHECK(roundtable::spmm(a, a).nnz() == 2);
}

TEST_CASE("spmm rejects dimension mismatches") {
    const auto a = SparseTrustMatrix::from_records(
        std::vector<TrustRecord>{{0, 1, 0.5}}, 2);
    const auto b = SparseTrustMatrix::from_records(
        std::vector<TrustRecord>{{0, 1, 0.5}}, 3);
    CHECK_THROWS_AS(roundtable::spmm(a, b), std::invalid_argument);
}

TEST_CASE("add and scale match the dense reference") {
    const std::size_t m = 23;
    const auto ra = ts::random_graph(31, m, 0.3);
    const auto rb = ts::random_graph(32, m, 0.3);
    const auto a = SparseTrustMatrix::from_records(ra, m);
    const auto b = SparseTrustMatrix::from_records(rb, m);

    const auto sum = roundtable::add(a, b);
    const auto da = ts::dense_from_records(ra, m);
    const auto db = ts::dense_from_records(rb, m);
    ts::DenseMatrix expected = ts::DenseMatrix::zero(m);
    for (std::size_t i = 0; i < m * m; ++i) expected.a[i] = da.a[i] + db.a[i];
    CHECK(ts::max_abs_diff(expected, sum) <= 1e-15);

    const auto scaled = roundtable::scale(a, 0.25);
    ts::DenseMatrix expected_scaled = ts::DenseMatrix::zero(m);
    for (std::size_t i = 0; i < m * m; ++i) expected_scaled.a[i] = da.a[i] * 0.25;
    CHECK(ts::max_abs_diff(expected_scaled, scaled) <= 1e-15);

    CHECK(roundtable::scale(a, 0.0).nnz() == 0);
    const auto c = SparseTrustMatrix::from_records(std::vector<TrustRecord>{{0, 0, 1.0}}, 1);
    CHECK_THROWS_AS(roundtable::add(a, c), std::invalid_argument);
}

TEST_CASE("transpose flips coordinates and is an involution") {
    const std::vector<TrustRecord> records = {{0, 2, 0.8}, {1, 0, 0.3}};
    const auto s = SparseTrustMatrix::from_records(records, 3);
    const auto t = s.transpose();
    CHECK(t.get(2, 0) == 0.8);
    CHECK(t.get(0, 1) == 0.3);
    CHECK_FALSE(t.get(0, 2).has_value());
    CHECK(t.transpose() == s);

    const auto random =
        SparseTrustMatrix::from_records(ts::random_graph(55, 31, 0.2), 31);
    CHECK(random.transpose().transpose() == random);
}

TEST_CASE("trust_list returns the sorted adjacency of one entity") {
    const std::vector<TrustRecord> records = {{1, 3, 0.5}, {1, 0, 0.2}, {0, 1, 0.9}};
    const auto s = SparseTrustMatrix::from_records(records, 4);
    const auto list = s.trust_list(1);
    CHECK(list.entity == 1);
    REQUIRE(list.neighbors.size() == 2);
    CHECK(list.neighbors[0] == std::pair<std::size_t, double>{0, 0.2});
    CHECK(list.neighbors[1] == std::pair<std::size_t, double>{3, 0.5});
    CHECK(s.trust_list(2).neighbors.empty());
    CHECK_THROWS_AS(s.trust_list(4), std::out_of_range);
    CHECK_THROWS_AS(s.row(4), std::out_of_range);
}

TEST_CASE("to_records round-trips through from_records") {
    const auto original =
        SparseTrustMatrix::from_records(ts::random_graph(77, 29, 0.15), 29);
    const auto records = original.to_records();
    for (std::size_t i = 1; i < records.size(); ++i) {
        const bool ordered = records[i - 1].trustor < records[i].trustor ||
                             (records[i - 1].trustor == records[i].trustor &&
                              records[i - 1].trustee < records[i].trustee);
        CHECK(ordered);
    }
    CHECK(SparseTrustMatrix::from_records(records, 29) == original);
}

TEST_CASE("default-constructed matrix is an empty zero-dimension matrix") {
    const SparseTrustMatrix s;
    CHECK(s.dim() == 0);
    CHECK(s.nnz() == 0);
    CHECK(s.empty());
    CHECK(s.to_records().empty());
}
