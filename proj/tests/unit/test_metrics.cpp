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

#include <roundtable/metrics.hpp>

#include <cmath>
#include <utility>
#include <vector>

#include "support/test_graphs.hpp"

namespace ts = roundtable::testsupport;

using Pairs = std::vector<std::pair<double, double>>;

TEST_CASE("mae averages absolute deviations") {
    const Pairs pairs = {{0.3, 0.0}, {0.0, 0.4}};
    CHECK(roundtable::mae(pairs) == doctest::Approx(0.35).epsilon(1e-12));
}

TEST_CASE("rmse averages squared deviations under the root") {
    const Pairs pairs = {{0.3, 0.0}, {0.0, 0.4}};
    CHECK(roundtable::rmse(pairs) ==
          doctest::Approx(0.3535533905932738).epsilon(1e-12));
}

TEST_CASE("perfect predictions score zero under both metrics") {
    const Pairs pairs = {{0.25, 0.25}, {0.8, 0.8}, {0.0, 0.0}};
    CHECK(roundtable::mae(pairs) == 0.0);
    CHECK(roundtable::rmse(pairs) == 0.0);
}

TEST_CASE("both metrics reject empty collections") {
    const Pairs empty;
    CHECK_THROWS_AS(roundtable::mae(empty), std::invalid_argument);
    CHECK_THROWS_AS(roundtable::rmse(empty), std::invalid_argument);
}

TEST_CASE("rmse dominates mae on random residuals") {
    ts::SplitMix64 rng(97);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.next() % 20;
        Pairs pairs;
        pairs.reserve(n);
        for (std::size_t k = 0; k < n; ++k)
            pairs.emplace_back(rng.next_unit(), rng.next_unit());
        const double a = roundtable::mae(pairs);
        const double r = roundtable::rmse(pairs);
        CHECK(r >= a - 1e-15);
    }
}

TEST_CASE("a single pair gives equal mae and rmse") {
    const Pairs pairs = {{0.9, 0.2}};
    CHECK(roundtable::mae(pairs) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(roundtable::rmse(pairs) == doctest::Approx(0.7).epsilon(1e-15));
}
