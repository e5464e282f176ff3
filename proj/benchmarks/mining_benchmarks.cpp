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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include <roundtable/rga.hpp>
#include <roundtable/trust_matrix.hpp>

namespace {

using roundtable::SparseTrustMatrix;
using roundtable::TrustRecord;

/// Deterministic random trust network with roughly `edges` statements.
SparseTrustMatrix random_network(std::uint64_t seed, std::size_t m,
                                 std::size_t edges) {
    std::uint64_t state = seed;
    const auto next = [&state]() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    std::vector<TrustRecord> records;
    records.reserve(edges);
    for (std::size_t k = 0; k < edges; ++k) {
        const std::size_t i = next() % m;
        const std::size_t j = next() % m;
        const double u = double(next() >> 11) * 0x1.0p-53;
        records.push_back({i, j, 0.05 + 0.95 * u});
    }
    return SparseTrustMatrix::from_records(records, m);
}

void BM_spmm(benchmark::State& state) {
    const std::size_t m = std::size_t(state.range(0));
    const auto g = roundtable::softmax_normalize(
                       roundtable::inject_self_confidence(
                           random_network(7, m, 10 * m)))
                       .G;
    for (auto _ : state) {
        auto product = roundtable::spmm(g, g);
        benchmark::DoNotOptimize(product);
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(g.nnz()));
}
BENCHMARK(BM_spmm)->Arg(1000)->Arg(4000)->Arg(16000)->Unit(benchmark::kMillisecond);

void BM_softmax_normalize(benchmark::State& state) {
    const std::size_t m = std::size_t(state.range(0));
    const auto injected =
        roundtable::inject_self_confidence(random_network(11, m, 10 * m));
    for (auto _ : state) {
        auto normalized = roundtable::softmax_normalize(injected);
        benchmark::DoNotOptimize(normalized);
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) *
                            std::int64_t(injected.nnz()));
}
BENCHMARK(BM_softmax_normalize)
    ->Arg(1000)
    ->Arg(16000)
    ->Unit(benchmark::kMillisecond);

void BM_run_rga(benchmark::State& state) {
    const std::size_t m = std::size_t(state.range(0));
    const auto network = random_network(13, m, 5 * m);
    roundtable::RgaOptions options;
    options.keep_per_depth = false;
    for (auto _ : state) {
        auto mined = roundtable::run_rga(network, options);
        benchmark::DoNotOptimize(mined);
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) *
                            std::int64_t(network.nnz()));
}
BENCHMARK(BM_run_rga)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
