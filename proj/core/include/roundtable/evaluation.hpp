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

#ifndef ROUNDTABLE_EVALUATION_HPP_
#define ROUNDTABLE_EVALUATION_HPP_

// The evaluation harness: 50/50 compared-validation splits, controlled
// sparsification, cold-start filtering, and the experiment driver that
// scores the mining engine against the baseline trust metrics with
// MAE/RMSE on all-users and cold-start populations.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <roundtable/baselines.hpp>
#include <roundtable/rga.hpp>
#include <roundtable/trust_matrix.hpp>

namespace roundtable {

/// One 50/50 compared-validation split: the predict half builds the
/// matrix the methods see, the test half supplies scored ground truth.
struct SplitPair {
    std::vector<TrustRecord> predict_set;
    std::vector<TrustRecord> test_set;
    std::uint64_t seed = 0;
};

/**
 * Uniform shuffle of the records under `seed` (Fisher-Yates over a fixed
 * 64-bit generator, so the split is identical on every platform), first
 * half predict, second half test; on odd counts the predict half takes the
 * extra record. Throws when fewer than 2 records are given or when two
 * records share a (trustor, trustee) key, since the halves must be
 * key-disjoint.
 */
SplitPair split_half(std::span<const TrustRecord> records, std::uint64_t seed);

/**
 * Entities whose out-degree, not counting a stored self-loop, is at most
 * `threshold`; sorted ascending. Entities without any statement count as
 * degree 0.
 */
std::vector<std::size_t> cold_start_users(const SparseTrustMatrix& matrix,
                                          std::size_t threshold);

/**
 * Independent Bernoulli thinning to a target sparsity degree: every stored
 * entry survives with probability target_degree / current_degree, values
 * unchanged. Entries are visited in row-major order under a fixed 64-bit
 * generator, so a seed fully determines the outcome. Throws when
 * target_degree is negative or exceeds the current degree.
 */
SparseTrustMatrix sparsify(const SparseTrustMatrix& matrix, double target_degree,
                           std::uint64_t seed);

/// How predictions and ground truth are brought onto one scale before
/// MAE/RMSE. normalized maps raw values into the row-softmax space the
/// mining engine predicts in; raw_rescaled instead divides the engine's
/// predictions by their row maximum and scores in raw trust space.
enum class ScoringMode { normalized, raw_rescaled };

/// One method entry for run_experiment: "rga" uses the rga options, any
/// other known name ("mole_trust", "guha_propagation", "tidal_trust") uses
/// the baseline block.
struct MethodSpec {
    std::string name;
    RgaOptions rga;
    BaselineConfig baseline;
};

struct ExperimentConfig {
    std::vector<MethodSpec> methods;
    std::uint64_t seed = 1;
    std::size_t repetitions = 5;
    std::size_t cold_start_threshold = 5;
    ScoringMode scoring = ScoringMode::normalized;
};

/**
 * One report row: a (method, population, repetition) cell of the run.
 * repetition is "1".."R" for single runs and "mean" for the per-population
 * average row; counts are doubles because the mean row averages them.
 * n_tested counts the population's test pairs, n_predictable the subset
 * the method produced a prediction for (the MAE/RMSE denominator); when
 * n_predictable is 0 the metrics are reported as NaN.
 */
struct EvaluationReport {
    std::string method;
    std::string population;  // "all_users" | "cold_start"
    std::string repetition;
    double mae = 0.0;
    double rmse = 0.0;
    double n_tested = 0.0;
    double n_predictable = 0.0;
    double pre_sparsity = 0.0;
    double post_sparsity = 0.0;
    std::uint64_t seed = 0;
};

struct ExperimentResult {
    std::vector<EvaluationReport> rows;
    /// (method name, diagnostic) for methods that threw; their rows are
    /// dropped while the other methods proceed.
    std::vector<std::pair<std::string, std::string>> failures;
};

/**
 * The compared-validation driver. Deduplicates the dataset (last record
 * wins per key), then for each repetition derives a sub-seed, splits
 * 50/50, builds the predict matrix, runs every method on it, and scores
 * MAE/RMSE on the all-users and cold-start populations. Emits one row per
 * (method, population, repetition) plus a mean row. pre_sparsity is the
 * predict matrix's degree; post_sparsity is the degree of the matrix a
 * method materializes (mined aggregate or belief matrix), or pre_sparsity
 * for the per-pair methods.
 */
ExperimentResult run_experiment(std::span<const TrustRecord> dataset, std::size_t m,
                                const ExperimentConfig& config);

/// Writes rows as CSV with the pinned column set. Throws on I/O failure.
void write_report_csv(std::span<const EvaluationReport> rows, const std::string& path);

/// Stateless sub-seed derivation (splitmix64-style mix), used for
/// per-repetition streams; stream 0 is reserved for the master seed space.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace roundtable

#endif  // ROUNDTABLE_EVALUATION_HPP_
