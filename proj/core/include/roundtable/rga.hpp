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

#ifndef ROUNDTABLE_RGA_HPP_
#define ROUNDTABLE_RGA_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <roundtable/trust_matrix.hpp>

namespace roundtable {

/**
 * Row-stochastic gossip matrix: the softmax-normalized trust matrix G
 * together with the per-row sums of exponentials its entries were divided
 * by. The denominators are kept because the evaluation harness maps raw
 * trust values into the same normalized space using them.
 */
struct NormalizedTrustMatrix {
    SparseTrustMatrix G;
    std::vector<double> row_denominators;
};

/// Which depth matrices feed the aggregated result: the normalized input
/// T(0) plus everything mined, or only the mined depths T(1)..T(r).
enum class AggregationMode { include_depth0, mine_only };

struct RgaOptions {
    /// Stop once |nnz(r+1) - nnz(r)| falls below this count threshold.
    /// Counts are integers, so the default 1 stops when the nonzero
    /// pattern reaches a fixpoint. Must be >= 1.
    double epsilon = 1.0;
    /// Hard cap on propagation steps. Must be >= 1.
    std::size_t max_depth = 6;
    AggregationMode aggregation = AggregationMode::include_depth0;
    /// Retain every depth matrix in the result. Disable for large runs;
    /// the aggregate is folded incrementally either way, in the same
    /// left-to-right order, so the aggregated matrix is bit-identical.
    bool keep_per_depth = true;
    /// Forwarded to the product kernel; 0 keeps every nonzero product.
    double drop_tolerance = 0.0;
    /// Worker threads for the product kernel; 0 picks hardware concurrency.
    unsigned threads = 0;
    /// Optional progress hook, called once per recorded depth with the
    /// depth index and its nonzero count (depth 0 reports G itself).
    std::function<void(std::size_t depth, std::size_t nnz)> on_depth;
};

/**
 * Everything one mining run produces. depth is the number of propagation
 * steps r actually performed; nnz_history holds the nonzero counts of
 * T(0)..T(r); converged tells whether the epsilon test fired (false means
 * the max_depth cap cut the run short).
 */
struct PropagationResult {
    std::size_t depth = 0;
    std::vector<SparseTrustMatrix> per_depth;
    std::vector<std::size_t> nnz_history;
    SparseTrustMatrix aggregated;
    bool converged = false;
    NormalizedTrustMatrix normalized;
};

/**
 * Returns a copy with the diagonal forced to 1.0 on every row: each entity
 * fully trusts itself. Any stored diagonal value is overwritten.
 */
SparseTrustMatrix inject_self_confidence(const SparseTrustMatrix& s);

/**
 * Softmax over the stored entries of each row: G(i,j) = exp(P(i,j)) divided
 * by the sum of exp over row i's stored entries. Absent entries stay
 * absent, so each output row sums to 1 over its stored pattern. Throws when
 * a row has no stored entries (inject self-confidence first).
 */
NormalizedTrustMatrix softmax_normalize(const SparseTrustMatrix& s);

/// One transitivity step T_next = G * T_prev.
SparseTrustMatrix propagate_step(const NormalizedTrustMatrix& g,
                                 const SparseTrustMatrix& t_prev,
                                 const SpmmOptions& options = {});

/// Entrywise mean of the given matrices. Throws on an empty collection or
/// mixed dimensions.
SparseTrustMatrix aggregate(std::span<const SparseTrustMatrix> per_depth);

/**
 * The full mining pipeline: inject self-confidence, normalize, iterate
 * propagate_step while recording nonzero counts, stop on the epsilon test
 * or at max_depth, and average the kept depths into the aggregated matrix.
 * At least one propagation step always runs.
 */
PropagationResult run_rga(const SparseTrustMatrix& s, const RgaOptions& options = {});

}  // namespace roundtable

#endif  // ROUNDTABLE_RGA_HPP_
