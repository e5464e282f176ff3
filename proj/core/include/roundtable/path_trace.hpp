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

#ifndef ROUNDTABLE_PATH_TRACE_HPP_
#define ROUNDTABLE_PATH_TRACE_HPP_

// Explainability utility: the iterated matrix product sums trust over all
// directed walks between two entities, and this module recovers those walks
// explicitly by depth-first search. The entry (i, k) of the d-th power of G
// equals the sum of the edge-value products over every length-d walk from
// i to k, so the trace both explains a mined value and cross-checks the
// product kernel. Intended for small matrices; the walk count grows with
// the d-th power of the out-degree.

#include <cstddef>
#include <vector>

#include <roundtable/trust_matrix.hpp>

namespace roundtable {

/**
 * One directed walk. Nodes may repeat (self-loops and cycles are genuine
 * trust-mining routes); nodes has length+1 entries, front is the source and
 * back the sink, and weight is the product of the edge values along it.
 */
struct TrustWalk {
    std::vector<std::size_t> nodes;
    double weight = 0.0;
};

/**
 * All directed walks with exactly `length` edges from source to sink, in
 * lexicographic node order. length 0 yields one empty-product walk of
 * weight 1 when source == sink, else none. Throws when an id is >= dim().
 */
std::vector<TrustWalk> trace_walks(const SparseTrustMatrix& g, std::size_t source,
                                   std::size_t sink, std::size_t length);

/**
 * Sum of the walk-weight products over the same walk set, without
 * materializing the walks; equals the (source, sink) entry of the
 * `length`-th power of g up to floating-point reassociation.
 */
double walk_weight_sum(const SparseTrustMatrix& g, std::size_t source, std::size_t sink,
                       std::size_t length);

}  // namespace roundtable

#endif  // ROUNDTABLE_PATH_TRACE_HPP_
