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

#ifndef ROUNDTABLE_BASELINES_HPP_
#define ROUNDTABLE_BASELINES_HPP_

// The three comparison trust metrics: MoleTrust (level-by-level weighted
// averaging from a source), propagation of trust (Guha-style combined
// operator on the whole matrix), and TidalTrust (per-pair weighted average
// along shortest paths). All operate on the raw trust matrix, without
// self-confidence injection or normalization.

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <roundtable/trust_matrix.hpp>

namespace roundtable {

/// Parameter block for the baseline methods; each method reads only its
/// own fields.
struct BaselineConfig {
    /// MoleTrust maximum propagation distance. 0 means "resolve to the
    /// mining convergence depth of the same data", which the evaluation
    /// harness substitutes; the direct mole_trust call requires >= 1.
    std::size_t mpd = 0;
    /// MoleTrust: minimum computed trust for a node to act as a rater of
    /// the next level.
    double trust_threshold = 0.6;
    /// Propagation-of-trust weights for (direct, co-citation, transpose,
    /// coupling); all must be >= 0.
    std::array<double, 4> alphas = {0.4, 0.4, 0.1, 0.1};
    /// Propagation-of-trust accumulation steps (belief = sum of the first
    /// `steps` powers of the combined operator).
    std::size_t steps = 1;
    /// TidalTrust: neighbor edges below this value are rejected by the
    /// recursion.
    double max_threshold = 0.008;
};

/**
 * MoleTrust: breadth-first levels from `source` up to distance mpd. A node
 * at distance d receives the trust-weighted mean of the edges from its
 * distance-(d-1) predecessors whose own trust is at least trust_threshold;
 * nodes whose every predecessor is rejected get no prediction but still
 * occupy their level. Returns (entity, trust) pairs sorted by entity id,
 * source excluded. Throws when source >= dim() or mpd == 0.
 */
std::vector<std::pair<std::size_t, double>> mole_trust(const SparseTrustMatrix& s,
                                                       std::size_t source,
                                                       std::size_t mpd,
                                                       double trust_threshold = 0.6);

/**
 * Propagation of trust: belief matrix B = sum over k = 1..steps of C^k,
 * where C = a1*T + a2*T'T + a3*T' + a4*TT' combines direct propagation,
 * co-citation, transpose trust, and trust coupling. Entries are clamped to
 * [0, 1] after accumulation. Throws on a negative alpha or steps == 0.
 */
SparseTrustMatrix guha_propagation(const SparseTrustMatrix& s,
                                   const std::array<double, 4>& alphas,
                                   std::size_t steps = 1);

/**
 * Batch TidalTrust predictor: precomputes the transpose once so repeated
 * predict() calls over the same matrix stay cheap.
 *
 * predict returns the direct edge when one is stored; otherwise it finds
 * the shortest-path depth D from source to sink and evaluates, over
 * neighbors j on shortest paths whose edge value is at least
 * max_threshold, the weighted average sum(S(i,j) * t(j)) / sum(S(i,j)),
 * recursively down to the direct raters of the sink. Neighbors without a
 * value drop out of both sums; nullopt when no path survives.
 */
class TidalTrustEvaluator {
  public:
    TidalTrustEvaluator(SparseTrustMatrix s, double max_threshold = 0.008);

    std::optional<double> predict(std::size_t source, std::size_t sink) const;

    const SparseTrustMatrix& matrix() const { return s_; }

  private:
    SparseTrustMatrix s_;
    SparseTrustMatrix transpose_;
    double max_threshold_;
};

/// One-shot TidalTrust query; builds a TidalTrustEvaluator internally, so
/// prefer the evaluator when predicting many pairs of the same matrix.
std::optional<double> tidal_trust(const SparseTrustMatrix& s, std::size_t source,
                                  std::size_t sink, double max_threshold = 0.008);

}  // namespace roundtable

#endif  // ROUNDTABLE_BASELINES_HPP_
