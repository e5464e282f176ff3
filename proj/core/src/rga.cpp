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

#include <roundtable/rga.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace roundtable {

SparseTrustMatrix inject_self_confidence(const SparseTrustMatrix& s) {
    const std::size_t m = s.dim();
    std::vector<std::size_t> row_ptr(m + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    cols.reserve(s.nnz() + m);
    vals.reserve(s.nnz() + m);
    for (std::size_t i = 0; i < m; ++i) {
        const RowView row = s.row(i);
        bool placed = false;
        for (std::size_t k = 0; k < row.size(); ++k) {
            const std::uint32_t c = row.cols[k];
            if (!placed && c >= i) {
                cols.push_back(std::uint32_t(i));
                vals.push_back(1.0);
                placed = true;
                if (c == i) continue;  // prior diagonal value is overwritten
            }
            cols.push_back(c);
            vals.push_back(row.vals[k]);
        }
        if (!placed) {
            cols.push_back(std::uint32_t(i));
            vals.push_back(1.0);
        }
        row_ptr[i + 1] = cols.size();
    }
    return SparseTrustMatrix::from_csr(m, std::move(row_ptr), std::move(cols),
                                       std::move(vals));
}

NormalizedTrustMatrix softmax_normalize(const SparseTrustMatrix& s) {
    const std::size_t m = s.dim();
    std::vector<std::size_t> row_ptr(m + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    cols.reserve(s.nnz());
    vals.reserve(s.nnz());
    std::vector<double> denominators(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const RowView row = s.row(i);
        if (row.size() == 0)
            throw std::invalid_argument("softmax_normalize: row " + std::to_string(i) +
                                        " has no stored entries; inject self-confidence "
                                        "first");
        const std::size_t base = vals.size();
        double denom = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            const double e = std::exp(row.vals[k]);
            cols.push_back(row.cols[k]);
            vals.push_back(e);
            denom += e;
        }
        denominators[i] = denom;
        for (std::size_t k = base; k < vals.size(); ++k) vals[k] /= denom;
        row_ptr[i + 1] = cols.size();
    }
    NormalizedTrustMatrix out;
    out.G = SparseTrustMatrix::from_csr(m, std::move(row_ptr), std::move(cols),
                                        std::move(vals));
    out.row_denominators = std::move(denominators);
    return out;
}

SparseTrustMatrix propagate_step(const NormalizedTrustMatrix& g,
                                 const SparseTrustMatrix& t_prev,
                                 const SpmmOptions& options) {
    return spmm(g.G, t_prev, options);
}

SparseTrustMatrix aggregate(std::span<const SparseTrustMatrix> per_depth) {
    if (per_depth.empty())
        throw std::invalid_argument("aggregate: empty collection of depth matrices");
    SparseTrustMatrix sum = per_depth[0];
    for (std::size_t d = 1; d < per_depth.size(); ++d) sum = add(sum, per_depth[d]);
    return scale(sum, 1.0 / double(per_depth.size()));
}

PropagationResult run_rga(const SparseTrustMatrix& s, const RgaOptions& options) {
    if (options.epsilon < 1.0)
        throw std::invalid_argument("run_rga: epsilon must be >= 1");
    if (options.max_depth < 1)
        throw std::invalid_argument("run_rga: max_depth must be >= 1");
    const SpmmOptions spmm_options{options.drop_tolerance, options.threads};
    const bool mine_only = options.aggregation == AggregationMode::mine_only;

    PropagationResult result;
    result.normalized = softmax_normalize(inject_self_confidence(s));

    SparseTrustMatrix current = result.normalized.G;
    result.nnz_history.push_back(current.nnz());
    if (options.on_depth) options.on_depth(0, current.nnz());
    if (options.keep_per_depth) result.per_depth.push_back(current);

    // The aggregate is folded left-to-right as depths appear, matching the
    // order aggregate() would use on the per-depth collection.
    SparseTrustMatrix sum;
    bool sum_started = false;
    if (!mine_only) {
        sum = current;
        sum_started = true;
    }

    while (result.depth < options.max_depth) {
        SparseTrustMatrix next = propagate_step(result.normalized, current, spmm_options);
        ++result.depth;
        result.nnz_history.push_back(next.nnz());
        if (options.on_depth) options.on_depth(result.depth, next.nnz());
        if (options.keep_per_depth) result.per_depth.push_back(next);
        if (sum_started) {
            sum = add(sum, next);
        } else {
            sum = next;
            sum_started = true;
        }
        const std::size_t prev_nnz = result.nnz_history[result.depth - 1];
        const std::size_t curr_nnz = result.nnz_history[result.depth];
        const double diff = curr_nnz >= prev_nnz ? double(curr_nnz - prev_nnz)
                                                 : double(prev_nnz - curr_nnz);
        current = std::move(next);
        if (diff < options.epsilon) {
            result.converged = true;
            break;
        }
    }

    const std::size_t included = mine_only ? result.depth : result.depth + 1;
    result.aggregated = scale(sum, 1.0 / double(included));
    return result;
}

}  // namespace roundtable
