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

#include <roundtable/baselines.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace roundtable {

std::vector<std::pair<std::size_t, double>> mole_trust(const SparseTrustMatrix& s,
                                                       std::size_t source,
                                                       std::size_t mpd,
                                                       double trust_threshold) {
    const std::size_t m = s.dim();
    if (source >= m) throw std::out_of_range("mole_trust: source id out of range");
    if (mpd < 1) throw std::invalid_argument("mole_trust: mpd must be >= 1");

    std::vector<char> visited(m, 0);
    std::vector<char> defined(m, 0);
    std::vector<double> trust(m, 0.0);
    std::vector<double> num(m, 0.0);
    std::vector<double> den(m, 0.0);
    std::vector<char> reached(m, 0);
    std::vector<std::uint32_t> level = {std::uint32_t(source)};
    visited[source] = 1;
    defined[source] = 1;
    trust[source] = 1.0;

    std::vector<std::pair<std::size_t, double>> out;
    std::vector<std::uint32_t> touched;
    for (std::size_t d = 1; d <= mpd && !level.empty(); ++d) {
        touched.clear();
        for (const std::uint32_t p : level) {
            const bool accepted = defined[p] && trust[p] >= trust_threshold;
            const RowView row = s.row(p);
            for (std::size_t k = 0; k < row.size(); ++k) {
                const std::uint32_t c = row.cols[k];
                if (visited[c]) continue;  // already placed in an earlier level
                if (!reached[c]) {
                    reached[c] = 1;
                    touched.push_back(c);
                }
                if (accepted) {
                    num[c] += trust[p] * row.vals[k];
                    den[c] += trust[p];
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        for (const std::uint32_t c : touched) {
            visited[c] = 1;
            reached[c] = 0;
            if (den[c] > 0.0) {
                defined[c] = 1;
                trust[c] = num[c] / den[c];
                out.emplace_back(c, trust[c]);
            }
            num[c] = 0.0;
            den[c] = 0.0;
        }
        level = touched;
    }
    std::sort(out.begin(), out.end());
    return out;
}

SparseTrustMatrix guha_propagation(const SparseTrustMatrix& s,
                                   const std::array<double, 4>& alphas,
                                   std::size_t steps) {
    for (const double a : alphas)
        if (a < 0.0)
            throw std::invalid_argument("guha_propagation: alphas must be >= 0");
    if (steps < 1) throw std::invalid_argument("guha_propagation: steps must be >= 1");

    const SparseTrustMatrix transpose = s.transpose();
    const SparseTrustMatrix combined =
        add(add(scale(s, alphas[0]), scale(spmm(transpose, s), alphas[1])),
            add(scale(transpose, alphas[2]), scale(spmm(s, transpose), alphas[3])));

    SparseTrustMatrix belief = combined;
    SparseTrustMatrix power = combined;
    for (std::size_t k = 2; k <= steps; ++k) {
        power = spmm(power, combined);
        belief = add(belief, power);
    }

    // Clamp the accumulated beliefs into probability range.
    const std::size_t m = belief.dim();
    std::vector<std::size_t> row_ptr(m + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    cols.reserve(belief.nnz());
    vals.reserve(belief.nnz());
    for (std::size_t i = 0; i < m; ++i) {
        const RowView row = belief.row(i);
        for (std::size_t k = 0; k < row.size(); ++k) {
            cols.push_back(row.cols[k]);
            vals.push_back(std::min(row.vals[k], 1.0));
        }
        row_ptr[i + 1] = cols.size();
    }
    return SparseTrustMatrix::from_csr(m, std::move(row_ptr), std::move(cols),
                                       std::move(vals));
}

namespace {

constexpr std::uint32_t kUnset = 0xffffffffu;

/**
 * Unit-weight BFS levels from `start`. Nodes at distance >= expand_cap are
 * recorded but not expanded; discovery of `target` (pass dim() for none)
 * stops the search, which is safe because every node closer than the
 * target is already levelled by then.
 */
std::vector<std::uint32_t> bfs_levels(const SparseTrustMatrix& g, std::size_t start,
                                      std::size_t target, std::uint32_t expand_cap) {
    std::vector<std::uint32_t> dist(g.dim(), kUnset);
    std::vector<std::uint32_t> queue;
    queue.reserve(64);
    dist[start] = 0;
    queue.push_back(std::uint32_t(start));
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t u = queue[head];
        if (dist[u] >= expand_cap) break;  // the queue is level-ordered
        const RowView row = g.row(u);
        for (std::size_t k = 0; k < row.size(); ++k) {
            const std::uint32_t c = row.cols[k];
            if (dist[c] != kUnset) continue;
            dist[c] = dist[u] + 1;
            if (c == target) return dist;
            queue.push_back(c);
        }
    }
    return dist;
}

struct TidalQuery {
    const SparseTrustMatrix& s;
    std::size_t sink;
    std::uint32_t total_depth;
    double max_threshold;
    const std::vector<std::uint32_t>& fwd;
    const std::vector<std::uint32_t>& bwd;
    std::vector<char>& state;  // 0 unknown, 1 absent, 2 valued
    std::vector<double>& value;

    std::optional<double> eval(std::size_t node) {
        if (state[node] == 1) return std::nullopt;
        if (state[node] == 2) return value[node];
        std::optional<double> result;
        if (fwd[node] + 1 == total_depth) {
            result = s.get(node, sink);  // direct rater of the sink
        } else {
            double num = 0.0;
            double den = 0.0;
            const RowView row = s.row(node);
            for (std::size_t k = 0; k < row.size(); ++k) {
                const std::uint32_t c = row.cols[k];
                const double v = row.vals[k];
                if (v < max_threshold) continue;
                if (fwd[c] == kUnset || fwd[c] != fwd[node] + 1) continue;
                if (bwd[c] == kUnset || fwd[c] + bwd[c] != total_depth) continue;
                const auto t = eval(c);
                if (!t) continue;  // valueless neighbors drop out of both sums
                num += v * *t;
                den += v;
            }
            if (den > 0.0) result = num / den;
        }
        if (result) {
            state[node] = 2;
            value[node] = *result;
        } else {
            state[node] = 1;
        }
        return result;
    }
};

}  // namespace

TidalTrustEvaluator::TidalTrustEvaluator(SparseTrustMatrix s, double max_threshold)
    : s_(std::move(s)), transpose_(s_.transpose()), max_threshold_(max_threshold) {}

std::optional<double> TidalTrustEvaluator::predict(std::size_t source,
                                                   std::size_t sink) const {
    const std::size_t m = s_.dim();
    if (source >= m || sink >= m)
        throw std::out_of_range("tidal_trust: entity id out of range");
    if (const auto direct = s_.get(source, sink)) return direct;
    if (source == sink) return std::nullopt;

    const auto fwd = bfs_levels(s_, source, sink, kUnset);
    if (fwd[sink] == kUnset) return std::nullopt;
    const std::uint32_t total_depth = fwd[sink];
    const auto bwd = bfs_levels(transpose_, sink, m, total_depth - 1);

    std::vector<char> state(m, 0);
    std::vector<double> value(m, 0.0);
    TidalQuery query{s_, sink, total_depth, max_threshold_, fwd, bwd, state, value};
    return query.eval(source);
}

std::optional<double> tidal_trust(const SparseTrustMatrix& s, std::size_t source,
                                  std::size_t sink, double max_threshold) {
    return TidalTrustEvaluator(s, max_threshold).predict(source, sink);
}

}  // namespace roundtable
