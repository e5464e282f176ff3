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

#include <roundtable/path_trace.hpp>

#include <stdexcept>

namespace roundtable {

namespace {

void check_ids(const SparseTrustMatrix& g, std::size_t source, std::size_t sink) {
    if (source >= g.dim() || sink >= g.dim())
        throw std::out_of_range("path trace: entity id out of range");
}

void collect_walks(const SparseTrustMatrix& g, std::size_t node, std::size_t sink,
                   std::size_t remaining, double weight, std::vector<std::size_t>& stack,
                   std::vector<TrustWalk>& out) {
    if (remaining == 0) {
        if (node == sink) out.push_back({stack, weight});
        return;
    }
    const RowView row = g.row(node);
    for (std::size_t k = 0; k < row.size(); ++k) {
        stack.push_back(row.cols[k]);
        collect_walks(g, row.cols[k], sink, remaining - 1, weight * row.vals[k], stack,
                      out);
        stack.pop_back();
    }
}

double sum_walks(const SparseTrustMatrix& g, std::size_t node, std::size_t sink,
                 std::size_t remaining, double weight) {
    if (remaining == 0) return node == sink ? weight : 0.0;
    double total = 0.0;
    const RowView row = g.row(node);
    for (std::size_t k = 0; k < row.size(); ++k)
        total += sum_walks(g, row.cols[k], sink, remaining - 1, weight * row.vals[k]);
    return total;
}

}  // namespace

std::vector<TrustWalk> trace_walks(const SparseTrustMatrix& g, std::size_t source,
                                   std::size_t sink, std::size_t length) {
    check_ids(g, source, sink);
    std::vector<TrustWalk> out;
    std::vector<std::size_t> stack = {source};
    collect_walks(g, source, sink, length, 1.0, stack, out);
    return out;
}

double walk_weight_sum(const SparseTrustMatrix& g, std::size_t source, std::size_t sink,
                       std::size_t length) {
    check_ids(g, source, sink);
    return sum_walks(g, source, sink, length, 1.0);
}

}  // namespace roundtable
