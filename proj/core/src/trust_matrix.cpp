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

#include "roundtable/trust_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

namespace roundtable {

namespace {

unsigned resolve_threads(unsigned requested, std::size_t rows) {
    unsigned n = requested != 0 ? requested : std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    // No point spawning more workers than rows.
    if (rows < n) n = rows == 0 ? 1 : static_cast<unsigned>(rows);
    return n;
}

/// Runs fn(chunk_index, first_row, last_row) over a contiguous partition
/// of [0, rows) into `threads` chunks.
template <typename Fn>
void for_row_chunks(std::size_t rows, unsigned threads, Fn&& fn) {
    const std::size_t chunk = threads == 0 ? rows : (rows + threads - 1) / threads;
    if (threads <= 1 || rows <= 1) {
        fn(0u, std::size_t{0}, rows);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t first = std::min(rows, t * chunk);
        const std::size_t last = std::min(rows, first + chunk);
        if (first == last) break;
        workers.emplace_back([&fn, t, first, last] { fn(t, first, last); });
    }
    for (auto& w : workers) w.join();
}

}  // namespace

SparseTrustMatrix SparseTrustMatrix::from_records(std::span<const TrustRecord> records,
                                                  std::size_t m) {
    if (m > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("dimension exceeds 32-bit entity id space");
    for (std::size_t idx = 0; idx < records.size(); ++idx) {
        const TrustRecord& r = records[idx];
        if (r.trustor >= m || r.trustee >= m) {
            throw std::out_of_range("record " + std::to_string(idx) + ": id (" +
                                    std::to_string(r.trustor) + ", " + std::to_string(r.trustee) +
                                    ") out of range for dimension " + std::to_string(m));
        }
        if (!(r.value >= 0.0 && r.value <= 1.0)) {
            throw std::invalid_argument("record " + std::to_string(idx) + ": trust value " +
                                        std::to_string(r.value) + " outside [0, 1]");
        }
    }

    // Last record wins on duplicate keys; zeros mean "no evidence".
    std::unordered_map<std::uint64_t, double> dedup;
    dedup.reserve(records.size());
    for (const TrustRecord& r : records) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(r.trustor) << 32) | static_cast<std::uint64_t>(r.trustee);
        dedup[key] = r.value;
    }

    std::vector<std::size_t> row_counts(m, 0);
    for (const auto& [key, value] : dedup) {
        if (value != 0.0) ++row_counts[key >> 32];
    }

    std::vector<std::size_t> row_ptr(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) row_ptr[i + 1] = row_ptr[i] + row_counts[i];

    const std::size_t nnz = row_ptr[m];
    std::vector<std::uint32_t> cols(nnz);
    std::vector<double> vals(nnz);
    std::vector<std::size_t> cursor(row_ptr.begin(), row_ptr.end() - 1);
    for (const auto& [key, value] : dedup) {
        if (value == 0.0) continue;
        const std::size_t i = key >> 32;
        const std::size_t pos = cursor[i]++;
        cols[pos] = static_cast<std::uint32_t>(key & 0xffffffffu);
        vals[pos] = value;
    }
    for (std::size_t i = 0; i < m; ++i) {
        // Sort each row by column; keys are unique after dedup.
        std::vector<std::pair<std::uint32_t, double>> entries;
        entries.reserve(row_ptr[i + 1] - row_ptr[i]);
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            entries.emplace_back(cols[k], vals[k]);
        std::sort(entries.begin(), entries.end());
        std::size_t k = row_ptr[i];
        for (const auto& [c, v] : entries) {
            cols[k] = c;
            vals[k] = v;
            ++k;
        }
    }

    return from_csr(m, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseTrustMatrix SparseTrustMatrix::from_csr(std::size_t m, std::vector<std::size_t> row_ptr,
                                              std::vector<std::uint32_t> cols,
                                              std::vector<double> vals) {
    if (row_ptr.size() != m + 1 || cols.size() != vals.size() || row_ptr.back() != cols.size())
        throw std::invalid_argument("inconsistent CSR arrays");
    SparseTrustMatrix out;
    out.m_ = m;
    out.row_ptr_ = std::move(row_ptr);
    out.cols_ = std::move(cols);
    out.vals_ = std::move(vals);
    return out;
}

double SparseTrustMatrix::sparsity_degree() const {
    return roundtable::sparsity_degree(nnz(), m_, m_);
}

RowView SparseTrustMatrix::row(std::size_t i) const {
    if (i >= m_) throw std::out_of_range("row index " + std::to_string(i) + " >= dimension");
    const std::size_t begin = row_ptr_[i];
    const std::size_t count = row_ptr_[i + 1] - begin;
    return RowView{{cols_.data() + begin, count}, {vals_.data() + begin, count}};
}

std::optional<double> SparseTrustMatrix::get(std::size_t i, std::size_t j) const {
    const RowView r = row(i);
    const auto it = std::lower_bound(r.cols.begin(), r.cols.end(), static_cast<std::uint32_t>(j));
    if (it == r.cols.end() || *it != j) return std::nullopt;
    return r.vals[static_cast<std::size_t>(it - r.cols.begin())];
}

TrustList SparseTrustMatrix::trust_list(std::size_t i) const {
    const RowView r = row(i);
    TrustList out;
    out.entity = i;
    out.neighbors.reserve(r.size());
    for (std::size_t k = 0; k < r.size(); ++k)
        out.neighbors.emplace_back(static_cast<std::size_t>(r.cols[k]), r.vals[k]);
    return out;
}

std::vector<TrustRecord> SparseTrustMatrix::to_records() const {
    std::vector<TrustRecord> out;
    out.reserve(nnz());
    for (std::size_t i = 0; i < m_; ++i) {
        const RowView r = row(i);
        for (std::size_t k = 0; k < r.size(); ++k)
            out.push_back({i, static_cast<std::size_t>(r.cols[k]), r.vals[k]});
    }
    return out;
}

SparseTrustMatrix SparseTrustMatrix::transpose() const {
    std::vector<std::size_t> row_ptr(m_ + 1, 0);
    for (const std::uint32_t c : cols_) ++row_ptr[c + 1];
    for (std::size_t i = 0; i < m_; ++i) row_ptr[i + 1] += row_ptr[i];

    std::vector<std::uint32_t> cols(nnz());
    std::vector<double> vals(nnz());
    std::vector<std::size_t> cursor(row_ptr.begin(), row_ptr.end() - 1);
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            const std::size_t pos = cursor[cols_[k]]++;
            cols[pos] = static_cast<std::uint32_t>(i);
            vals[pos] = vals_[k];
        }
    }
    return from_csr(m_, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseTrustMatrix spmm(const SparseTrustMatrix& a, const SparseTrustMatrix& b,
                       const SpmmOptions& options) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("spmm: dimension mismatch (" + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()) + ")");
    const std::size_t m = a.dim();
    const unsigned threads = resolve_threads(options.threads, m);

    std::vector<std::size_t> row_sizes(m, 0);
    std::vector<std::vector<std::uint32_t>> chunk_cols(threads);
    std::vector<std::vector<double>> chunk_vals(threads);

    // Gustavson row products. Each output row is accumulated in a dense
    // scratch vector following A's sorted column order, which fixes the
    // floating-point reduction order independent of the worker count.
    for_row_chunks(m, threads, [&](unsigned chunk_id, std::size_t first, std::size_t last) {
        std::vector<double> acc(m, 0.0);
        std::vector<std::uint8_t> occupied(m, 0);
        std::vector<std::uint32_t> touched;
        auto& out_cols = chunk_cols[chunk_id];
        auto& out_vals = chunk_vals[chunk_id];
        for (std::size_t i = first; i < last; ++i) {
            touched.clear();
            const RowView ra = a.row(i);
            for (std::size_t ka = 0; ka < ra.size(); ++ka) {
                const double av = ra.vals[ka];
                const RowView rb = b.row(ra.cols[ka]);
                for (std::size_t kb = 0; kb < rb.size(); ++kb) {
                    const std::uint32_t c = rb.cols[kb];
                    if (!occupied[c]) {
                        occupied[c] = 1;
                        touched.push_back(c);
                    }
                    acc[c] += av * rb.vals[kb];
                }
            }
            std::sort(touched.begin(), touched.end());
            std::size_t kept = 0;
            for (const std::uint32_t c : touched) {
                const double v = acc[c];
                acc[c] = 0.0;
                occupied[c] = 0;
                if (v == 0.0 || std::abs(v) < options.drop_tolerance) continue;
                out_cols.push_back(c);
                out_vals.push_back(v);
                ++kept;
            }
            row_sizes[i] = kept;
        }
    });

    std::vector<std::size_t> row_ptr(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) row_ptr[i + 1] = row_ptr[i] + row_sizes[i];
    const std::size_t nnz = row_ptr[m];
    std::vector<std::uint32_t> cols(nnz);
    std::vector<double> vals(nnz);
    std::size_t pos = 0;
    for (unsigned t = 0; t < threads; ++t) {
        if (!chunk_cols[t].empty()) {
            std::memcpy(cols.data() + pos, chunk_cols[t].data(),
                        chunk_cols[t].size() * sizeof(std::uint32_t));
            std::memcpy(vals.data() + pos, chunk_vals[t].data(),
                        chunk_vals[t].size() * sizeof(double));
            pos += chunk_cols[t].size();
        }
    }

    return SparseTrustMatrix::from_csr(m, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseTrustMatrix add(const SparseTrustMatrix& a, const SparseTrustMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("add: dimension mismatch");
    const std::size_t m = a.dim();
    std::vector<std::size_t> row_ptr(m + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    cols.reserve(std::max(a.nnz(), b.nnz()));
    vals.reserve(std::max(a.nnz(), b.nnz()));
    for (std::size_t i = 0; i < m; ++i) {
        const RowView ra = a.row(i);
        const RowView rb = b.row(i);
        std::size_t ka = 0, kb = 0;
        while (ka < ra.size() || kb < rb.size()) {
            std::uint32_t c;
            double v;
            if (kb == rb.size() || (ka < ra.size() && ra.cols[ka] < rb.cols[kb])) {
                c = ra.cols[ka];
                v = ra.vals[ka++];
            } else if (ka == ra.size() || rb.cols[kb] < ra.cols[ka]) {
                c = rb.cols[kb];
                v = rb.vals[kb++];
            } else {
                c = ra.cols[ka];
                v = ra.vals[ka++] + rb.vals[kb++];
            }
            if (v != 0.0) {
                cols.push_back(c);
                vals.push_back(v);
            }
        }
        row_ptr[i + 1] = cols.size();
    }
    return SparseTrustMatrix::from_csr(m, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseTrustMatrix scale(const SparseTrustMatrix& a, double factor) {
    const std::size_t m = a.dim();
    std::vector<std::size_t> row_ptr(m + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    cols.reserve(a.nnz());
    vals.reserve(a.nnz());
    for (std::size_t i = 0; i < m; ++i) {
        const RowView r = a.row(i);
        for (std::size_t k = 0; k < r.size(); ++k) {
            const double v = r.vals[k] * factor;
            if (v != 0.0) {
                cols.push_back(r.cols[k]);
                vals.push_back(v);
            }
        }
        row_ptr[i + 1] = cols.size();
    }
    return SparseTrustMatrix::from_csr(m, std::move(row_ptr), std::move(cols), std::move(vals));
}

double sparsity_degree(std::size_t nnz, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("sparsity_degree: zero-size matrix");
    return static_cast<double>(nnz) /
           (static_cast<double>(rows) * static_cast<double>(cols));
}

}  // namespace roundtable
