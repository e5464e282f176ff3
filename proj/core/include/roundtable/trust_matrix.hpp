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

#ifndef ROUNDTABLE_TRUST_MATRIX_HPP_
#define ROUNDTABLE_TRUST_MATRIX_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace roundtable {

/**
 * One directed trust statement: trustor says how much it trusts trustee,
 * as a probability in [0, 1]. The ternary form [i, j, p_ij] used on disk
 * maps 1:1 onto this struct after id densification.
 */
struct TrustRecord {
    std::size_t trustor = 0;
    std::size_t trustee = 0;
    double value = 0.0;

    friend bool operator==(const TrustRecord&, const TrustRecord&) = default;
};

/**
 * Adjacency view of one entity: its stored trustees and the trust placed in
 * them, sorted by trustee id.
 */
struct TrustList {
    std::size_t entity = 0;
    std::vector<std::pair<std::size_t, double>> neighbors;
};

/// Sorted (column, value) view of one stored matrix row.
struct RowView {
    std::span<const std::uint32_t> cols;
    std::span<const double> vals;

    std::size_t size() const { return cols.size(); }
};

/**
 * Square m-by-m sparse trust matrix in compressed-row form.
 *
 * A value of zero means "no evidence" and is never stored; consequently
 * nnz() always equals the number of stored entries and no stored entry is 0.
 * Columns within a row are sorted ascending and unique. Instances are
 * immutable after construction and safe to share across threads.
 */
class SparseTrustMatrix {
  public:
    SparseTrustMatrix() = default;

    /**
     * Builds a matrix from ternary records.
     *
     * Duplicate (trustor, trustee) keys are resolved last-wins; records with
     * value 0 are dropped (zero means absent). Ids must be < m and values
     * must lie in [0, 1]; violations throw with the offending record index.
     */
    static SparseTrustMatrix from_records(std::span<const TrustRecord> records, std::size_t m);

    /**
     * Adopts raw CSR arrays without the [0,1] value validation applied to
     * records. Kernel outputs (products, sums) use this path; rows must be
     * sorted by column and free of explicit zeros.
     */
    static SparseTrustMatrix from_csr(std::size_t m,
                                      std::vector<std::size_t> row_ptr,
                                      std::vector<std::uint32_t> cols,
                                      std::vector<double> vals);

    std::size_t dim() const { return m_; }
    std::size_t nnz() const { return vals_.size(); }
    bool empty() const { return vals_.empty(); }

    /// nnz / m^2, the stored-entry fraction of this square matrix.
    double sparsity_degree() const;

    RowView row(std::size_t i) const;

    /// Stored value at (i, j), or nullopt when the entry is absent.
    std::optional<double> get(std::size_t i, std::size_t j) const;

    /// Sorted adjacency list of entity i. Throws when i >= dim().
    TrustList trust_list(std::size_t i) const;

    /// All stored entries as records, sorted by (trustor, trustee).
    std::vector<TrustRecord> to_records() const;

    SparseTrustMatrix transpose() const;

    friend bool operator==(const SparseTrustMatrix&, const SparseTrustMatrix&) = default;

  private:
    std::size_t m_ = 0;
    std::vector<std::size_t> row_ptr_ = {0};
    std::vector<std::uint32_t> cols_;
    std::vector<double> vals_;
};

struct SpmmOptions {
    /// Output entries with |v| < drop_tolerance are removed. The default
    /// keeps every nonzero product exactly.
    double drop_tolerance = 0.0;
    /// Worker threads for row-parallel execution; 0 picks the hardware
    /// concurrency. The result is bit-identical for any thread count.
    unsigned threads = 0;
};

/**
 * Sparse matrix product A*B, the transitivity kernel: out(i,k) is the sum
 * over intermediaries j of A(i,j)*B(j,k). Per-row accumulation follows the
 * sorted column order of A's rows, so results do not depend on the number
 * of workers. Throws on dimension mismatch.
 */
SparseTrustMatrix spmm(const SparseTrustMatrix& a, const SparseTrustMatrix& b,
                       const SpmmOptions& options = {});

/// Entrywise sum. Throws on dimension mismatch.
SparseTrustMatrix add(const SparseTrustMatrix& a, const SparseTrustMatrix& b);

/// Entrywise scaling by factor; entries that become exactly 0 are dropped.
SparseTrustMatrix scale(const SparseTrustMatrix& a, double factor);

/**
 * Stored-entry fraction nnz / (rows * cols) of a possibly rectangular
 * matrix given by its counts. Throws when rows * cols is zero.
 */
double sparsity_degree(std::size_t nnz, std::size_t rows, std::size_t cols);

}  // namespace roundtable

#endif  // ROUNDTABLE_TRUST_MATRIX_HPP_
