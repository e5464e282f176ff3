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

#ifndef ROUNDTABLE_DATASET_IO_HPP_
#define ROUNDTABLE_DATASET_IO_HPP_

// Ternary edge-list ingestion and serialization. The on-disk contract:
// one `<trustor><DELIM><trustee><DELIM><value>` statement per LF line,
// UTF-8, '#' starts a comment line, no header unless announced. Raw file
// ids are densified to contiguous 0-based ids in ascending raw order, so
// the dense order equals the raw order and round-trips are stable.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <roundtable/trust_matrix.hpp>

namespace roundtable {

struct LoadOptions {
    char delimiter = '\t';
    /// Raw values are divided by this (e.g. 5 for 1..5 star ratings);
    /// results must land in [0, 1].
    double value_scale = 1.0;
    /// Skip the first line unconditionally.
    bool has_header = false;
};

/// Order-preserving bijection between raw file ids and dense matrix ids:
/// dense id k maps to the k-th smallest raw id.
class IdMap {
  public:
    IdMap() = default;
    explicit IdMap(std::vector<std::uint64_t> sorted_raw_ids);

    std::size_t size() const { return dense_to_raw_.size(); }

    /// Raw id for a dense id; throws when dense >= size().
    std::uint64_t to_raw(std::size_t dense) const;

    /// Dense id for a raw id, or nullopt when the raw id never appeared.
    std::optional<std::size_t> to_dense(std::uint64_t raw) const;

  private:
    std::vector<std::uint64_t> dense_to_raw_;
};

struct LoadResult {
    /// Records in file order (so later duplicates still win downstream),
    /// with dense ids and values scaled into [0, 1].
    std::vector<TrustRecord> records;
    IdMap id_map;
    /// Number of distinct entities seen, the matrix dimension.
    std::size_t dimension = 0;
    /// Count of skipped unparseable lines (wrong field count, bad number);
    /// comments and empty lines are not counted.
    std::size_t malformed_lines = 0;
};

/**
 * Loads a ternary edge-list file. Malformed lines are counted and skipped;
 * a value that falls outside [0, 1] after scaling throws with the file
 * name and line number, as do an unreadable file and a file yielding no
 * records at all.
 */
LoadResult load_ternary(const std::string& path, const LoadOptions& options = {});

/**
 * Writes records as ternary text, sorted by (trustor, trustee) with input
 * order preserved among duplicate keys, values printed with 12 significant
 * digits, LF line endings. Record ids are written as-is.
 */
void write_ternary(std::span<const TrustRecord> records, const std::string& path,
                   char delimiter = '\t');

/// Same, but maps dense record ids back to their raw file ids first.
void write_ternary(std::span<const TrustRecord> records, const IdMap& id_map,
                   const std::string& path, char delimiter = '\t');

/// Headline statistics of a dataset, shaped like the usual dataset tables.
struct DatasetStats {
    std::size_t num_users = 0;
    /// 0 means the data is a square user-user trust network; nonzero means
    /// a rectangular user-item rating matrix.
    std::size_t num_items = 0;
    std::size_t num_trust_edges = 0;
    /// num_trust_edges over users*items (or users^2 when items is 0).
    double sparsity_degree = 0.0;
    double mean_friends_per_user = 0.0;
};

/// Stats from bare counts; num_items 0 selects the square interpretation.
/// Throws when num_users is 0.
DatasetStats dataset_stats(std::size_t num_users, std::size_t num_items,
                           std::size_t num_edges);

/// Stats for a record collection (records counted as given).
DatasetStats dataset_stats(std::span<const TrustRecord> records, std::size_t num_users,
                           std::size_t num_items = 0);

}  // namespace roundtable

#endif  // ROUNDTABLE_DATASET_IO_HPP_
