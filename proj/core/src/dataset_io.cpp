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

#include <roundtable/dataset_io.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string_view>
#include <utility>

namespace roundtable {

namespace {

bool parse_u64(std::string_view field, std::uint64_t& out) {
    if (field.empty()) return false;
    const auto result = std::from_chars(field.data(), field.data() + field.size(), out);
    return result.ec == std::errc{} && result.ptr == field.data() + field.size();
}

bool parse_double(std::string_view field, double& out) {
    if (field.empty()) return false;
    const auto result = std::from_chars(field.data(), field.data() + field.size(), out);
    return result.ec == std::errc{} && result.ptr == field.data() + field.size();
}

struct RawTriple {
    std::uint64_t trustor = 0;
    std::uint64_t trustee = 0;
    double value = 0.0;
};

}  // namespace

IdMap::IdMap(std::vector<std::uint64_t> sorted_raw_ids)
    : dense_to_raw_(std::move(sorted_raw_ids)) {
    if (!std::is_sorted(dense_to_raw_.begin(), dense_to_raw_.end()) ||
        std::adjacent_find(dense_to_raw_.begin(), dense_to_raw_.end()) !=
            dense_to_raw_.end())
        throw std::invalid_argument("IdMap: raw ids must be sorted and unique");
}

std::uint64_t IdMap::to_raw(std::size_t dense) const {
    if (dense >= dense_to_raw_.size())
        throw std::out_of_range("IdMap: dense id out of range");
    return dense_to_raw_[dense];
}

std::optional<std::size_t> IdMap::to_dense(std::uint64_t raw) const {
    const auto it = std::lower_bound(dense_to_raw_.begin(), dense_to_raw_.end(), raw);
    if (it == dense_to_raw_.end() || *it != raw) return std::nullopt;
    return std::size_t(it - dense_to_raw_.begin());
}

LoadResult load_ternary(const std::string& path, const LoadOptions& options) {
    if (!(options.value_scale > 0.0) || !std::isfinite(options.value_scale))
        throw std::invalid_argument("load_ternary: value_scale must be positive");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);

    std::vector<RawTriple> triples;
    LoadResult result;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (options.has_header && line_number == 1) continue;
        if (line.empty() || line.front() == '#') continue;

        const std::string_view view(line);
        const std::size_t first = view.find(options.delimiter);
        const std::size_t second =
            first == std::string_view::npos ? std::string_view::npos
                                            : view.find(options.delimiter, first + 1);
        bool ok = second != std::string_view::npos &&
                  view.find(options.delimiter, second + 1) == std::string_view::npos;
        RawTriple triple;
        ok = ok && parse_u64(view.substr(0, first), triple.trustor);
        ok = ok && parse_u64(view.substr(first + 1, second - first - 1), triple.trustee);
        double raw_value = 0.0;
        ok = ok && parse_double(view.substr(second + 1), raw_value);
        if (!ok) {
            ++result.malformed_lines;
            continue;
        }
        triple.value = raw_value / options.value_scale;
        if (!(triple.value >= 0.0 && triple.value <= 1.0))
            throw std::runtime_error(path + ":" + std::to_string(line_number) +
                                     ": value " + std::string(view.substr(second + 1)) +
                                     " lies outside [0, 1] after scaling");
        triples.push_back(triple);
    }
    if (triples.empty())
        throw std::runtime_error(path + ": no records loaded (empty or comment-only file)");

    std::vector<std::uint64_t> raw_ids;
    raw_ids.reserve(triples.size() * 2);
    for (const auto& t : triples) {
        raw_ids.push_back(t.trustor);
        raw_ids.push_back(t.trustee);
    }
    std::sort(raw_ids.begin(), raw_ids.end());
    raw_ids.erase(std::unique(raw_ids.begin(), raw_ids.end()), raw_ids.end());
    result.id_map = IdMap(std::move(raw_ids));
    result.dimension = result.id_map.size();

    result.records.reserve(triples.size());
    for (const auto& t : triples)
        result.records.push_back({*result.id_map.to_dense(t.trustor),
                                  *result.id_map.to_dense(t.trustee), t.value});
    return result;
}

void write_ternary(std::span<const TrustRecord> records, const std::string& path,
                   char delimiter) {
    std::vector<TrustRecord> sorted(records.begin(), records.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const TrustRecord& a, const TrustRecord& b) {
                         return a.trustor != b.trustor ? a.trustor < b.trustor
                                                       : a.trustee < b.trustee;
                     });
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& r : sorted)
        std::fprintf(f, "%llu%c%llu%c%.12g\n",
                     static_cast<unsigned long long>(r.trustor), delimiter,
                     static_cast<unsigned long long>(r.trustee), delimiter, r.value);
    const bool bad = std::ferror(f) != 0;
    std::fclose(f);
    if (bad) throw std::runtime_error("write failed: " + path);
}

void write_ternary(std::span<const TrustRecord> records, const IdMap& id_map,
                   const std::string& path, char delimiter) {
    std::vector<TrustRecord> mapped(records.begin(), records.end());
    for (auto& r : mapped) {
        r.trustor = std::size_t(id_map.to_raw(r.trustor));
        r.trustee = std::size_t(id_map.to_raw(r.trustee));
    }
    write_ternary(mapped, path, delimiter);
}

DatasetStats dataset_stats(std::size_t num_users, std::size_t num_items,
                           std::size_t num_edges) {
    DatasetStats stats;
    stats.num_users = num_users;
    stats.num_items = num_items;
    stats.num_trust_edges = num_edges;
    const std::size_t cols = num_items > 0 ? num_items : num_users;
    stats.sparsity_degree = sparsity_degree(num_edges, num_users, cols);
    stats.mean_friends_per_user = double(num_edges) / double(num_users);
    return stats;
}

DatasetStats dataset_stats(std::span<const TrustRecord> records, std::size_t num_users,
                           std::size_t num_items) {
    return dataset_stats(num_users, num_items, records.size());
}

}  // namespace roundtable
