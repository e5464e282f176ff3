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

#include <roundtable/evaluation.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <roundtable/metrics.hpp>

namespace roundtable {

namespace {

constexpr std::size_t kNoIndex = std::size_t(-1);

double unit_draw(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

std::string format_degree(double degree) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", degree);
    return buffer;
}

/// Raw trust value mapped into the row's softmax space: the exponential it
/// would contribute, divided by the row denominator extended with it.
double map_normalized(double raw_value, double row_denominator) {
    const double e = std::exp(raw_value);
    return e / (row_denominator + e);
}

std::vector<double> row_maxima(const SparseTrustMatrix& a) {
    std::vector<double> maxima(a.dim(), 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const RowView row = a.row(i);
        for (std::size_t k = 0; k < row.size(); ++k)
            maxima[i] = std::max(maxima[i], row.vals[k]);
    }
    return maxima;
}

struct MethodOutcome {
    double mae = std::numeric_limits<double>::quiet_NaN();
    double rmse = std::numeric_limits<double>::quiet_NaN();
    std::size_t n_tested = 0;
    std::size_t n_predictable = 0;
    double pre_sparsity = 0.0;
    double post_sparsity = 0.0;
    std::uint64_t seed = 0;
};

const char* population_name(std::size_t population) {
    return population == 0 ? "all_users" : "cold_start";
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + (stream + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SplitPair split_half(std::span<const TrustRecord> records, std::uint64_t seed) {
    if (records.size() < 2)
        throw std::invalid_argument("split_half: need at least 2 records");
    std::set<std::pair<std::size_t, std::size_t>> keys;
    for (std::size_t idx = 0; idx < records.size(); ++idx)
        if (!keys.insert({records[idx].trustor, records[idx].trustee}).second)
            throw std::invalid_argument(
                "split_half: duplicate (trustor, trustee) key at record " +
                std::to_string(idx));

    std::vector<TrustRecord> shuffled(records.begin(), records.end());
    // Fisher-Yates with modulo index draws: deterministic across standard
    // libraries, and the modulo bias is immaterial at 64-bit range.
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i + 1 < shuffled.size(); ++i) {
        const std::size_t j = i + std::size_t(rng() % std::uint64_t(shuffled.size() - i));
        std::swap(shuffled[i], shuffled[j]);
    }
    const std::size_t cut = (shuffled.size() + 1) / 2;  // predict takes the odd extra
    SplitPair out;
    out.predict_set.assign(shuffled.begin(), shuffled.begin() + std::ptrdiff_t(cut));
    out.test_set.assign(shuffled.begin() + std::ptrdiff_t(cut), shuffled.end());
    out.seed = seed;
    return out;
}

std::vector<std::size_t> cold_start_users(const SparseTrustMatrix& matrix,
                                          std::size_t threshold) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < matrix.dim(); ++i) {
        const RowView row = matrix.row(i);
        std::size_t degree = row.size();
        if (std::binary_search(row.cols.begin(), row.cols.end(), std::uint32_t(i)))
            --degree;  // a stored self-loop is not a trust statement about others
        if (degree <= threshold) out.push_back(i);
    }
    return out;
}

SparseTrustMatrix sparsify(const SparseTrustMatrix& matrix, double target_degree,
                           std::uint64_t seed) {
    const double current = matrix.sparsity_degree();
    if (target_degree < 0.0)
        throw std::invalid_argument("sparsify: target degree must be >= 0");
    if (target_degree > current)
        throw std::invalid_argument("sparsify: target degree " +
                                    format_degree(target_degree) +
                                    " exceeds the current degree " +
                                    format_degree(current));
    const double keep_probability = current > 0.0 ? target_degree / current : 0.0;

    const std::size_t m = matrix.dim();
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> row_ptr(m + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    for (std::size_t i = 0; i < m; ++i) {
        const RowView row = matrix.row(i);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (unit_draw(rng) < keep_probability) {
                cols.push_back(row.cols[k]);
                vals.push_back(row.vals[k]);
            }
        }
        row_ptr[i + 1] = cols.size();
    }
    return SparseTrustMatrix::from_csr(m, std::move(row_ptr), std::move(cols),
                                       std::move(vals));
}

ExperimentResult run_experiment(std::span<const TrustRecord> dataset, std::size_t m,
                                const ExperimentConfig& config) {
    if (config.repetitions < 1)
        throw std::invalid_argument("run_experiment: repetitions must be >= 1");
    if (config.methods.empty())
        throw std::invalid_argument("run_experiment: no methods given");
    for (const auto& method : config.methods)
        if (method.name != "rga" && method.name != "mole_trust" &&
            method.name != "guha_propagation" && method.name != "tidal_trust")
            throw std::invalid_argument("run_experiment: unknown method \"" +
                                        method.name + "\"");

    const auto canonical = SparseTrustMatrix::from_records(dataset, m).to_records();

    const std::size_t n_methods = config.methods.size();
    std::vector<char> failed(n_methods, 0);
    std::vector<std::string> failure_message(n_methods);
    // outcomes[method][population][repetition-1]
    std::vector<std::array<std::vector<MethodOutcome>, 2>> outcomes(n_methods);
    for (auto& per_method : outcomes)
        for (auto& per_population : per_method)
            per_population.resize(config.repetitions);

    std::size_t first_rga = kNoIndex;
    bool any_auto_mpd = false;
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
        if (config.methods[mi].name == "rga" && first_rga == kNoIndex) first_rga = mi;
        if (config.methods[mi].name == "mole_trust" &&
            config.methods[mi].baseline.mpd == 0)
            any_auto_mpd = true;
    }
    const bool need_rga = first_rga != kNoIndex || any_auto_mpd;

    for (std::size_t rep = 1; rep <= config.repetitions; ++rep) {
        const std::uint64_t rep_seed = derive_seed(config.seed, rep);
        const SplitPair split = split_half(canonical, rep_seed);
        const auto predict_matrix = SparseTrustMatrix::from_records(split.predict_set, m);
        const double pre_sparsity = predict_matrix.sparsity_degree();
        const auto& test = split.test_set;

        std::vector<char> is_cold(m, 0);
        for (const std::size_t u :
             cold_start_users(predict_matrix, config.cold_start_threshold))
            is_cold[u] = 1;

        PropagationResult rga_result;
        bool have_rga = false;
        if (need_rga) {
            // Mining options come from the first rga method; when only an
            // auto-depth MoleTrust needs the run, the first method's rga
            // block steers it instead, so callers can still configure it.
            RgaOptions options = (first_rga != kNoIndex ? config.methods[first_rga]
                                                        : config.methods.front())
                                     .rga;
            options.keep_per_depth = false;
            options.on_depth = nullptr;
            try {
                rga_result = run_rga(predict_matrix, options);
                have_rga = true;
            } catch (const std::exception& e) {
                // The mining run is shared state: its failure fails the rga
                // method and any MoleTrust waiting on the auto depth.
                for (std::size_t mi = 0; mi < n_methods; ++mi) {
                    const auto& method = config.methods[mi];
                    const bool depends =
                        method.name == "rga" ||
                        (method.name == "mole_trust" && method.baseline.mpd == 0);
                    if (depends && !failed[mi]) {
                        failed[mi] = 1;
                        failure_message[mi] = e.what();
                    }
                }
            }
        }

        std::vector<double> denominators;
        if (config.scoring == ScoringMode::normalized)
            denominators =
                have_rga
                    ? rga_result.normalized.row_denominators
                    : softmax_normalize(inject_self_confidence(predict_matrix))
                          .row_denominators;

        // Ground truth on the scoring scale, shared by every method.
        std::vector<double> scored_truth(test.size());
        for (std::size_t t = 0; t < test.size(); ++t)
            scored_truth[t] = config.scoring == ScoringMode::normalized
                                  ? map_normalized(test[t].value,
                                                   denominators[test[t].trustor])
                                  : test[t].value;

        // Test indices grouped by trustor for the per-source methods.
        std::vector<std::pair<std::size_t, std::size_t>> by_trustor(test.size());
        for (std::size_t t = 0; t < test.size(); ++t)
            by_trustor[t] = {test[t].trustor, t};
        std::sort(by_trustor.begin(), by_trustor.end());

        for (std::size_t mi = 0; mi < n_methods; ++mi) {
            if (failed[mi]) continue;
            const auto& method = config.methods[mi];
            try {
                std::vector<std::optional<double>> scored_pred(test.size());
                double post_sparsity = pre_sparsity;

                if (method.name == "rga") {
                    const auto& aggregated = rga_result.aggregated;
                    post_sparsity = aggregated.sparsity_degree();
                    std::vector<double> maxima;
                    if (config.scoring == ScoringMode::raw_rescaled)
                        maxima = row_maxima(aggregated);
                    for (std::size_t t = 0; t < test.size(); ++t) {
                        auto p = aggregated.get(test[t].trustor, test[t].trustee);
                        if (p && config.scoring == ScoringMode::raw_rescaled)
                            p = *p / maxima[test[t].trustor];
                        scored_pred[t] = p;
                    }
                } else if (method.name == "mole_trust") {
                    const std::size_t mpd = method.baseline.mpd != 0
                                                ? method.baseline.mpd
                                                : rga_result.depth;
                    for (std::size_t g = 0; g < by_trustor.size();) {
                        const std::size_t source = by_trustor[g].first;
                        const auto predictions =
                            mole_trust(predict_matrix, source, mpd,
                                       method.baseline.trust_threshold);
                        for (; g < by_trustor.size() && by_trustor[g].first == source;
                             ++g) {
                            const std::size_t t = by_trustor[g].second;
                            const auto it = std::lower_bound(
                                predictions.begin(), predictions.end(),
                                test[t].trustee, [](const auto& entry, std::size_t id) {
                                    return entry.first < id;
                                });
                            if (it != predictions.end() && it->first == test[t].trustee)
                                scored_pred[t] = it->second;
                        }
                    }
                } else if (method.name == "guha_propagation") {
                    const auto belief = guha_propagation(
                        predict_matrix, method.baseline.alphas, method.baseline.steps);
                    post_sparsity = belief.sparsity_degree();
                    for (std::size_t t = 0; t < test.size(); ++t)
                        scored_pred[t] = belief.get(test[t].trustor, test[t].trustee);
                } else {  // tidal_trust
                    const TidalTrustEvaluator evaluator(predict_matrix,
                                                        method.baseline.max_threshold);
                    for (std::size_t t = 0; t < test.size(); ++t)
                        scored_pred[t] =
                            evaluator.predict(test[t].trustor, test[t].trustee);
                }

                // Baseline predictions live in raw trust space; bring them
                // onto the normalized scale when that mode is active.
                if (method.name != "rga" && config.scoring == ScoringMode::normalized)
                    for (std::size_t t = 0; t < test.size(); ++t)
                        if (scored_pred[t])
                            scored_pred[t] = map_normalized(
                                *scored_pred[t], denominators[test[t].trustor]);

                for (std::size_t population = 0; population < 2; ++population) {
                    MethodOutcome outcome;
                    outcome.pre_sparsity = pre_sparsity;
                    outcome.post_sparsity = post_sparsity;
                    outcome.seed = rep_seed;
                    std::vector<std::pair<double, double>> pairs;
                    for (std::size_t t = 0; t < test.size(); ++t) {
                        if (population == 1 && !is_cold[test[t].trustor]) continue;
                        ++outcome.n_tested;
                        if (scored_pred[t])
                            pairs.emplace_back(scored_truth[t], *scored_pred[t]);
                    }
                    outcome.n_predictable = pairs.size();
                    if (!pairs.empty()) {
                        outcome.mae = mae(pairs);
                        outcome.rmse = rmse(pairs);
                    }
                    outcomes[mi][population][rep - 1] = outcome;
                }
            } catch (const std::exception& e) {
                failed[mi] = 1;
                failure_message[mi] = e.what();
            }
        }
    }

    ExperimentResult result;
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
        const std::string& name = config.methods[mi].name;
        if (failed[mi]) {
            result.failures.emplace_back(name, failure_message[mi]);
            continue;
        }
        for (std::size_t population = 0; population < 2; ++population) {
            EvaluationReport mean_row;
            mean_row.method = name;
            mean_row.population = population_name(population);
            mean_row.repetition = "mean";
            mean_row.mae = 0.0;
            mean_row.rmse = 0.0;
            mean_row.seed = config.seed;
            for (std::size_t rep = 1; rep <= config.repetitions; ++rep) {
                const MethodOutcome& o = outcomes[mi][population][rep - 1];
                EvaluationReport row;
                row.method = name;
                row.population = population_name(population);
                row.repetition = std::to_string(rep);
                row.mae = o.mae;
                row.rmse = o.rmse;
                row.n_tested = double(o.n_tested);
                row.n_predictable = double(o.n_predictable);
                row.pre_sparsity = o.pre_sparsity;
                row.post_sparsity = o.post_sparsity;
                row.seed = o.seed;
                result.rows.push_back(row);
                mean_row.mae += o.mae;
                mean_row.rmse += o.rmse;
                mean_row.n_tested += row.n_tested;
                mean_row.n_predictable += row.n_predictable;
                mean_row.pre_sparsity += o.pre_sparsity;
                mean_row.post_sparsity += o.post_sparsity;
            }
            const double reps = double(config.repetitions);
            mean_row.mae /= reps;
            mean_row.rmse /= reps;
            mean_row.n_tested /= reps;
            mean_row.n_predictable /= reps;
            mean_row.pre_sparsity /= reps;
            mean_row.post_sparsity /= reps;
            result.rows.push_back(mean_row);
        }
    }
    return result;
}

void write_report_csv(std::span<const EvaluationReport> rows, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) throw std::runtime_error("cannot open for writing: " + path);
    std::fputs(
        "method,population,repetition,mae,rmse,n_tested,n_predictable,"
        "pre_sparsity,post_sparsity,seed\n",
        f);
    for (const auto& row : rows)
        std::fprintf(f, "%s,%s,%s,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%llu\n",
                     row.method.c_str(), row.population.c_str(), row.repetition.c_str(),
                     row.mae, row.rmse, row.n_tested, row.n_predictable,
                     row.pre_sparsity, row.post_sparsity,
                     static_cast<unsigned long long>(row.seed));
    const bool bad = std::ferror(f) != 0;
    std::fclose(f);
    if (bad) throw std::runtime_error("write failed: " + path);
}

}  // namespace roundtable
