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

/*
 * Command-line orchestrator for the trust mining pipeline.
 *
 * Subcommands: stats, sparsify, mine, evaluate, compare. Every run writes
 * its artifacts plus a manifest.txt into --out-dir; the manifest echoes the
 * full effective configuration as key=value lines and is itself a valid
 * --config file, so any run can be reproduced byte for byte. Precedence is
 * flag > config file > built-in default; the default config path comes from
 * the ROUNDTABLE_CONFIG environment variable.
 */

#include <CLI11.hpp>

#include <roundtable/baselines.hpp>
#include <roundtable/dataset_io.hpp>
#include <roundtable/evaluation.hpp>
#include <roundtable/rga.hpp>
#include <roundtable/trust_matrix.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::uint64_t to_u64(const std::string& value, const std::string& key) {
    std::uint64_t out = 0;
    const auto r = std::from_chars(value.data(), value.data() + value.size(), out);
    if (r.ec != std::errc{} || r.ptr != value.data() + value.size())
        throw std::invalid_argument(key + ": expected a non-negative integer, got '" +
                                    value + "'");
    return out;
}

double to_double(const std::string& value, const std::string& key) {
    double out = 0.0;
    const auto r = std::from_chars(value.data(), value.data() + value.size(), out);
    if (r.ec != std::errc{} || r.ptr != value.data() + value.size())
        throw std::invalid_argument(key + ": expected a number, got '" + value + "'");
    return out;
}

bool to_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument(key + ": expected true or false, got '" + value + "'");
}

char resolve_delimiter(const std::string& text) {
    if (text == "tab") return '\t';
    if (text.size() == 1 && !std::isspace(static_cast<unsigned char>(text[0])))
        return text[0];
    throw std::invalid_argument(
        "delimiter: expected one non-whitespace character or 'tab', got '" + text + "'");
}

roundtable::AggregationMode aggregation_mode(const std::string& name) {
    if (name == "include-depth-0") return roundtable::AggregationMode::include_depth0;
    if (name == "mine-only") return roundtable::AggregationMode::mine_only;
    throw std::invalid_argument(
        "aggregation: expected include-depth-0 or mine-only, got '" + name + "'");
}

roundtable::ScoringMode scoring_mode(const std::string& name) {
    if (name == "normalized") return roundtable::ScoringMode::normalized;
    if (name == "raw-rescaled") return roundtable::ScoringMode::raw_rescaled;
    throw std::invalid_argument("scoring: expected normalized or raw-rescaled, got '" +
                                name + "'");
}

/* The effective configuration after merging flags, config file, and
 * defaults. delimiter_text keeps the manifest-facing spelling ("tab" for
 * '\t') next to the resolved character. */
struct Options {
    std::string input;
    std::string delimiter_text = "tab";
    char delimiter = '\t';
    double value_scale = 1.0;
    bool header = false;
    double epsilon = 1.0;
    std::size_t max_depth = 6;
    std::string aggregation = "include-depth-0";
    std::string scoring = "normalized";
    std::size_t cs_threshold = 5;
    std::uint64_t seed = 1;
    std::size_t repetitions = 5;
    double target_degree = 0.0;
    std::vector<std::string> method_specs;
    std::string out_dir = ".";
    std::size_t threads = 0;
};

/* Flag-bound storage; field initializers are the built-in defaults. */
struct RawFlags {
    std::string config_path;
    std::string input;
    std::string delimiter = "tab";
    double value_scale = 1.0;
    bool header = false;
    double epsilon = 1.0;
    std::size_t max_depth = 6;
    std::string aggregation = "include-depth-0";
    std::string scoring = "normalized";
    std::size_t cs_threshold = 5;
    std::uint64_t seed = 1;
    std::size_t repetitions = 5;
    double target_degree = 0.0;
    std::vector<std::string> methods;
    std::string out_dir = ".";
    std::size_t threads = 0;
};

struct FlagRegistry {
    std::map<const CLI::App*, std::map<std::string, CLI::Option*>> by_app;

    void note(const CLI::App* app, std::string key, CLI::Option* option) {
        by_app[app][std::move(key)] = option;
    }
    bool passed(const CLI::App* app, const std::string& key) const {
        const auto ai = by_app.find(app);
        if (ai == by_app.end()) return false;
        const auto oi = ai->second.find(key);
        return oi != ai->second.end() && oi->second->count() > 0;
    }
};

const std::set<std::string>& config_keys() {
    static const std::set<std::string> keys = {
        "aggregation", "command",     "cs-threshold", "delimiter",
        "epsilon",     "header",      "input",        "max-depth",
        "method",      "out-dir",     "repetitions",  "scoring",
        "seed",        "target-degree", "threads",    "value-scale"};
    return keys;
}

struct ConfigData {
    std::map<std::string, std::string> scalars;
    std::vector<std::string> methods;
};

ConfigData load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    ConfigData cfg;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto at = [&](const std::string& what) {
            return path + ":" + std::to_string(line_number) + ": " + what;
        };
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) throw std::runtime_error(at("expected key=value"));
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (config_keys().count(key) == 0)
            throw std::runtime_error(at("unknown key '" + key + "'"));
        if (key == "method") {
            if (value.empty()) throw std::runtime_error(at("empty method spec"));
            cfg.methods.push_back(value);
        } else if (!cfg.scalars.emplace(key, value).second) {
            throw std::runtime_error(at("duplicate key '" + key + "'"));
        }
    }
    return cfg;
}

roundtable::RgaOptions rga_options(const Options& opt) {
    roundtable::RgaOptions options;
    options.epsilon = opt.epsilon;
    options.max_depth = opt.max_depth;
    options.aggregation = aggregation_mode(opt.aggregation);
    options.keep_per_depth = false;
    options.threads = opt.threads;
    return options;
}

std::string canonical_method_name(const std::string& name) {
    if (name == "rga") return "rga";
    if (name == "mole_trust" || name == "moletrust" || name == "mt") return "mole_trust";
    if (name == "guha_propagation" || name == "guha" || name == "pt")
        return "guha_propagation";
    if (name == "tidal_trust" || name == "tidaltrust" || name == "tt")
        return "tidal_trust";
    throw std::invalid_argument(
        "unknown method '" + name +
        "' (expected rga, mole_trust, guha_propagation, or tidal_trust)");
}

void apply_method_param(roundtable::MethodSpec& spec, const std::string& key,
                        const std::string& value) {
    auto& baseline = spec.baseline;
    if (spec.name == "mole_trust") {
        if (key == "mpd") {
            baseline.mpd =
                value == "auto" ? 0 : static_cast<std::size_t>(to_u64(value, "mpd"));
            return;
        }
        if (key == "trust-threshold") {
            baseline.trust_threshold = to_double(value, "trust-threshold");
            return;
        }
    } else if (spec.name == "guha_propagation") {
        if (key == "steps") {
            const std::uint64_t steps = to_u64(value, "steps");
            if (steps == 0) throw std::invalid_argument("steps: must be at least 1");
            baseline.steps = static_cast<std::size_t>(steps);
            return;
        }
        if (key == "alphas") {
            const auto parts = split(value, '/');
            if (parts.size() != 4)
                throw std::invalid_argument(
                    "alphas: expected four '/'-separated weights, got '" + value + "'");
            for (std::size_t i = 0; i < 4; ++i)
                baseline.alphas[i] = to_double(parts[i], "alphas");
            return;
        }
    } else if (spec.name == "tidal_trust") {
        if (key == "max-threshold") {
            baseline.max_threshold = to_double(value, "max-threshold");
            return;
        }
    }
    throw std::invalid_argument("method '" + spec.name + "': unknown parameter '" + key +
                                "'");
}

struct ParsedMethod {
    roundtable::MethodSpec spec;
    std::string canonical;
};

/* Method spec grammar: name[:key=value,...]. Names are canonicalized (mt,
 * moletrust -> mole_trust and so on); parameters pass through verbatim so a
 * canonical spec reparses to itself. rga carries no per-method parameters,
 * its settings live in the global mining flags. */
ParsedMethod parse_method_spec(const std::string& text, const Options& opt) {
    const auto colon = text.find(':');
    const std::string raw_name =
        trim(colon == std::string::npos ? text : text.substr(0, colon));
    const std::string params =
        colon == std::string::npos ? std::string() : text.substr(colon + 1);
    if (colon != std::string::npos && trim(params).empty())
        throw std::invalid_argument("method '" + raw_name +
                                    "': empty parameter list after ':'");
    ParsedMethod parsed;
    parsed.spec.name = canonical_method_name(raw_name);
    parsed.spec.rga = rga_options(opt);
    if (!params.empty()) {
        if (parsed.spec.name == "rga")
            throw std::invalid_argument(
                "rga takes no per-method parameters; use --epsilon, --max-depth, "
                "--aggregation");
        for (const std::string& token : split(params, ',')) {
            const auto eq = token.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("method '" + raw_name +
                                            "': expected key=value, got '" + token + "'");
            apply_method_param(parsed.spec, trim(token.substr(0, eq)),
                               trim(token.substr(eq + 1)));
        }
    }
    parsed.canonical = parsed.spec.name + (params.empty() ? "" : ":" + params);
    return parsed;
}

Options merge_options(const CLI::App* active, const FlagRegistry& reg,
                      const RawFlags& raw, const ConfigData* cfg,
                      const std::string& command) {
    Options opt;
    const auto scalar = [cfg](const char* key) -> const std::string* {
        if (cfg == nullptr) return nullptr;
        const auto it = cfg->scalars.find(key);
        return it == cfg->scalars.end() ? nullptr : &it->second;
    };
    const auto pick_string = [&](const char* key, const std::string& flag_value,
                                 std::string& field) {
        if (reg.passed(active, key)) field = flag_value;
        else if (const std::string* v = scalar(key)) field = *v;
    };
    const auto pick_double = [&](const char* key, double flag_value, double& field) {
        if (reg.passed(active, key)) field = flag_value;
        else if (const std::string* v = scalar(key)) field = to_double(*v, key);
    };
    const auto pick_size = [&](const char* key, std::size_t flag_value,
                               std::size_t& field) {
        if (reg.passed(active, key)) field = flag_value;
        else if (const std::string* v = scalar(key))
            field = static_cast<std::size_t>(to_u64(*v, key));
    };

    pick_string("input", raw.input, opt.input);
    pick_string("delimiter", raw.delimiter, opt.delimiter_text);
    pick_string("aggregation", raw.aggregation, opt.aggregation);
    pick_string("scoring", raw.scoring, opt.scoring);
    pick_string("out-dir", raw.out_dir, opt.out_dir);
    pick_double("value-scale", raw.value_scale, opt.value_scale);
    pick_double("epsilon", raw.epsilon, opt.epsilon);
    pick_double("target-degree", raw.target_degree, opt.target_degree);
    pick_size("max-depth", raw.max_depth, opt.max_depth);
    pick_size("cs-threshold", raw.cs_threshold, opt.cs_threshold);
    pick_size("repetitions", raw.repetitions, opt.repetitions);
    pick_size("threads", raw.threads, opt.threads);
    if (reg.passed(active, "header")) opt.header = raw.header;
    else if (const std::string* v = scalar("header")) opt.header = to_bool(*v, "header");
    if (reg.passed(active, "seed")) opt.seed = raw.seed;
    else if (const std::string* v = scalar("seed")) opt.seed = to_u64(*v, "seed");

    if (reg.passed(active, "method")) opt.method_specs = raw.methods;
    else if (cfg != nullptr && !cfg->methods.empty()) opt.method_specs = cfg->methods;
    else if (command == "evaluate") opt.method_specs = {"rga"};
    else if (command == "compare")
        opt.method_specs = {"rga", "mole_trust", "guha_propagation", "tidal_trust"};

    if (opt.input.empty()) throw std::invalid_argument("missing required --input");
    opt.delimiter = resolve_delimiter(opt.delimiter_text);
    if (!(opt.value_scale > 0.0) || !std::isfinite(opt.value_scale))
        throw std::invalid_argument("value-scale: must be positive");
    aggregation_mode(opt.aggregation);
    scoring_mode(opt.scoring);
    for (auto& text : opt.method_specs)
        text = parse_method_spec(text, opt).canonical;
    return opt;
}

std::FILE* open_out(const fs::path& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr)
        throw std::runtime_error("cannot open for writing: " + path.string());
    return f;
}

void close_out(std::FILE* f, const fs::path& path) {
    const bool bad = std::ferror(f) != 0;
    std::fclose(f);
    if (bad) throw std::runtime_error("write failed: " + path.string());
}

/* The manifest lists every key sorted by name, with the method lines kept
 * in order at their sorted position. No timestamps or host details: a rerun
 * must reproduce the file byte for byte. */
void write_manifest(const std::string& command, const Options& opt,
                    const fs::path& path) {
    std::FILE* f = open_out(path);
    std::fprintf(f, "# roundtable run manifest; reusable via --config\n");
    std::fprintf(f, "aggregation=%s\n", opt.aggregation.c_str());
    std::fprintf(f, "command=%s\n", command.c_str());
    std::fprintf(f, "cs-threshold=%zu\n", opt.cs_threshold);
    std::fprintf(f, "delimiter=%s\n", opt.delimiter_text.c_str());
    std::fprintf(f, "epsilon=%s\n", fmt_g(opt.epsilon).c_str());
    std::fprintf(f, "header=%s\n", opt.header ? "true" : "false");
    std::fprintf(f, "input=%s\n", opt.input.c_str());
    std::fprintf(f, "max-depth=%zu\n", opt.max_depth);
    for (const auto& m : opt.method_specs) std::fprintf(f, "method=%s\n", m.c_str());
    std::fprintf(f, "out-dir=%s\n", opt.out_dir.c_str());
    std::fprintf(f, "repetitions=%zu\n", opt.repetitions);
    std::fprintf(f, "scoring=%s\n", opt.scoring.c_str());
    std::fprintf(f, "seed=%llu\n", static_cast<unsigned long long>(opt.seed));
    std::fprintf(f, "target-degree=%s\n", fmt_g(opt.target_degree).c_str());
    std::fprintf(f, "threads=%zu\n", opt.threads);
    std::fprintf(f, "value-scale=%s\n", fmt_g(opt.value_scale).c_str());
    close_out(f, path);
}

struct LoadedInput {
    roundtable::LoadResult data;
    roundtable::SparseTrustMatrix matrix;
};

LoadedInput load_input(const Options& opt) {
    roundtable::LoadOptions load;
    load.delimiter = opt.delimiter;
    load.value_scale = opt.value_scale;
    load.has_header = opt.header;
    auto data = roundtable::load_ternary(opt.input, load);
    if (data.malformed_lines > 0)
        std::fprintf(stderr, "warning: skipped %zu malformed line(s) in %s\n",
                     data.malformed_lines, opt.input.c_str());
    auto matrix =
        roundtable::SparseTrustMatrix::from_records(data.records, data.dimension);
    return {std::move(data), std::move(matrix)};
}

int cmd_stats(const Options& opt) {
    const LoadedInput in = load_input(opt);
    const auto stats = roundtable::dataset_stats(in.matrix.dim(), 0, in.matrix.nnz());
    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);

    const fs::path csv = dir / "stats.csv";
    std::FILE* f = open_out(csv);
    std::fprintf(f, "num_users,num_items,num_trust_edges,sparsity_degree,"
                    "mean_friends_per_user\n");
    std::fprintf(f, "%zu,%zu,%zu,%.12g,%.12g\n", stats.num_users, stats.num_items,
                 stats.num_trust_edges, stats.sparsity_degree,
                 stats.mean_friends_per_user);
    close_out(f, csv);
    write_manifest("stats", opt, dir / "manifest.txt");

    std::printf("num_users=%zu\n", stats.num_users);
    std::printf("num_trust_edges=%zu\n", stats.num_trust_edges);
    std::printf("sparsity_degree=%s (%s%%)\n", fmt_g(stats.sparsity_degree).c_str(),
                fmt_g(stats.sparsity_degree * 100.0).c_str());
    std::printf("mean_friends_per_user=%s\n", fmt_g(stats.mean_friends_per_user).c_str());
    std::printf("wrote %s\n", csv.c_str());
    std::printf("wrote %s\n", (dir / "manifest.txt").c_str());
    return 0;
}

int cmd_sparsify(const Options& opt) {
    if (!(opt.target_degree > 0.0))
        throw std::invalid_argument("sparsify: --target-degree must be positive");
    const LoadedInput in = load_input(opt);
    const double pre = in.matrix.sparsity_degree();
    const auto thinned = roundtable::sparsify(in.matrix, opt.target_degree, opt.seed);
    const double achieved = thinned.sparsity_degree();

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    const fs::path out_file = dir / "sparsified.tsv";
    roundtable::write_ternary(thinned.to_records(), in.data.id_map, out_file.string(),
                              opt.delimiter);

    const fs::path report = dir / "sparsify_report.csv";
    std::FILE* f = open_out(report);
    std::fprintf(f, "target_degree,achieved_degree,pre_degree,kept_edges,input_edges,"
                    "seed\n");
    std::fprintf(f, "%.12g,%.12g,%.12g,%zu,%zu,%llu\n", opt.target_degree, achieved, pre,
                 thinned.nnz(), in.matrix.nnz(),
                 static_cast<unsigned long long>(opt.seed));
    close_out(f, report);
    write_manifest("sparsify", opt, dir / "manifest.txt");

    std::printf("input edges: %zu (degree %s)\n", in.matrix.nnz(), fmt_g(pre).c_str());
    std::printf("kept edges:  %zu (degree %s, target %s)\n", thinned.nnz(),
                fmt_g(achieved).c_str(), fmt_g(opt.target_degree).c_str());
    std::printf("wrote %s\n", out_file.c_str());
    std::printf("wrote %s\n", report.c_str());
    std::printf("wrote %s\n", (dir / "manifest.txt").c_str());
    return 0;
}

int cmd_mine(const Options& opt) {
    const LoadedInput in = load_input(opt);
    const double pre = in.matrix.sparsity_degree();
    std::printf("loaded %zu statements over %zu entities (degree %s)\n",
                in.matrix.nnz(), in.matrix.dim(), fmt_g(pre).c_str());

    roundtable::RgaOptions options = rga_options(opt);
    options.on_depth = [](std::size_t depth, std::size_t nnz) {
        std::printf("depth %zu: nnz=%zu\n", depth, nnz);
        std::fflush(stdout);
    };
    const auto result = roundtable::run_rga(in.matrix, options);

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    const fs::path mined = dir / "mined.tsv";
    roundtable::write_ternary(result.aggregated.to_records(), in.data.id_map,
                              mined.string(), opt.delimiter);

    const fs::path history = dir / "nnz_history.csv";
    std::FILE* f = open_out(history);
    std::fprintf(f, "depth,nnz\n");
    for (std::size_t d = 0; d < result.nnz_history.size(); ++d)
        std::fprintf(f, "%zu,%zu\n", d, result.nnz_history[d]);
    close_out(f, history);
    write_manifest("mine", opt, dir / "manifest.txt");

    const double post = result.aggregated.sparsity_degree();
    if (result.converged)
        std::printf("converged at depth %zu\n", result.depth);
    else
        std::printf("stopped at max depth %zu without convergence\n", result.depth);
    std::printf("pre-mining sparsity degree:  %s\n", fmt_g(pre).c_str());
    std::printf("post-mining sparsity degree: %s\n", fmt_g(post).c_str());
    std::printf("anti-sparsification residual: %s\n", fmt_g(post - pre).c_str());
    std::printf("wrote %s\n", mined.c_str());
    std::printf("wrote %s\n", history.c_str());
    std::printf("wrote %s\n", (dir / "manifest.txt").c_str());
    return 0;
}

int cmd_evaluate(const std::string& command, const Options& opt) {
    if (opt.repetitions == 0)
        throw std::invalid_argument("--repetitions must be at least 1");
    const LoadedInput in = load_input(opt);

    roundtable::ExperimentConfig config;
    config.seed = opt.seed;
    config.repetitions = opt.repetitions;
    config.cold_start_threshold = opt.cs_threshold;
    config.scoring = scoring_mode(opt.scoring);
    for (const auto& text : opt.method_specs)
        config.methods.push_back(parse_method_spec(text, opt).spec);

    std::printf("loaded %zu statements over %zu entities\n", in.matrix.nnz(),
                in.matrix.dim());
    std::printf("methods:");
    for (const auto& m : opt.method_specs) std::printf(" %s", m.c_str());
    std::printf("\nrepetitions: %zu, master seed: %llu\n", opt.repetitions,
                static_cast<unsigned long long>(opt.seed));
    std::fflush(stdout);

    const auto result =
        roundtable::run_experiment(in.data.records, in.data.dimension, config);
    for (const auto& [name, diagnostic] : result.failures)
        std::fprintf(stderr, "warning: method %s failed: %s\n", name.c_str(),
                     diagnostic.c_str());

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    const fs::path report = dir / "evaluation_report.csv";
    roundtable::write_report_csv(result.rows, report.string());
    write_manifest(command, opt, dir / "manifest.txt");

    std::printf("wrote %s (%zu rows)\n", report.c_str(), result.rows.size());
    std::printf("wrote %s\n", (dir / "manifest.txt").c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"roundtable: sparse trust mining and compared validation over ternary "
                 "trust networks"};
    app.require_subcommand(1);
    RawFlags raw;
    FlagRegistry reg;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", raw.config_path,
                        "Key-value config file; flags override its entries (default: "
                        "$ROUNDTABLE_CONFIG)");
        reg.note(cmd, "input",
                 cmd->add_option("--input", raw.input, "Ternary trust dataset"));
        reg.note(cmd, "delimiter",
                 cmd->add_option("--delimiter", raw.delimiter,
                                 "Field delimiter: one character or 'tab'"));
        reg.note(cmd, "value-scale",
                 cmd->add_option("--value-scale", raw.value_scale,
                                 "Divisor mapping raw values into [0, 1]"));
        reg.note(cmd, "header",
                 cmd->add_flag("--header,!--no-header", raw.header,
                               "First input line is a header row"));
        reg.note(cmd, "out-dir",
                 cmd->add_option("--out-dir", raw.out_dir,
                                 "Artifact directory (created if missing)"));
        reg.note(cmd, "threads",
                 cmd->add_option("--threads", raw.threads,
                                 "Worker threads for the mining kernels (0 = auto)"));
    };
    const auto add_mining = [&](CLI::App* cmd) {
        reg.note(cmd, "epsilon",
                 cmd->add_option("--epsilon", raw.epsilon,
                                 "Convergence threshold on the nonzero-count delta"));
        reg.note(cmd, "max-depth",
                 cmd->add_option("--max-depth", raw.max_depth,
                                 "Maximum propagation depth (>= 1)"));
        reg.note(cmd, "aggregation",
                 cmd->add_option("--aggregation", raw.aggregation,
                                 "include-depth-0 | mine-only"));
    };
    const auto add_eval = [&](CLI::App* cmd) {
        reg.note(cmd, "scoring",
                 cmd->add_option("--scoring", raw.scoring, "normalized | raw-rescaled"));
        reg.note(cmd, "cs-threshold",
                 cmd->add_option("--cs-threshold", raw.cs_threshold,
                                 "Cold-start out-degree cutoff (inclusive)"));
        reg.note(cmd, "seed", cmd->add_option("--seed", raw.seed, "Master random seed"));
        reg.note(cmd, "repetitions",
                 cmd->add_option("--repetitions", raw.repetitions,
                                 "Number of split repetitions"));
        reg.note(cmd, "method",
                 cmd->add_option("--method", raw.methods,
                                 "Method spec name[:key=value,...]; repeatable")
                     ->type_size(1));
    };

    CLI::App* stats = app.add_subcommand("stats", "Summarize a ternary trust dataset");
    add_common(stats);

    CLI::App* sparsify =
        app.add_subcommand("sparsify", "Thin a dataset to a target sparsity degree");
    add_common(sparsify);
    reg.note(sparsify, "target-degree",
             sparsify->add_option("--target-degree", raw.target_degree,
                                  "Target sparsity degree as a fraction"));
    reg.note(sparsify, "seed",
             sparsify->add_option("--seed", raw.seed, "Thinning seed"));

    CLI::App* mine = app.add_subcommand(
        "mine", "Mine the trust network and write the aggregated matrix");
    add_common(mine);
    add_mining(mine);

    CLI::App* evaluate =
        app.add_subcommand("evaluate", "Compared validation of the mining engine");
    add_common(evaluate);
    add_mining(evaluate);
    add_eval(evaluate);

    CLI::App* compare = app.add_subcommand(
        "compare", "Compared validation against the baseline trust metrics");
    add_common(compare);
    add_mining(compare);
    add_eval(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    CLI::App* active = app.get_subcommands().front();
    const std::string command = active->get_name();
    try {
        std::string config_path = raw.config_path;
        if (config_path.empty()) {
            const char* env = std::getenv("ROUNDTABLE_CONFIG");
            if (env != nullptr && *env != '\0') config_path = env;
        }
        std::optional<ConfigData> cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (cfg) {
            const auto it = cfg->scalars.find("command");
            if (it != cfg->scalars.end() && it->second != command)
                throw std::invalid_argument("config names command '" + it->second +
                                            "' but '" + command + "' was invoked");
        }
        const Options opt =
            merge_options(active, reg, raw, cfg ? &*cfg : nullptr, command);
        if (command == "stats") return cmd_stats(opt);
        if (command == "sparsify") return cmd_sparsify(opt);
        if (command == "mine") return cmd_mine(opt);
        return cmd_evaluate(command, opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
