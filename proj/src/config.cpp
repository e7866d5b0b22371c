// Copyright 2026 The Everett Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "everett/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "everett/error.hpp"
#include "everett/text.hpp"

namespace everett {

namespace {

[[noreturn]] void config_error(const std::string &what) { throw Error(ErrorKind::Config, what); }

ParamSpec integer(std::string name, std::optional<std::string> def, std::int64_t lo, std::int64_t hi,
                  std::string help) {
    return {std::move(name), ParamKind::Integer, std::move(def), lo, hi, {}, std::move(help)};
}

ParamSpec real(std::string name, std::string def, std::string help) {
    return {std::move(name), ParamKind::Real, std::move(def), 0, 0, {}, std::move(help)};
}

ParamSpec text(std::string name, std::string def, std::string help) {
    return {std::move(name), ParamKind::Text, std::move(def), 0, 0, {}, std::move(help)};
}

ParamSpec choice(std::string name, std::vector<std::string> choices, std::string help) {
    std::string def = choices.front();
    return {std::move(name), ParamKind::Choice, std::move(def), 0, 0, std::move(choices), std::move(help)};
}

constexpr std::int64_t kMaxTrials = 1'000'000'000;
constexpr std::int64_t kMaxDim = 1 << 14;

const std::vector<std::string> kSharedKeys = {"seed", "format", "out", "threads"};

std::int64_t to_integer(const std::string &key, const std::string &value) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
        config_error("parameter --" + key + ": '" + value + "' is not an integer");
    }
    return v;
}

double to_real(const std::string &key, const std::string &value) {
    try {
        return parse_double(value);
    } catch (const Error &) {
        config_error("parameter --" + key + ": '" + value + "' is not a number");
    }
}

ParamValue convert(const ParamSpec &spec, const std::string &value) {
    switch (spec.kind) {
    case ParamKind::Integer: {
        const std::int64_t v = to_integer(spec.name, value);
        if (v < spec.min_int || v > spec.max_int) {
            config_error("parameter --" + spec.name + " = " + value + " out of range [" +
                         std::to_string(spec.min_int) + ", " + std::to_string(spec.max_int) + "]");
        }
        return v;
    }
    case ParamKind::Real: {
        const double v = to_real(spec.name, value);
        if (!(v > 0.0) || !std::isfinite(v)) {
            config_error("parameter --" + spec.name + " must be positive and finite");
        }
        return v;
    }
    case ParamKind::Choice:
        if (std::find(spec.choices.begin(), spec.choices.end(), value) == spec.choices.end()) {
            std::string allowed;
            for (const auto &c : spec.choices) allowed += (allowed.empty() ? "" : ", ") + c;
            config_error("parameter --" + spec.name + ": '" + value + "' is not one of {" + allowed + "}");
        }
        return value;
    case ParamKind::Text:
        return value;
    }
    return value;
}

void check_split_text(const std::string &value) {
    try {
        const auto [a, b] = parse_split(value);
        (void)a;
        (void)b;
    } catch (const Error &e) {
        config_error(std::string("parameter --split: ") + e.what());
    }
}

void cross_validate(ExperimentConfig &cfg) {
    switch (cfg.experiment) {
    case Experiment::Schmidt:
        check_split_text(cfg.text("split"));
        break;
    case Experiment::Chain: {
        const std::string &amps = cfg.text("amplitudes");
        if (amps.empty()) break;
        std::vector<std::complex<double>> parsed;
        try {
            parsed = parse_amplitudes(amps);
        } catch (const Error &e) {
            config_error(std::string("parameter --amplitudes: ") + e.what());
        }
        if (static_cast<std::int64_t>(parsed.size()) != cfg.integer("dim")) {
            config_error("shape: --amplitudes has " + std::to_string(parsed.size()) + " entries but --dim is " +
                         std::to_string(cfg.integer("dim")));
        }
        if (std::all_of(parsed.begin(), parsed.end(), [](auto z) { return z == std::complex<double>(0.0); })) {
            config_error("degenerate state: --amplitudes is the zero vector");
        }
        break;
    }
    case Experiment::Worlds:
        if (cfg.real("universe-age-s") <= cfg.real("planck-time-s")) {
            config_error("--universe-age-s must exceed --planck-time-s");
        }
        break;
    default:
        break;
    }
}

const ParamSpec &find_spec(Experiment e, const std::string &key) {
    for (const auto &s : parameter_specs(e)) {
        if (s.name == key) return s;
    }
    config_error("unknown parameter --" + key + " for experiment " + std::string(to_string(e)));
}

}  // namespace

std::int64_t ExperimentConfig::integer(const std::string &key) const {
    return std::get<std::int64_t>(parameters.at(key));
}

double ExperimentConfig::real(const std::string &key) const { return std::get<double>(parameters.at(key)); }

const std::string &ExperimentConfig::text(const std::string &key) const {
    return std::get<std::string>(parameters.at(key));
}

const std::vector<Experiment> &all_experiments() {
    static const std::vector<Experiment> all = {Experiment::Schmidt, Experiment::Branch,     Experiment::Chain,
                                                Experiment::Overlap, Experiment::Zeno,       Experiment::ZenoRandom,
                                                Experiment::Worlds,  Experiment::Evolve};
    return all;
}

std::string_view to_string(Experiment e) {
    switch (e) {
    case Experiment::Schmidt: return "schmidt";
    case Experiment::Branch: return "branch";
    case Experiment::Chain: return "chain";
    case Experiment::Overlap: return "overlap";
    case Experiment::Zeno: return "zeno";
    case Experiment::ZenoRandom: return "zeno-random";
    case Experiment::Worlds: return "worlds";
    case Experiment::Evolve: return "evolve";
    }
    return "?";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
    for (Experiment e : all_experiments()) {
        if (to_string(e) == name) return e;
    }
    return std::nullopt;
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

const std::vector<ParamSpec> &parameter_specs(Experiment e) {
    static const std::map<Experiment, std::vector<ParamSpec>> table = {
        {Experiment::Schmidt, {text("split", "4x6", "bipartite split of a Haar-random state, AxB")}},
        {Experiment::Branch,
         {integer("dim", "2", 1, kMaxDim, "object dimension (= outcomes per measurement)"),
          integer("devices", "3", 1, 64, "number of devices coupled in turn"),
          integer("max-leaves", "4096", 1, 1 << 24, "tree growth cap")}},
        {Experiment::Chain,
         {integer("dim", "2", 1, kMaxDim, "object dimension"),
          integer("devices", "5", 1, 64, "number of fresh devices"),
          text("amplitudes", "", "initial object amplitudes re[:im],... (default: equal superposition)"),
          choice("reprepare", {"initial", "haar", "none"}, "object re-preparation between devices"),
          integer("max-leaves", "4096", 1, 1 << 24, "tree growth cap")}},
        {Experiment::Overlap,
         {integer("dim", std::nullopt, 1, kMaxDim, "Hilbert-space dimension N"),
          integer("trials", std::nullopt, 1, kMaxTrials, "number of random pairs")}},
        {Experiment::Zeno, {integer("k", std::nullopt, 0, 1'000'000, "intermediate polarizers")}},
        {Experiment::ZenoRandom,
         {integer("dim", std::nullopt, 2, kMaxDim, "Hilbert-space dimension"),
          integer("k", std::nullopt, 0, 4096, "random intermediate projectors"),
          integer("trials", std::nullopt, 1, kMaxTrials, "number of chains")}},
        {Experiment::Worlds,
         {choice("model", {"linear", "exponential"}, "growth function f"),
          real("universe-age-s", "4.35e17", "age of the universe in seconds"),
          real("planck-time-s", "5.39e-44", "Planck time in seconds")}},
        {Experiment::Evolve,
         {integer("depth", std::nullopt, 0, 1'000'000, "number of mutation steps"),
          choice("mode", {"single-history", "full-branching"}, "sampling mode"),
          integer("trials", "100000", 1, kMaxTrials, "histories sampled in single-history mode")}},
    };
    return table.at(e);
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos) {
            config_error("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(trimmed.substr(0, eq));
        const std::string value = trim(trimmed.substr(eq + 1));
        if (key.empty()) {
            config_error("config line " + std::to_string(lineno) + ": empty key");
        }
        if (!out.emplace(key, value).second) {
            config_error("config line " + std::to_string(lineno) + ": repeated key '" + key + "'");
        }
    }
    return out;
}

ExperimentConfig validate_config(Experiment e, const std::map<std::string, std::string> &raw) {
    ExperimentConfig cfg;
    cfg.experiment = e;
    const auto &specs = parameter_specs(e);
    for (const auto &[key, value] : raw) {
        const bool shared = std::find(kSharedKeys.begin(), kSharedKeys.end(), key) != kSharedKeys.end();
        const bool known =
            shared || key == "experiment" ||
            std::any_of(specs.begin(), specs.end(), [&](const ParamSpec &s) { return s.name == key; });
        if (!known) {
            config_error("unknown parameter '" + key + "' for experiment " + std::string(to_string(e)));
        }
    }
    if (const auto it = raw.find("experiment"); it != raw.end() && it->second != to_string(e)) {
        config_error("config file names experiment '" + it->second + "' but '" + std::string(to_string(e)) +
                     "' was requested");
    }
    for (const auto &spec : specs) {
        const auto it = raw.find(spec.name);
        if (it == raw.end() && !spec.default_value) {
            config_error("missing required parameter --" + spec.name + " for experiment " +
                         std::string(to_string(e)));
        }
        cfg.parameters[spec.name] = convert(spec, it != raw.end() ? it->second : *spec.default_value);
    }
    if (const auto it = raw.find("seed"); it != raw.end()) {
        const std::string &s = it->second;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cfg.seed);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
            config_error("parameter --seed: '" + s + "' is not an unsigned 64-bit integer");
        }
    }
    if (const auto it = raw.find("format"); it != raw.end()) {
        if (it->second == "json") {
            cfg.output_format = OutputFormat::Json;
        } else if (it->second == "csv") {
            cfg.output_format = OutputFormat::Csv;
        } else {
            config_error("parameter --format: '" + it->second + "' is not one of {json, csv}");
        }
    }
    if (const auto it = raw.find("out"); it != raw.end()) {
        if (it->second.empty()) config_error("parameter --out is empty");
        cfg.output_path = it->second;
    }
    if (const auto it = raw.find("threads"); it != raw.end()) {
        const std::int64_t t = to_integer("threads", it->second);
        if (t < 0 || t > 1024) config_error("parameter --threads out of range [0, 1024]");
        cfg.threads = t == 0 ? std::max(1u, std::thread::hardware_concurrency()) : static_cast<unsigned>(t);
    }
    cross_validate(cfg);
    return cfg;
}

ParamValue canonical_param(Experiment e, const std::string &key, const ParamValue &value) {
    const ParamSpec &spec = find_spec(e, key);
    switch (spec.kind) {
    case ParamKind::Integer:
        if (const auto *i = std::get_if<std::int64_t>(&value)) return *i;
        break;
    case ParamKind::Real:
        if (const auto *i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
        if (const auto *d = std::get_if<double>(&value)) return *d;
        break;
    case ParamKind::Text:
    case ParamKind::Choice:
        if (const auto *s = std::get_if<std::string>(&value)) return *s;
        break;
    }
    config_error("parameter '" + key + "' has the wrong type");
}

ParsedCommand parse_command(std::span<const std::string> args) {
    CLI::App app{"Branching-dynamics experiments with deterministic seeded reports", "everett"};
    app.require_subcommand(1);

    std::map<std::string, std::string> flags;
    std::string config_path;
    for (Experiment e : all_experiments()) {
        CLI::App *sub = app.add_subcommand(std::string(to_string(e)));
        for (const auto &spec : parameter_specs(e)) {
            std::string help = spec.help;
            if (spec.default_value && !spec.default_value->empty()) help += " [" + *spec.default_value + "]";
            sub->add_option_function<std::string>(
                "--" + spec.name, [&flags, name = spec.name](const std::string &v) { flags[name] = v; }, help);
        }
        sub->add_option_function<std::string>(
            "--seed", [&flags](const std::string &v) { flags["seed"] = v; }, "64-bit seed [0]");
        sub->add_option_function<std::string>(
            "--format", [&flags](const std::string &v) { flags["format"] = v; }, "json or csv [json]");
        sub->add_option_function<std::string>(
            "--out", [&flags](const std::string &v) { flags["out"] = v; }, "output path, - for stdout [-]");
        sub->add_option_function<std::string>(
            "--threads", [&flags](const std::string &v) { flags["threads"] = v; },
            "worker threads, 0 for all cores [1]");
        sub->add_option("--config", config_path, "key=value parameter file; flags take precedence");
    }

    // CLI11 consumes arguments back to front.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        CLI::App *chosen = nullptr;
        for (CLI::App *sub : app.get_subcommands()) chosen = sub;
        return {std::nullopt, chosen ? chosen->help() : app.help()};
    } catch (const CLI::CallForAllHelp &) {
        return {std::nullopt, app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError &e) {
        config_error(e.what());
    }

    const CLI::App *sub = app.get_subcommands().front();
    const Experiment experiment = *parse_experiment(sub->get_name());

    std::map<std::string, std::string> merged;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            throw Error(ErrorKind::Io, "cannot read config file '" + config_path + "'");
        }
        const std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        merged = parse_config_text(body);
    }
    for (const auto &[k, v] : flags) merged[k] = v;
    return {validate_config(experiment, merged), {}};
}

ExperimentConfig parse_config(std::span<const std::string> args) {
    ParsedCommand parsed = parse_command(args);
    if (!parsed.config) config_error("help requested");
    return std::move(*parsed.config);
}

}  // namespace everett
