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

#pragma once

// Experiment configuration: parameter tables, flag and file parsing, and
// validation. Nothing here runs an experiment.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace everett {

enum class Experiment { Schmidt, Branch, Chain, Overlap, Zeno, ZenoRandom, Worlds, Evolve };

enum class OutputFormat { Json, Csv };

using ParamValue = std::variant<std::int64_t, double, std::string>;

struct ExperimentConfig {
    Experiment experiment = Experiment::Overlap;
    std::map<std::string, ParamValue> parameters;  // every parameter, defaults filled in
    std::uint64_t seed = 0;
    OutputFormat output_format = OutputFormat::Json;
    std::string output_path = "-";  // "-" is stdout
    unsigned threads = 1;

    std::int64_t integer(const std::string &key) const;
    double real(const std::string &key) const;
    const std::string &text(const std::string &key) const;

    friend bool operator==(const ExperimentConfig &, const ExperimentConfig &) = default;
};

enum class ParamKind { Integer, Real, Text, Choice };

struct ParamSpec {
    std::string name;
    ParamKind kind = ParamKind::Integer;
    std::optional<std::string> default_value;  // nullopt: required
    std::int64_t min_int = 0;
    std::int64_t max_int = INT64_MAX;
    std::vector<std::string> choices;
    std::string help;
};

const std::vector<Experiment> &all_experiments();
std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);
std::string_view to_string(OutputFormat f);

/// Experiment-specific parameters (not the shared seed/format/out/threads).
const std::vector<ParamSpec> &parameter_specs(Experiment e);

/// Flat `key=value` lines; `#` starts a comment. Throws Config on malformed
/// lines or repeated keys.
std::map<std::string, std::string> parse_config_text(std::string_view text);

/// Builds a validated config from raw string values. Unknown keys, missing
/// required parameters and out-of-range values throw Config.
ExperimentConfig validate_config(Experiment e, const std::map<std::string, std::string> &raw);

/// Converts a loosely typed value (as read back from a report) to the
/// canonical type of parameter `key`.
ParamValue canonical_param(Experiment e, const std::string &key, const ParamValue &value);

struct ParsedCommand {
    std::optional<ExperimentConfig> config;
    std::string help;  // set when --help was requested instead
};

/// argv without the program name: `<experiment> [--flag value]...
/// [--config file]`. Flags override file values. Throws Config for
/// invalid input and Io when the config file cannot be read.
ParsedCommand parse_command(std::span<const std::string> args);

/// parse_command, treating a help request as a config error.
ExperimentConfig parse_config(std::span<const std::string> args);

}  // namespace everett
