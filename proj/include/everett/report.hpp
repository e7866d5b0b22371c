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

// Running a configured experiment and serializing its report.
//
// JSON output is one object with sorted keys: {"config", "result",
// "version"}. CSV output carries the result only: scalar columns (sorted)
// followed by the columns of the result's table, one line per table row,
// with the scalars repeated. Doubles are written with 17 significant digits.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "everett/config.hpp"
#include "everett/experiments.hpp"

namespace everett {

inline constexpr std::string_view kToolVersion = EVERETT_VERSION;

struct LedgerRow {
    std::uint64_t step = 0;
    double total_entropy = 0.0;
    double branch_entropy_sum = 0.0;
    std::uint64_t leaf_count = 0;
    friend bool operator==(const LedgerRow &, const LedgerRow &) = default;
};

struct SchmidtReport {
    std::size_t dim_i = 0;
    std::size_t dim_ii = 0;
    std::uint64_t seed = 0;
    std::size_t rank = 0;
    double entanglement_entropy = 0.0;
    double spectra_gap = 0.0;
    double reconstruction_error = 0.0;
    std::vector<double> lambdas;
    friend bool operator==(const SchmidtReport &, const SchmidtReport &) = default;
};

struct BranchReport {
    std::size_t object_dim = 0;
    std::size_t devices = 0;
    std::uint64_t seed = 0;
    std::uint64_t final_leaf_count = 0;
    double final_total_entropy = 0.0;
    std::vector<LedgerRow> ledger;
    friend bool operator==(const BranchReport &, const BranchReport &) = default;
};

struct ChainReport {
    std::size_t object_dim = 0;
    std::size_t devices = 0;
    std::uint64_t seed = 0;
    std::string reprepare;
    double final_total_entropy = 0.0;
    double followed_weight = 0.0;  // cumulative weight of the followed branch
    std::vector<LedgerRow> ledger;
    friend bool operator==(const ChainReport &, const ChainReport &) = default;
};

using ResultPayload = std::variant<SchmidtReport, BranchReport, ChainReport, OverlapReport, ZenoReport,
                                   WorldCountReport, ComplexityReport>;

struct ExperimentReport {
    ExperimentConfig config;
    std::string version{kToolVersion};
    ResultPayload result;
    double wall_time_s = 0.0;  // not serialized
};

/// Runs exactly one experiment. Resource caps surface as ResourceCap.
ExperimentReport run_experiment(const ExperimentConfig &config);

std::string emit_report(const ExperimentReport &report, OutputFormat format);

/// Inverse of emit_report(JSON). wall_time_s, output_path and threads are
/// not part of the file and come back as defaults.
ExperimentReport parse_report_json(std::string_view text);

/// Inverse of emit_report(CSV) for the result payload.
ResultPayload parse_result_csv(Experiment experiment, std::string_view text);

/// Throws Io unless the directory that would hold `path` exists.
void check_output_path(const std::string &path);

/// Writes `bytes` to `path`, or to `out` when the path is "-". Throws Io.
void write_report(const std::string &bytes, const std::string &path, std::ostream &out);

}  // namespace everett
