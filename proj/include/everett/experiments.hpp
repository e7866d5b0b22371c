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

// Seeded experiments: random overlaps, polarizer and random projection
// chains, world counts and complexity walks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace everett {

struct RunOptions {
    unsigned threads = 1;
};

struct OverlapReport {
    std::size_t hilbert_dim = 0;
    std::uint64_t trials = 0;
    double mean_overlap_sq = 0.0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
    friend bool operator==(const OverlapReport &, const OverlapReport &) = default;
};

enum class ZenoMode { DeterministicPolarizer, RandomProjection };

struct ZenoReport {
    ZenoMode mode = ZenoMode::DeterministicPolarizer;
    std::size_t n_intermediate = 0;
    double transmission_probability = 0.0;
    // Random-projection mode only.
    std::size_t hilbert_dim = 0;
    std::uint64_t trials = 0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
    friend bool operator==(const ZenoReport &, const ZenoReport &) = default;
};

enum class GrowthModel { Linear, Exponential };

struct WorldCountConfig {
    double universe_age_s = 4.35e17;
    double planck_time_s = 5.39e-44;
    GrowthModel growth_model = GrowthModel::Linear;
};

struct WorldCountReport {
    GrowthModel growth_model = GrowthModel::Linear;
    double universe_age_s = 0.0;
    double planck_time_s = 0.0;
    double log10_ratio = 0.0;
    std::optional<double> log10_worlds;        // linear model
    std::optional<double> log10_log10_worlds;  // exponential model
    friend bool operator==(const WorldCountReport &, const WorldCountReport &) = default;
};

enum class WalkMode { SingleHistory, FullBranching };

inline constexpr std::size_t kMaxFullBranchingDepth = 24;

struct ComplexityReport {
    std::size_t depth = 0;
    WalkMode mode = WalkMode::SingleHistory;
    std::uint64_t trials = 0;  // single-history only
    std::uint64_t seed = 0;
    std::int64_t max_complexity = 0;
    double mean_final_complexity = 0.0;
    double std_error = 0.0;  // zero for exhaustive enumeration
    std::uint64_t branch_count = 0;
    friend bool operator==(const ComplexityReport &, const ComplexityReport &) = default;
};

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Mean and standard error of the mean, summed in index order.
MeanEstimate estimate_mean(const std::vector<double> &samples);

/// Average |<i|f>|^2 over independent Haar-random pairs.
OverlapReport overlap_statistics(std::size_t dim, std::uint64_t trials, std::uint64_t seed,
                                 const RunOptions &options = {});

/// Vertical photon through k equally rotated polarizers and a final
/// horizontal one, by sequential projection in the plane.
ZenoReport polarizer_chain(std::size_t k);

/// cos^(2(k+1))(pi / (2(k+1)))
double polarizer_closed_form(std::size_t k);

/// Haar-random i and f with k Haar-random rank-1 projectors between them;
/// the trial value is the product of squared overlaps along the chain.
ZenoReport random_projection_chain(std::size_t dim, std::size_t k, std::uint64_t trials, std::uint64_t seed,
                                   const RunOptions &options = {});

WorldCountReport world_count(const WorldCountConfig &config);

/// Reflecting +-1 complexity walk from 0. Single-history samples `trials`
/// seeded paths; full-branching enumerates all 2^depth equally weighted
/// outcome sequences.
ComplexityReport evolution_walk(std::size_t depth, WalkMode mode, std::uint64_t trials, std::uint64_t seed,
                                const RunOptions &options = {});

std::string_view to_string(GrowthModel m);
std::string_view to_string(WalkMode m);
std::string_view to_string(ZenoMode m);

}  // namespace everett
