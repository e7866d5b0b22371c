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

#include "everett/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "everett/error.hpp"
#include "everett/hilbert.hpp"
#include "everett/parallel.hpp"
#include "everett/random.hpp"

namespace everett {

MeanEstimate estimate_mean(const std::vector<double> &samples) {
    if (samples.empty()) return {};
    const auto n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double x : samples) sum += x;
    const double mean = sum / n;
    if (samples.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

namespace {

void require_trials(std::uint64_t trials) {
    if (trials == 0) throw Error(ErrorKind::InvalidArgument, "trials must be >= 1");
}

// Probability of passing i -> p_1 -> ... -> p_k -> f. i and f are drawn
// first so k = 0 reproduces the overlap statistic trial for trial.
double projection_chain_trial(std::size_t dim, std::size_t k, std::uint64_t trial_seed) {
    if (dim == 1) return 1.0;  // any two unit vectors in C^1 differ by a phase
    Rng rng(trial_seed);
    const StateVector initial = haar_random_state(dim, rng);
    const StateVector final_state = haar_random_state(dim, rng);
    double p = 1.0;
    StateVector current = initial;
    for (std::size_t j = 0; j < k; ++j) {
        StateVector projector = haar_random_state(dim, rng);
        p *= std::norm(inner(projector, current));
        current = std::move(projector);
    }
    return p * std::norm(inner(final_state, current));
}

}  // namespace

OverlapReport overlap_statistics(std::size_t dim, std::uint64_t trials, std::uint64_t seed, const RunOptions &options) {
    if (dim == 0) throw Error(ErrorKind::InvalidArgument, "dim must be >= 1");
    require_trials(trials);
    const auto samples = evaluate_indexed(
        trials, options.threads, [&](std::uint64_t t) { return projection_chain_trial(dim, 0, derive_seed(seed, t)); });
    const MeanEstimate est = estimate_mean(samples);
    return {dim, trials, est.mean, est.std_error, seed};
}

double polarizer_closed_form(std::size_t k) {
    const double stages = static_cast<double>(k + 1);
    return std::pow(std::cos(std::numbers::pi / (2.0 * stages)), 2.0 * stages);
}

ZenoReport polarizer_chain(std::size_t k) {
    const std::size_t stages = k + 1;
    const double step = std::numbers::pi / (2.0 * static_cast<double>(stages));
    // Polarization as a unit vector in the plane, starting vertical.
    double vx = 1.0;
    double vy = 0.0;
    double p = 1.0;
    for (std::size_t j = 1; j <= stages; ++j) {
        const double angle = step * static_cast<double>(j);
        const double ax = std::cos(angle);
        const double ay = std::sin(angle);
        const double amp = ax * vx + ay * vy;
        p *= amp * amp;
        vx = ax;
        vy = ay;
    }
    // Rounding in the sequential product grows with the number of stages.
    const double slack = 1e-12 + 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(stages);
    if (std::abs(p - polarizer_closed_form(k)) > slack) {
        throw Error(ErrorKind::Internal, "polarizer chain disagrees with closed form at k=" + std::to_string(k));
    }
    ZenoReport r;
    r.mode = ZenoMode::DeterministicPolarizer;
    r.n_intermediate = k;
    r.transmission_probability = std::clamp(p, 0.0, 1.0);
    return r;
}

ZenoReport random_projection_chain(std::size_t dim, std::size_t k, std::uint64_t trials, std::uint64_t seed,
                                   const RunOptions &options) {
    if (dim < 2) throw Error(ErrorKind::InvalidArgument, "random projection chain needs dim >= 2");
    require_trials(trials);
    const auto samples = evaluate_indexed(
        trials, options.threads, [&](std::uint64_t t) { return projection_chain_trial(dim, k, derive_seed(seed, t)); });
    const MeanEstimate est = estimate_mean(samples);
    ZenoReport r;
    r.mode = ZenoMode::RandomProjection;
    r.n_intermediate = k;
    r.transmission_probability = est.mean;
    r.hilbert_dim = dim;
    r.trials = trials;
    r.std_error = est.std_error;
    r.seed = seed;
    return r;
}

WorldCountReport world_count(const WorldCountConfig &config) {
    const double t = config.universe_age_s;
    const double tp = config.planck_time_s;
    if (!std::isfinite(t) || !std::isfinite(tp) || t <= 0.0 || tp <= 0.0) {
        throw Error(ErrorKind::InvalidArgument, "universe age and Planck time must be positive and finite");
    }
    if (t <= tp) {
        throw Error(ErrorKind::InvalidArgument, "universe age must exceed the Planck time");
    }
    WorldCountReport r;
    r.growth_model = config.growth_model;
    r.universe_age_s = t;
    r.planck_time_s = tp;
    r.log10_ratio = std::log10(t) - std::log10(tp);
    if (config.growth_model == GrowthModel::Linear) {
        r.log10_worlds = r.log10_ratio;
    } else {
        // N = e^(T/t_P), so log10 N = (T/t_P) log10(e).
        r.log10_log10_worlds = r.log10_ratio + std::log10(std::numbers::log10e);
    }
    return r;
}

namespace {

struct PathStats {
    std::uint64_t final_sum = 0;
    std::int64_t max_seen = 0;
};

// Paths are bit masks: bit s set means an upward mutation at step s.
PathStats enumerate_block(std::size_t depth, std::uint64_t first, std::uint64_t last) {
    PathStats out;
    for (std::uint64_t mask = first; mask < last; ++mask) {
        std::int64_t c = 0;
        std::int64_t peak = 0;
        for (std::size_t s = 0; s < depth; ++s) {
            if ((mask >> s) & 1U) {
                peak = std::max(peak, ++c);
            } else if (c > 0) {
                --c;
            }
        }
        out.final_sum += static_cast<std::uint64_t>(c);
        out.max_seen = std::max(out.max_seen, peak);
    }
    return out;
}

}  // namespace

ComplexityReport evolution_walk(std::size_t depth, WalkMode mode, std::uint64_t trials, std::uint64_t seed,
                                const RunOptions &options) {
    ComplexityReport r;
    r.depth = depth;
    r.mode = mode;
    r.seed = seed;

    if (mode == WalkMode::FullBranching) {
        if (depth > kMaxFullBranchingDepth) {
            throw Error(ErrorKind::ResourceCap, "full-branching depth " + std::to_string(depth) + " exceeds cap " +
                                                    std::to_string(kMaxFullBranchingDepth));
        }
        const std::uint64_t paths = std::uint64_t{1} << depth;
        const std::uint64_t block = std::min<std::uint64_t>(paths, std::uint64_t{1} << 16);
        const std::uint64_t blocks = paths / block;
        const auto parts = evaluate_indexed(blocks, options.threads, [&](std::uint64_t b) {
            return enumerate_block(depth, b * block, (b + 1) * block);
        });
        std::uint64_t sum = 0;
        for (const auto &p : parts) {
            sum += p.final_sum;
            r.max_complexity = std::max(r.max_complexity, p.max_seen);
        }
        r.branch_count = paths;
        r.mean_final_complexity = static_cast<double>(sum) / static_cast<double>(paths);
        return r;
    }

    require_trials(trials);
    const auto paths = evaluate_indexed(trials, options.threads, [&](std::uint64_t t) {
        Rng rng(derive_seed(seed, t));
        std::int64_t c = 0;
        std::int64_t peak = 0;
        for (std::size_t s = 0; s < depth; ++s) {
            if (rng.coin()) {
                peak = std::max(peak, ++c);
            } else if (c > 0) {
                --c;
            }
        }
        return std::pair{static_cast<double>(c), peak};
    });
    std::vector<double> finals;
    finals.reserve(paths.size());
    for (const auto &[c, peak] : paths) {
        finals.push_back(c);
        r.max_complexity = std::max(r.max_complexity, peak);
    }
    const MeanEstimate est = estimate_mean(finals);
    r.trials = trials;
    r.mean_final_complexity = est.mean;
    r.std_error = est.std_error;
    r.branch_count = 1;
    return r;
}

std::string_view to_string(GrowthModel m) { return m == GrowthModel::Linear ? "linear" : "exponential"; }

std::string_view to_string(WalkMode m) { return m == WalkMode::SingleHistory ? "single-history" : "full-branching"; }

std::string_view to_string(ZenoMode m) {
    return m == ZenoMode::DeterministicPolarizer ? "deterministic-polarizer" : "random-projection";
}

}  // namespace everett
