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

#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "everett/branching.hpp"
#include "everett/cli.hpp"
#include "everett/error.hpp"
#include "everett/experiments.hpp"
#include "everett/hilbert.hpp"
#include "everett/report.hpp"
#include "everett/schmidt.hpp"

namespace py = pybind11;
using namespace everett;

namespace {

std::vector<Vector> amplitudes_of(const std::vector<StateVector> &states) {
    std::vector<Vector> out;
    out.reserve(states.size());
    for (const auto &s : states) out.push_back(s.amplitudes());
    return out;
}

BipartiteSplit split_of(std::pair<std::size_t, std::size_t> dims) { return {dims.first, dims.second}; }

StateVector state_of(const Vector &amplitudes, std::pair<std::size_t, std::size_t> dims) {
    return make_state(amplitudes, {dims.first, dims.second});
}

py::dict ledger_dict(const EntropyLedger &ledger) {
    std::vector<std::uint64_t> steps;
    std::vector<double> totals;
    std::vector<std::vector<double>> branches;
    for (const auto &rec : ledger.records) {
        steps.push_back(rec.step);
        totals.push_back(rec.total_entropy);
        branches.push_back(rec.branch_entropies);
    }
    py::dict d;
    d["step"] = steps;
    d["total_entropy"] = totals;
    d["branch_entropies"] = branches;
    return d;
}

}  // namespace

PYBIND11_MODULE(_everett, m) {
    m.doc() = "Schmidt decomposition, branch trees and branching experiments";
    m.attr("__version__") = std::string(kToolVersion);

    py::register_exception<Error>(m, "EverettError", PyExc_ValueError);

    m.def("haar_random_state", [](std::size_t dim, std::uint64_t seed) { return haar_random_state(dim, seed).amplitudes(); },
          py::arg("dim"), py::arg("seed"));

    m.def(
        "schmidt_decompose",
        [](const Vector &psi, std::pair<std::size_t, std::size_t> split) {
            const SchmidtDecomposition d = schmidt_decompose(state_of(psi, split), split_of(split));
            py::dict out;
            out["lambdas"] = d.lambdas;
            out["left"] = amplitudes_of(d.left);
            out["right"] = amplitudes_of(d.right);
            out["rank"] = d.rank;
            out["entropy"] = entanglement_entropy(d);
            out["reconstruction"] = reconstruct(d).amplitudes();
            return out;
        },
        py::arg("psi"), py::arg("split"),
        "Schmidt coefficients (descending), basis vectors, rank, entropy and the rebuilt state.");

    m.def(
        "spectra_gap",
        [](const Vector &psi, std::pair<std::size_t, std::size_t> split) {
            return spectra_gap(state_of(psi, split), split_of(split));
        },
        py::arg("psi"), py::arg("split"));

    m.def(
        "partial_trace",
        [](const Vector &psi, std::pair<std::size_t, std::size_t> split, int keep) {
            return partial_trace(state_of(psi, split), split_of(split), keep == 0 ? Subsystem::I : Subsystem::II)
                .entries();
        },
        py::arg("psi"), py::arg("split"), py::arg("keep") = 0);

    m.def(
        "premeasurement_unitary",
        [](std::size_t n_outcomes, std::size_t device_dim) { return premeasurement_unitary(n_outcomes, device_dim).matrix(); },
        py::arg("n_outcomes"), py::arg("device_dim"));

    m.def(
        "run_chain_protocol",
        [](std::size_t object_dim, std::size_t devices, const std::vector<Complex> &amplitudes, std::uint64_t seed,
           const std::string &reprepare) {
            ChainOptions options;
            if (reprepare == "haar") {
                options.reprepare = Reprepare::Haar;
            } else if (reprepare == "none") {
                options.reprepare = Reprepare::None;
            } else if (reprepare != "initial") {
                throw Error(ErrorKind::InvalidArgument, "reprepare must be initial, haar or none");
            }
            const ChainOutcome run = run_chain_protocol(object_dim, devices, amplitudes, seed, options);
            py::dict out = ledger_dict(run.ledger);
            out["followed_weight"] = run.tree.node(run.followed.back()).cumulative_weight;
            out["leaf_count"] = run.tree.leaves().size();
            return out;
        },
        py::arg("object_dim"), py::arg("devices"), py::arg("amplitudes"), py::arg("seed") = 0,
        py::arg("reprepare") = "initial");

    m.def(
        "run_branching_protocol",
        [](std::size_t object_dim, std::size_t devices, std::uint64_t seed, std::size_t max_leaves) {
            const BranchTree tree = run_branching_protocol(object_dim, devices, seed, max_leaves);
            py::dict out = ledger_dict(tree.ledger());
            std::vector<double> weights;
            for (NodeId id : tree.leaves()) weights.push_back(tree.node(id).cumulative_weight);
            out["leaf_weights"] = weights;
            return out;
        },
        py::arg("object_dim"), py::arg("devices"), py::arg("seed") = 0, py::arg("max_leaves") = kDefaultMaxLeaves);

    m.def(
        "overlap_statistics",
        [](std::size_t dim, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
            const OverlapReport r = overlap_statistics(dim, trials, seed, {threads});
            return py::make_tuple(r.mean_overlap_sq, r.std_error);
        },
        py::arg("dim"), py::arg("trials"), py::arg("seed") = 0, py::arg("threads") = 1,
        "Returns (mean |<a|b>|^2, standard error).");

    m.def(
        "polarizer_chain", [](std::size_t k) { return polarizer_chain(k).transmission_probability; }, py::arg("k"));

    m.def(
        "random_projection_chain",
        [](std::size_t dim, std::size_t k, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
            const ZenoReport r = random_projection_chain(dim, k, trials, seed, {threads});
            return py::make_tuple(r.transmission_probability, r.std_error);
        },
        py::arg("dim"), py::arg("k"), py::arg("trials"), py::arg("seed") = 0, py::arg("threads") = 1);

    m.def(
        "world_count",
        [](const std::string &model, double universe_age_s, double planck_time_s) {
            WorldCountConfig cfg{universe_age_s, planck_time_s, GrowthModel::Linear};
            if (model == "exponential") {
                cfg.growth_model = GrowthModel::Exponential;
            } else if (model != "linear") {
                throw Error(ErrorKind::InvalidArgument, "model must be linear or exponential");
            }
            const WorldCountReport r = world_count(cfg);
            return r.log10_worlds ? *r.log10_worlds : *r.log10_log10_worlds;
        },
        py::arg("model") = "linear", py::arg("universe_age_s") = 4.35e17, py::arg("planck_time_s") = 5.39e-44,
        "log10 of the world count (linear) or log10 log10 of it (exponential).");

    m.def(
        "evolution_walk",
        [](std::size_t depth, const std::string &mode, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
            const WalkMode wm = mode == "full-branching" ? WalkMode::FullBranching : WalkMode::SingleHistory;
            if (mode != "full-branching" && mode != "single-history") {
                throw Error(ErrorKind::InvalidArgument, "mode must be single-history or full-branching");
            }
            const ComplexityReport r = evolution_walk(depth, wm, trials, seed, {threads});
            py::dict out;
            out["max_complexity"] = r.max_complexity;
            out["mean_final_complexity"] = r.mean_final_complexity;
            out["std_error"] = r.std_error;
            out["branch_count"] = r.branch_count;
            return out;
        },
        py::arg("depth"), py::arg("mode") = "single-history", py::arg("trials") = 100000, py::arg("seed") = 0,
        py::arg("threads") = 1);

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, py::bytes(out.str()), err.str());
        },
        py::arg("args"), "Runs the command-line tool in process; returns (exit code, stdout bytes, stderr text).");
}
