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

// Branch tree driven by premeasurement interactions, with the entropy ledger.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "everett/hilbert.hpp"
#include "everett/schmidt.hpp"

namespace everett {

using NodeId = std::uint64_t;

inline constexpr std::size_t kDefaultMaxLeaves = 4096;

struct StateSnapshot {
    std::uint64_t step = 0;
    StateVector state;
};

struct BranchNode {
    NodeId id = 0;
    std::optional<NodeId> parent;
    std::vector<NodeId> children;
    double weight = 1.0;             // lambda relative to the parent
    double cumulative_weight = 1.0;  // product of weights from the root
    StateVector state;               // current state; factorized at birth
    double relative_entropy = 0.0;   // -weight ln weight
    double rescaled_entropy = 0.0;   // S^R after the latest in-branch interaction
    std::uint64_t birth_step = 0;
    std::vector<StateSnapshot> history;  // birth state, then each in-branch interaction
};

struct LedgerRecord {
    std::uint64_t step = 0;
    double total_entropy = 0.0;
    std::vector<double> branch_entropies;  // one per leaf, ascending id
};

struct EntropyLedger {
    std::vector<LedgerRecord> records;
};

/// A unitary acting on a subset of the state's subsystems.
struct LocalInteraction {
    UnitaryOperator op;
    std::vector<std::size_t> targets;
};

class BranchTree {
public:
    explicit BranchTree(StateVector root, std::size_t max_leaves = kDefaultMaxLeaves);

    NodeId root_id() const noexcept { return 0; }
    std::uint64_t step_counter() const noexcept { return step_; }
    std::size_t max_leaves() const noexcept { return max_leaves_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    /// Throws UnknownNode.
    const BranchNode &node(NodeId id) const;
    bool is_leaf(NodeId id) const;
    std::vector<NodeId> leaves() const;
    const EntropyLedger &ledger() const noexcept { return ledger_; }

    /// Applies the interaction to a leaf and splits it along the Schmidt
    /// basis of `split`. Returns the new leaf ids, or an empty list when the
    /// result stays a product state (the leaf is updated in place). Every
    /// call advances the step counter and appends one ledger record.
    std::vector<NodeId> interact_and_branch(NodeId leaf, const UnitaryOperator &u, BipartiteSplit split);
    std::vector<NodeId> interact_and_branch(NodeId leaf, const LocalInteraction &op, BipartiteSplit split);

private:
    std::vector<NodeId> branch_on(NodeId leaf, StateVector evolved, BipartiteSplit split);
    BranchNode &mutable_node(NodeId id);
    void record();

    std::map<NodeId, BranchNode> nodes_;
    std::size_t leaf_count_ = 1;
    std::uint64_t step_ = 0;
    std::size_t max_leaves_;
    EntropyLedger ledger_;
};

/// Generalized CNOT on object (dim n_outcomes) (x) device (dim device_dim):
/// |i>|j> -> |i>|(j + i) mod device_dim>. Throws PointerOverflow when the
/// device has fewer pointer states than outcomes.
UnitaryOperator premeasurement_unitary(std::size_t n_outcomes, std::size_t device_dim);

double branch_entropy(const BranchNode &node);

/// -sum over leaves of w ln w, with w the cumulative weight.
double total_entropy(const BranchTree &tree);

struct RescaledEntropyPoint {
    std::uint64_t step = 0;
    double entropy = 0.0;
};

/// Within-branch entanglement entropy across `split` at birth and after each
/// later in-branch interaction.
std::vector<RescaledEntropyPoint> rescaled_entropy_trace(const BranchTree &tree, NodeId id, BipartiteSplit split);

enum class Reprepare {
    Initial,  // rotate the followed branch's object back to the initial state
    Haar,     // seeded Haar-random object rotation before each later device
    None,
};

struct ChainOptions {
    Reprepare reprepare = Reprepare::Initial;
    std::size_t max_leaves = kDefaultMaxLeaves;
};

struct ChainOutcome {
    EntropyLedger ledger;
    BranchTree tree;
    std::vector<NodeId> followed;  // root, then the followed child after each step
    BipartiteSplit split;          // object | all devices
};

/// Couples the object to `n_devices` ready devices one at a time, always
/// continuing along the highest-weight child (lowest index on ties).
ChainOutcome run_chain_protocol(std::size_t object_dim, std::size_t n_devices, std::span<const Complex> amplitudes,
                                std::uint64_t seed, const ChainOptions &options = {});

/// Seeded Haar object state coupled to `n_devices` devices; every leaf is
/// measured at every step, with a shared Haar object rotation between steps.
BranchTree run_branching_protocol(std::size_t object_dim, std::size_t n_devices, std::uint64_t seed,
                                  std::size_t max_leaves = kDefaultMaxLeaves);

}  // namespace everett
