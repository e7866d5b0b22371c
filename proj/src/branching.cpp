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

#include "everett/branching.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "everett/error.hpp"

namespace everett {

namespace {

double weight_entropy(double w) { return w > 0.0 && w < 1.0 ? -w * std::log(w) : 0.0; }

}  // namespace

BranchTree::BranchTree(StateVector root, std::size_t max_leaves) : max_leaves_(max_leaves) {
    if (max_leaves == 0) {
        throw Error(ErrorKind::InvalidArgument, "max_leaves must be >= 1");
    }
    BranchNode node{.id = 0, .state = root};
    node.history.push_back({0, std::move(root)});
    nodes_.emplace(0, std::move(node));
}

const BranchNode &BranchTree::node(NodeId id) const {
    const auto it = nodes_.find(id);
    if (it == nodes_.end()) {
        throw Error(ErrorKind::UnknownNode, "unknown node " + std::to_string(id));
    }
    return it->second;
}

BranchNode &BranchTree::mutable_node(NodeId id) {
    const auto it = nodes_.find(id);
    if (it == nodes_.end()) {
        throw Error(ErrorKind::UnknownNode, "unknown node " + std::to_string(id));
    }
    return it->second;
}

bool BranchTree::is_leaf(NodeId id) const { return node(id).children.empty(); }

std::vector<NodeId> BranchTree::leaves() const {
    std::vector<NodeId> out;
    out.reserve(leaf_count_);
    for (const auto &[id, n] : nodes_) {
        if (n.children.empty()) out.push_back(id);
    }
    return out;
}

std::vector<NodeId> BranchTree::interact_and_branch(NodeId leaf, const UnitaryOperator &u, BipartiteSplit split) {
    if (!is_leaf(leaf)) {
        throw Error(ErrorKind::NotALeaf, "node " + std::to_string(leaf) + " is not a leaf");
    }
    return branch_on(leaf, apply_unitary(u, node(leaf).state), split);
}

std::vector<NodeId> BranchTree::interact_and_branch(NodeId leaf, const LocalInteraction &op, BipartiteSplit split) {
    if (!is_leaf(leaf)) {
        throw Error(ErrorKind::NotALeaf, "node " + std::to_string(leaf) + " is not a leaf");
    }
    return branch_on(leaf, apply_local(op.op, node(leaf).state, op.targets), split);
}

std::vector<NodeId> BranchTree::branch_on(NodeId leaf, StateVector evolved, BipartiteSplit split) {
    const SchmidtDecomposition dec = schmidt_decompose(evolved, split);
    const std::size_t r = schmidt_rank(dec);
    if (r > 1 && leaf_count_ - 1 + r > max_leaves_) {
        throw Error(ErrorKind::ResourceCap, "tree growth cap: " + std::to_string(leaf_count_ - 1 + r) +
                                                " leaves exceed " + std::to_string(max_leaves_));
    }

    const std::uint64_t step = ++step_;
    BranchNode &parent = mutable_node(leaf);
    parent.rescaled_entropy = entanglement_entropy(dec);
    parent.history.push_back({step, evolved});

    std::vector<NodeId> created;
    if (r <= 1) {
        parent.state = std::move(evolved);
        record();
        return created;
    }

    const double kept = std::accumulate(dec.lambdas.begin(), dec.lambdas.end(), 0.0);
    const double parent_weight = parent.cumulative_weight;
    const std::vector<std::size_t> dims = evolved.dims();
    NodeId next = nodes_.rbegin()->first + 1;
    for (std::size_t n = 0; n < r; ++n) {
        StateVector factorized = make_state(tensor(dec.left[n], dec.right[n]).amplitudes(), dims);
        const double w = dec.lambdas[n] / kept;
        BranchNode child{
            .id = next,
            .parent = leaf,
            .weight = w,
            .cumulative_weight = parent_weight * w,
            .state = factorized,
            .relative_entropy = weight_entropy(w),
            .rescaled_entropy = 0.0,
            .birth_step = step,
        };
        child.history.push_back({step, std::move(factorized)});
        nodes_.emplace(next, std::move(child));
        created.push_back(next++);
    }
    // std::map insertion does not invalidate `parent`.
    parent.children = created;
    leaf_count_ += r - 1;
    record();
    return created;
}

void BranchTree::record() {
    LedgerRecord rec{.step = step_};
    for (const auto &[id, n] : nodes_) {
        if (!n.children.empty()) continue;
        rec.branch_entropies.push_back(weight_entropy(n.cumulative_weight));
    }
    rec.total_entropy = total_entropy(*this);
    ledger_.records.push_back(std::move(rec));
}

UnitaryOperator premeasurement_unitary(std::size_t n_outcomes, std::size_t device_dim) {
    if (n_outcomes == 0) {
        throw Error(ErrorKind::InvalidArgument, "premeasurement needs at least one outcome");
    }
    if (device_dim < n_outcomes) {
        throw Error(ErrorKind::PointerOverflow, "pointer overflow: device dimension " + std::to_string(device_dim) +
                                                    " cannot record " + std::to_string(n_outcomes) + " outcomes");
    }
    if (n_outcomes * device_dim > kMaxDimension) {
        throw Error(ErrorKind::ResourceCap, "dimension cap exceeded by premeasurement operator");
    }
    const auto n = static_cast<Eigen::Index>(n_outcomes * device_dim);
    Matrix u = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < n_outcomes; ++i) {
        for (std::size_t j = 0; j < device_dim; ++j) {
            const auto from = static_cast<Eigen::Index>(i * device_dim + j);
            const auto to = static_cast<Eigen::Index>(i * device_dim + (j + i) % device_dim);
            u(to, from) = 1.0;
        }
    }
    return make_unitary(std::move(u));
}

double branch_entropy(const BranchNode &node) { return weight_entropy(node.weight); }

double total_entropy(const BranchTree &tree) {
    double s = 0.0;
    for (NodeId id : tree.leaves()) {
        s += weight_entropy(tree.node(id).cumulative_weight);
    }
    return s;
}

std::vector<RescaledEntropyPoint> rescaled_entropy_trace(const BranchTree &tree, NodeId id, BipartiteSplit split) {
    const BranchNode &n = tree.node(id);
    std::vector<RescaledEntropyPoint> trace;
    trace.reserve(n.history.size());
    for (const auto &snap : n.history) {
        trace.push_back({snap.step, entanglement_entropy(schmidt_decompose(snap.state, split))});
    }
    return trace;
}

namespace {

StateVector ready_register(std::size_t object_dim, std::size_t n_devices, const StateVector &object) {
    std::vector<std::size_t> dims(n_devices + 1, object_dim);
    // Checked before allocating so an oversize chain fails with the cap error.
    if (product(dims) > kMaxDimension) {
        throw Error(ErrorKind::ResourceCap, "dimension cap: object and " + std::to_string(n_devices) +
                                                " devices need " + std::to_string(product(dims)) + " amplitudes");
    }
    StateVector state = object;
    for (std::size_t k = 0; k < n_devices; ++k) {
        state = tensor(state, basis_state(object_dim, 0));
    }
    return state;
}

// Object factor of a state that is a product across object | rest.
StateVector object_factor(const StateVector &state, BipartiteSplit split) {
    return schmidt_decompose(state, split).left.front();
}

}  // namespace

ChainOutcome run_chain_protocol(std::size_t object_dim, std::size_t n_devices, std::span<const Complex> amplitudes,
                                std::uint64_t seed, const ChainOptions &options) {
    if (n_devices == 0) {
        throw Error(ErrorKind::InvalidArgument, "chain protocol needs at least one device");
    }
    if (object_dim == 0) {
        throw Error(ErrorKind::InvalidArgument, "object dimension must be >= 1");
    }
    const StateVector initial = make_state(amplitudes, {object_dim});
    ChainOutcome out{
        .ledger = {},
        .tree = BranchTree(ready_register(object_dim, n_devices, initial), options.max_leaves),
        .followed = {0},
        .split = {},
    };
    out.split = {object_dim, out.tree.node(0).state.dim() / object_dim};
    const UnitaryOperator measure = premeasurement_unitary(object_dim, object_dim);
    const Matrix to_initial = completion_unitary(initial).matrix();

    for (std::size_t k = 1; k <= n_devices; ++k) {
        const NodeId current = out.followed.back();
        Matrix rotation = Matrix::Identity(static_cast<Eigen::Index>(object_dim), static_cast<Eigen::Index>(object_dim));
        if (k > 1) {
            switch (options.reprepare) {
            case Reprepare::Initial: {
                const StateVector phi = object_factor(out.tree.node(current).state, out.split);
                rotation = to_initial * completion_unitary(phi).matrix().adjoint();
                break;
            }
            case Reprepare::Haar:
                rotation = haar_random_unitary(object_dim, derive_seed(seed, k)).matrix();
                break;
            case Reprepare::None:
                break;
            }
        }
        const Matrix step_op =
            measure.matrix() * kron(rotation, Matrix::Identity(static_cast<Eigen::Index>(object_dim),
                                                               static_cast<Eigen::Index>(object_dim)));
        const LocalInteraction interaction{make_unitary(step_op), {0, k}};
        const std::vector<NodeId> children = out.tree.interact_and_branch(current, interaction, out.split);

        NodeId next = current;
        double best = -1.0;
        for (NodeId c : children) {
            const double w = out.tree.node(c).weight;
            // Strict comparison keeps the lowest index among ties.
            if (w > best + tol::rank) {
                best = w;
                next = c;
            }
        }
        out.followed.push_back(next);
    }
    out.ledger = out.tree.ledger();
    return out;
}

BranchTree run_branching_protocol(std::size_t object_dim, std::size_t n_devices, std::uint64_t seed,
                                  std::size_t max_leaves) {
    if (n_devices == 0 || object_dim == 0) {
        throw Error(ErrorKind::InvalidArgument, "branching protocol needs object_dim >= 1 and n_devices >= 1");
    }
    Rng rng(seed);
    const StateVector object = haar_random_state(object_dim, rng);
    BranchTree tree(ready_register(object_dim, n_devices, object), max_leaves);
    const BipartiteSplit split{object_dim, tree.node(0).state.dim() / object_dim};
    const UnitaryOperator measure = premeasurement_unitary(object_dim, object_dim);
    const auto od = static_cast<Eigen::Index>(object_dim);

    for (std::size_t k = 1; k <= n_devices; ++k) {
        const Matrix rotation = k == 1 ? Matrix(Matrix::Identity(od, od)) : haar_random_unitary(object_dim, rng).matrix();
        const LocalInteraction interaction{make_unitary(measure.matrix() * kron(rotation, Matrix::Identity(od, od))),
                                           {0, k}};
        for (NodeId leaf : tree.leaves()) {
            tree.interact_and_branch(leaf, interaction, split);
        }
    }
    return tree;
}

}  // namespace everett
