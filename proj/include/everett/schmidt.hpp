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

// Bi-orthogonal (Schmidt) decomposition across a bipartite split.

#include <cstddef>
#include <vector>

#include "everett/hilbert.hpp"

namespace everett {

/// psi = sum_n sqrt(lambdas[n]) left[n] (x) right[n], with lambdas descending
/// and only coefficients above tol::rank retained.
struct SchmidtDecomposition {
    std::vector<double> lambdas;
    std::vector<StateVector> left;   // subsystem I
    std::vector<StateVector> right;  // subsystem II
    std::size_t rank = 0;
    BipartiteSplit split;
};

/// Eigenvectors of rho_I give the left vectors; each right vector is psi
/// contracted with the conjugate left vector, normalized. This keeps the
/// relative phases of every pair consistent with psi.
SchmidtDecomposition schmidt_decompose(const StateVector &psi, BipartiteSplit split);

std::size_t schmidt_rank(const SchmidtDecomposition &dec);

/// Largest elementwise difference between the descending nonzero spectra of
/// rho_I and rho_II, shorter list zero-padded.
double spectra_gap(const StateVector &psi, BipartiteSplit split);

StateVector reconstruct(const SchmidtDecomposition &dec);

/// -sum lambda ln lambda, in nats.
double entanglement_entropy(const SchmidtDecomposition &dec);

/// -sum p ln p over p > 0.
double shannon_entropy(const std::vector<double> &weights);

}  // namespace everett
