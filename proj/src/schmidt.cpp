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

#include "everett/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "everett/error.hpp"

namespace everett {

namespace {

std::vector<double> nonzero_spectrum(const DensityMatrix &rho) {
    std::vector<double> values = eig_hermitian(rho).values;
    std::erase_if(values, [](double v) { return v <= tol::rank; });
    return values;
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const StateVector &psi, BipartiteSplit split) {
    check_split(psi, split);
    const auto d1 = static_cast<Eigen::Index>(split.dim_i);
    const auto d2 = static_cast<Eigen::Index>(split.dim_ii);
    const HermitianEigen eig = eig_hermitian(partial_trace(psi, split, Subsystem::I));

    // Row-major amplitude matrix M(i, j) = <i|<j|psi>.
    const Eigen::Map<const Matrix> mt(psi.amplitudes().data(), d2, d1);

    SchmidtDecomposition dec;
    dec.split = split;
    for (Eigen::Index n = 0; n < d1; ++n) {
        const double lambda = eig.values[static_cast<std::size_t>(n)];
        if (lambda <= tol::rank) break;
        // chi_n ~ sum_i conj(phi_n(i)) M(i, :)
        Vector chi = mt * eig.vectors.col(n).conjugate();
        const double weight = chi.squaredNorm();
        if (weight <= tol::rank) {
            throw Error(ErrorKind::DegenerateState,
                        "degenerate state: Schmidt pair " + std::to_string(n) + " has eigenvalue " +
                            std::to_string(lambda) + " but projected weight " + std::to_string(weight));
        }
        dec.lambdas.push_back(lambda);
        dec.left.push_back(make_state(Vector(eig.vectors.col(n)), {split.dim_i}));
        dec.right.push_back(make_state(std::move(chi), {split.dim_ii}));
    }
    dec.rank = dec.lambdas.size();
    if (dec.rank == 0) {
        throw Error(ErrorKind::DegenerateState, "degenerate state: no Schmidt coefficient above threshold");
    }
    return dec;
}

std::size_t schmidt_rank(const SchmidtDecomposition &dec) {
    return static_cast<std::size_t>(
        std::count_if(dec.lambdas.begin(), dec.lambdas.end(), [](double l) { return l > tol::rank; }));
}

double spectra_gap(const StateVector &psi, BipartiteSplit split) {
    check_split(psi, split);
    std::vector<double> a = nonzero_spectrum(partial_trace(psi, split, Subsystem::I));
    std::vector<double> b = nonzero_spectrum(partial_trace(psi, split, Subsystem::II));
    const std::size_t n = std::max(a.size(), b.size());
    a.resize(n, 0.0);
    b.resize(n, 0.0);
    double gap = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        gap = std::max(gap, std::abs(a[k] - b[k]));
    }
    return gap;
}

StateVector reconstruct(const SchmidtDecomposition &dec) {
    const auto d1 = static_cast<Eigen::Index>(dec.split.dim_i);
    const auto d2 = static_cast<Eigen::Index>(dec.split.dim_ii);
    Vector out = Vector::Zero(d1 * d2);
    for (std::size_t n = 0; n < dec.lambdas.size(); ++n) {
        const double s = std::sqrt(dec.lambdas[n]);
        const Vector &phi = dec.left[n].amplitudes();
        const Vector &chi = dec.right[n].amplitudes();
        for (Eigen::Index i = 0; i < d1; ++i) {
            out.segment(i * d2, d2) += (s * phi[i]) * chi;
        }
    }
    // make_state renormalizes, which absorbs the discarded sub-threshold weight.
    return make_state(std::move(out), {dec.split.dim_i, dec.split.dim_ii});
}

double shannon_entropy(const std::vector<double> &weights) {
    double s = 0.0;
    for (double p : weights) {
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

double entanglement_entropy(const SchmidtDecomposition &dec) {
    // A product state has exactly zero entropy, not the rounding residue of 1 ln 1.
    if (schmidt_rank(dec) <= 1) return 0.0;
    return std::max(0.0, shannon_entropy(dec.lambdas));
}

}  // namespace everett
