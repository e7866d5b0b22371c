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

// Dense finite-dimensional state and operator arithmetic.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "everett/random.hpp"

namespace everett {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

namespace tol {
inline constexpr double norm = 1e-12;
inline constexpr double herm = 1e-12;
inline constexpr double eig = 1e-10;
inline constexpr double rank = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double psd = 1e-10;
// Adjacent eigenvalues closer than this are one degenerate cluster.
inline constexpr double degenerate_gap = 1e-9;
// First component with modulus above this carries the phase convention.
inline constexpr double phase_anchor = 1e-9;
}  // namespace tol

/// Largest total Hilbert-space dimension any state may have.
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 14;

/// Normalized amplitude vector over a tensor-product basis. Subsystem 0 is
/// the most significant index (row-major Kronecker order).
class StateVector {
public:
    const Vector &amplitudes() const noexcept { return amplitudes_; }
    const std::vector<std::size_t> &dims() const noexcept { return dims_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

private:
    StateVector(Vector amplitudes, std::vector<std::size_t> dims)
        : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {}

    friend StateVector make_state(Vector amplitudes, std::vector<std::size_t> dims);

    Vector amplitudes_;
    std::vector<std::size_t> dims_;
};

struct BipartiteSplit {
    std::size_t dim_i = 1;
    std::size_t dim_ii = 1;

    std::size_t total() const noexcept { return dim_i * dim_ii; }
    friend bool operator==(const BipartiteSplit &, const BipartiteSplit &) = default;
};

enum class Subsystem { I, II };

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
public:
    const Matrix &entries() const noexcept { return entries_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

private:
    explicit DensityMatrix(Matrix entries) : entries_(std::move(entries)) {}

    friend DensityMatrix make_density(Matrix entries);
    friend DensityMatrix density_of(const StateVector &psi);
    friend DensityMatrix partial_trace(const StateVector &, BipartiteSplit, Subsystem);

    Matrix entries_;
};

class UnitaryOperator {
public:
    const Matrix &matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

private:
    explicit UnitaryOperator(Matrix m) : matrix_(std::move(m)) {}

    friend UnitaryOperator make_unitary(Matrix m);

    Matrix matrix_;
};

struct HermitianEigen {
    std::vector<double> values;  // descending
    Matrix vectors;              // column n pairs with values[n]
};

/// Normalizes `amplitudes`. Throws DegenerateState for a zero vector and
/// Shape when the length is not the product of `dims`.
StateVector make_state(Vector amplitudes, std::vector<std::size_t> dims);
StateVector make_state(std::span<const Complex> amplitudes, std::vector<std::size_t> dims);

/// |index> in a single subsystem of dimension `dim`.
StateVector basis_state(std::size_t dim, std::size_t index);

/// Validates Hermiticity, unit trace and positivity.
DensityMatrix make_density(Matrix entries);

/// Throws NotUnitary unless max |U^dagger U - 1| < tol::unitary.
UnitaryOperator make_unitary(Matrix m);

StateVector tensor(const StateVector &a, const StateVector &b);

StateVector apply_unitary(const UnitaryOperator &u, const StateVector &psi);

/// Applies `u` to the listed subsystems of `psi` (identity elsewhere). The
/// operator's basis is the Kronecker product of the targets in list order.
StateVector apply_local(const UnitaryOperator &u, const StateVector &psi,
                        std::span<const std::size_t> targets);

/// <a|b>
Complex inner(const StateVector &a, const StateVector &b);

/// min over theta of ||a - e^{i theta} b||.
double distance_up_to_phase(const StateVector &a, const StateVector &b);

DensityMatrix density_of(const StateVector &psi);

void check_split(const StateVector &psi, BipartiteSplit split);

/// Reduced density matrix of the kept subsystem.
DensityMatrix partial_trace(const StateVector &psi, BipartiteSplit split, Subsystem keep);

/// Eigen-decomposition with eigenvalues sorted descending. Degenerate
/// clusters are re-spanned by Gram-Schmidt over the standard basis in index
/// order, and each vector's first significant component is made real
/// positive, so the result does not depend on solver internals.
HermitianEigen eig_hermitian(const DensityMatrix &rho);
HermitianEigen eig_hermitian(const Matrix &hermitian);

StateVector haar_random_state(std::size_t dim, std::uint64_t seed);
StateVector haar_random_state(std::size_t dim, Rng &rng);

/// QR of a complex Ginibre matrix with the R-diagonal phases divided out.
UnitaryOperator haar_random_unitary(std::size_t dim, std::uint64_t seed);
UnitaryOperator haar_random_unitary(std::size_t dim, Rng &rng);

/// A unitary whose first column is `psi` (Householder completion); the
/// identity when psi is already |0>.
UnitaryOperator completion_unitary(const StateVector &psi);

std::size_t product(std::span<const std::size_t> dims);

/// Kronecker product; `a` indexes the more significant factor.
Matrix kron(const Matrix &a, const Matrix &b);

}  // namespace everett
