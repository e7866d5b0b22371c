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

#include "everett/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/QR>

#include "everett/error.hpp"

namespace everett {

namespace {

double max_abs(const Matrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void fix_phase(Eigen::Ref<Vector> v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > tol::phase_anchor) {
            v *= std::conj(v[i]) / std::abs(v[i]);
            v[i] = Complex(v[i].real(), 0.0);
            return;
        }
    }
}

// Replaces the columns of `block` by the Gram-Schmidt image of e_0, e_1, ...
// projected onto their span. Two passes of modified Gram-Schmidt per vector.
void respan_over_standard_basis(Eigen::Ref<Matrix> block) {
    const Eigen::Index n = block.rows();
    const Eigen::Index m = block.cols();
    const Matrix basis = block;
    Eigen::Index found = 0;
    for (Eigen::Index k = 0; k < n && found < m; ++k) {
        Vector u = basis * basis.row(k).adjoint();
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < found; ++j) {
                u -= block.col(j) * block.col(j).dot(u);
            }
        }
        const double norm = u.norm();
        if (norm > 1e-8) {
            block.col(found++) = u / norm;
        }
    }
}

}  // namespace

std::size_t product(std::span<const std::size_t> dims) {
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) {
            throw Error(ErrorKind::Shape, "shape: subsystem dimension must be >= 1");
        }
        if (total > std::numeric_limits<std::size_t>::max() / d) {
            throw Error(ErrorKind::ResourceCap, "dimension cap: total dimension overflows");
        }
        total *= d;
    }
    return total;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

StateVector make_state(Vector amplitudes, std::vector<std::size_t> dims) {
    if (dims.empty()) {
        throw Error(ErrorKind::Shape, "shape: dimension list is empty");
    }
    const std::size_t total = product(dims);
    if (total > kMaxDimension) {
        throw Error(ErrorKind::ResourceCap,
                    "dimension cap: total dimension " + std::to_string(total) + " exceeds " +
                        std::to_string(kMaxDimension));
    }
    if (static_cast<std::size_t>(amplitudes.size()) != total) {
        throw Error(ErrorKind::Shape, "shape: " + std::to_string(amplitudes.size()) +
                                          " amplitudes for total dimension " + std::to_string(total));
    }
    if (!amplitudes.allFinite()) {
        throw Error(ErrorKind::InvalidArgument, "amplitudes must be finite");
    }
    const double norm = amplitudes.norm();
    if (norm == 0.0) {
        throw Error(ErrorKind::DegenerateState, "degenerate state: zero vector");
    }
    amplitudes /= norm;
    return StateVector(std::move(amplitudes), std::move(dims));
}

StateVector make_state(std::span<const Complex> amplitudes, std::vector<std::size_t> dims) {
    Vector v(static_cast<Eigen::Index>(amplitudes.size()));
    std::copy(amplitudes.begin(), amplitudes.end(), v.data());
    return make_state(std::move(v), std::move(dims));
}

StateVector basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw Error(ErrorKind::Shape, "shape: basis index out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return make_state(std::move(v), {dim});
}

DensityMatrix make_density(Matrix entries) {
    if (entries.rows() != entries.cols() || entries.rows() == 0) {
        throw Error(ErrorKind::Shape, "shape: density matrix must be square and non-empty");
    }
    if (max_abs(entries - entries.adjoint()) >= tol::herm) {
        throw Error(ErrorKind::NotHermitian, "density matrix is not Hermitian");
    }
    if (std::abs(entries.trace() - Complex(1.0)) >= tol::norm) {
        throw Error(ErrorKind::InvalidArgument, "density matrix trace differs from 1");
    }
    Matrix sym = 0.5 * (entries + entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol::psd) {
        throw Error(ErrorKind::InvalidArgument, "density matrix is not positive semidefinite");
    }
    return DensityMatrix(std::move(sym));
}

UnitaryOperator make_unitary(Matrix m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::Shape, "shape: unitary must be square and non-empty");
    }
    const Matrix defect = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
    if (max_abs(defect) >= tol::unitary) {
        throw Error(ErrorKind::NotUnitary, "operator is not unitary");
    }
    return UnitaryOperator(std::move(m));
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    const Eigen::Index nb = b.amplitudes().size();
    Vector out(a.amplitudes().size() * nb);
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        out.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
    }
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return make_state(std::move(out), std::move(dims));
}

StateVector apply_unitary(const UnitaryOperator &u, const StateVector &psi) {
    if (u.dim() != psi.dim()) {
        throw Error(ErrorKind::Shape, "dimension mismatch: operator " + std::to_string(u.dim()) +
                                          " vs state " + std::to_string(psi.dim()));
    }
    return make_state(Vector(u.matrix() * psi.amplitudes()), psi.dims());
}

StateVector apply_local(const UnitaryOperator &u, const StateVector &psi,
                        std::span<const std::size_t> targets) {
    const auto &dims = psi.dims();
    const std::size_t n_sub = dims.size();
    std::vector<bool> used(n_sub, false);
    std::vector<std::size_t> target_dims;
    for (std::size_t t : targets) {
        if (t >= n_sub || used[t]) {
            throw Error(ErrorKind::Shape, "shape: invalid or repeated target subsystem");
        }
        used[t] = true;
        target_dims.push_back(dims[t]);
    }
    if (targets.empty() || product(target_dims) != u.dim()) {
        throw Error(ErrorKind::Shape, "dimension mismatch: operator does not match target subsystems");
    }

    std::vector<std::size_t> strides(n_sub, 1);
    for (std::size_t s = n_sub - 1; s > 0; --s) {
        strides[s - 1] = strides[s] * dims[s];
    }

    // Offsets of every target-register basis state relative to a base index
    // whose target digits are all zero.
    const std::size_t m = u.dim();
    std::vector<std::size_t> offsets(m, 0);
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t rem = c;
        for (std::size_t j = targets.size(); j-- > 0;) {
            offsets[c] += (rem % target_dims[j]) * strides[targets[j]];
            rem /= target_dims[j];
        }
    }

    Vector out = psi.amplitudes();
    Vector gathered(static_cast<Eigen::Index>(m));
    for (std::size_t base = 0; base < psi.dim(); ++base) {
        bool is_base = true;
        for (std::size_t t : targets) {
            if ((base / strides[t]) % dims[t] != 0) {
                is_base = false;
                break;
            }
        }
        if (!is_base) continue;
        for (std::size_t c = 0; c < m; ++c) {
            gathered[static_cast<Eigen::Index>(c)] = psi[base + offsets[c]];
        }
        const Vector mapped = u.matrix() * gathered;
        for (std::size_t c = 0; c < m; ++c) {
            out[static_cast<Eigen::Index>(base + offsets[c])] = mapped[static_cast<Eigen::Index>(c)];
        }
    }
    return make_state(std::move(out), dims);
}

Complex inner(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::Shape, "dimension mismatch in inner product");
    }
    return a.amplitudes().dot(b.amplitudes());
}

double distance_up_to_phase(const StateVector &a, const StateVector &b) {
    const Complex ov = inner(b, a);
    const Complex phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0);
    return (a.amplitudes() - phase * b.amplitudes()).norm();
}

DensityMatrix density_of(const StateVector &psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

void check_split(const StateVector &psi, BipartiteSplit split) {
    if (split.dim_i == 0 || split.dim_ii == 0 || split.total() != psi.dim()) {
        throw Error(ErrorKind::Shape, "inconsistent split: " + std::to_string(split.dim_i) + "x" +
                                          std::to_string(split.dim_ii) + " for dimension " +
                                          std::to_string(psi.dim()));
    }
}

DensityMatrix partial_trace(const StateVector &psi, BipartiteSplit split, Subsystem keep) {
    check_split(psi, split);
    // Column-major view: element (j, i) is the amplitude of |i>_I |j>_II.
    const Eigen::Map<const Matrix> mt(psi.amplitudes().data(), static_cast<Eigen::Index>(split.dim_ii),
                                      static_cast<Eigen::Index>(split.dim_i));
    Matrix rho = keep == Subsystem::I ? Matrix(mt.transpose() * mt.conjugate()) : Matrix(mt * mt.adjoint());
    Matrix sym = 0.5 * (rho + rho.adjoint());
    return DensityMatrix(std::move(sym));
}

HermitianEigen eig_hermitian(const DensityMatrix &rho) { return eig_hermitian(rho.entries()); }

HermitianEigen eig_hermitian(const Matrix &hermitian) {
    if (hermitian.rows() != hermitian.cols() || hermitian.rows() == 0) {
        throw Error(ErrorKind::Shape, "shape: eigensolve needs a square non-empty matrix");
    }
    if (max_abs(hermitian - hermitian.adjoint()) >= tol::herm) {
        throw Error(ErrorKind::NotHermitian, "eigensolve input is not Hermitian");
    }
    const Matrix sym = 0.5 * (hermitian + hermitian.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::InvalidArgument, "eigensolver failed to converge");
    }
    const Eigen::Index n = sym.rows();
    HermitianEigen out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()[n - 1 - k];
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }

    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= n; ++k) {
        const bool cluster_ends =
            k == n || out.values[static_cast<std::size_t>(k - 1)] - out.values[static_cast<std::size_t>(k)] >=
                          tol::degenerate_gap;
        if (cluster_ends) {
            if (k - start > 1) {
                respan_over_standard_basis(out.vectors.middleCols(start, k - start));
            }
            start = k;
        }
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        fix_phase(out.vectors.col(k));
    }
    return out;
}

StateVector haar_random_state(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_state(dim, rng);
}

StateVector haar_random_state(std::size_t dim, Rng &rng) {
    if (dim == 0) {
        throw Error(ErrorKind::InvalidArgument, "haar_random_state: dim must be >= 1");
    }
    if (dim > kMaxDimension) {
        throw Error(ErrorKind::ResourceCap, "dimension cap exceeded");
    }
    Vector v(static_cast<Eigen::Index>(dim));
    for (auto &z : v) {
        const auto [re, im] = rng.gaussian_pair();
        z = Complex(re, im);
    }
    return make_state(std::move(v), {dim});
}

UnitaryOperator haar_random_unitary(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_unitary(dim, rng);
}

UnitaryOperator haar_random_unitary(std::size_t dim, Rng &rng) {
    if (dim == 0) {
        throw Error(ErrorKind::InvalidArgument, "haar_random_unitary: dim must be >= 1");
    }
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix g(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            const auto [re, im] = rng.gaussian_pair();
            g(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex d = r(k, k);
        if (std::abs(d) > 0.0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return make_unitary(std::move(q));
}

UnitaryOperator completion_unitary(const StateVector &psi) {
    const auto n = static_cast<Eigen::Index>(psi.dim());
    const Vector &a = psi.amplitudes();
    const Complex s = std::abs(a[0]) > 0.0 ? a[0] / std::abs(a[0]) : Complex(1.0);
    Vector w = a;
    w[0] -= s;
    const double wn2 = w.squaredNorm();
    Matrix h = Matrix::Identity(n, n);
    if (wn2 > 0.0) {
        h -= (2.0 / wn2) * w * w.adjoint();
    }
    // h is a reflection sending psi to s|0>, so s*h sends |0> to psi.
    return make_unitary(s * h);
}

}  // namespace everett
