// Copyright 2026 The onesided Authors
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

/**
 * @file
 * Dense complex linear algebra used by every other layer: Kronecker
 * products, partial traces over qubit factors, spectral decompositions and
 * the trace / operator norms.
 *
 * Qubit ordering convention: factors are laid out left to right and the
 * leftmost qubit is the most significant bit of a basis index. Every index
 * computation in the library goes through this convention.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace onesided {

using Complex = std::complex<double>;

/// Row-major dense complex matrix.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default tolerance for Hermiticity / unitarity / projector predicates.
inline constexpr double kStructureTol = 1e-10;
/// Target residual for eigenpairs returned by the eigensolver.
inline constexpr double kEigenResidualTol = 1e-9;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
struct Spectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;  // column k belongs to eigenvalues[k]

    [[nodiscard]] ComplexMatrix reconstruct() const;
};

struct EigenPair {
    double value;
    ComplexVector vector;
};

[[nodiscard]] bool is_square(const ComplexMatrix &a);
[[nodiscard]] bool is_hermitian(const ComplexMatrix &a,
                                double tol = kStructureTol);
[[nodiscard]] bool is_unitary(const ComplexMatrix &a,
                              double tol = kStructureTol);
[[nodiscard]] bool is_projector(const ComplexMatrix &a,
                                double tol = kStructureTol);

[[nodiscard]] ComplexMatrix identity(std::size_t dim);
[[nodiscard]] ComplexMatrix outer(const ComplexVector &ket,
                                  const ComplexVector &bra);
[[nodiscard]] ComplexMatrix projector_onto(const ComplexVector &ket);
[[nodiscard]] ComplexVector basis_vector(std::size_t dim, std::size_t index);

/// Kronecker product; block (i, j) of the result equals a(i, j) * b.
[[nodiscard]] ComplexMatrix tensor(const ComplexMatrix &a,
                                   const ComplexMatrix &b);
[[nodiscard]] ComplexVector tensor(const ComplexVector &a,
                                   const ComplexVector &b);

/**
 * Partial trace over qubit positions.
 *
 * `num_qubits` is the total qubit count of `a`. `keep` lists the qubit
 * positions that survive, in the order they should appear in the result
 * (first entry becomes the most significant qubit). Every other qubit is
 * traced out.
 */
[[nodiscard]] ComplexMatrix partial_trace_qubits(const ComplexMatrix &a,
                                                 std::size_t num_qubits,
                                                 std::span<const std::size_t> keep);

/// Sum of singular values. Throws std::invalid_argument for non-square input.
[[nodiscard]] double trace_norm(const ComplexMatrix &a);
/// Largest singular value. Throws std::invalid_argument for non-square input.
[[nodiscard]] double operator_norm(const ComplexMatrix &a);
[[nodiscard]] RealVector singular_values(const ComplexMatrix &a);

/// Throws std::invalid_argument when `a` is not Hermitian within kStructureTol.
[[nodiscard]] Spectrum hermitian_spectrum(const ComplexMatrix &a);

/**
 * Largest eigenvalue of a Hermitian matrix with a unit eigenvector.
 *
 * Degenerate top eigenspaces return whichever vector the solver produces
 * first; the choice is deterministic for identical input bits.
 */
[[nodiscard]] EigenPair max_eigpair(const ComplexMatrix &m);

/// f applied to the spectrum of a Hermitian matrix.
template <class F>
[[nodiscard]] ComplexMatrix hermitian_function(const ComplexMatrix &a, F f) {
    const Spectrum s = hermitian_spectrum(a);
    RealVector mapped(s.eigenvalues.size());
    for (Eigen::Index k = 0; k < mapped.size(); ++k) {
        mapped[k] = f(s.eigenvalues[k]);
    }
    return s.eigenvectors * mapped.cast<Complex>().asDiagonal() *
           s.eigenvectors.adjoint();
}

/// PSD square root; eigenvalues in [-1e-10, 0) are clamped to zero.
[[nodiscard]] ComplexMatrix psd_sqrt(const ComplexMatrix &a);

[[nodiscard]] Complex trace(const ComplexMatrix &a);

/// Number of qubits n with 2^n == dim; throws if dim is not a power of two.
[[nodiscard]] std::size_t qubits_for_dim(std::size_t dim);

}  // namespace onesided
