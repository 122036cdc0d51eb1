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

#include "onesided/matrix.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace onesided {

namespace {

void require_square(const ComplexMatrix &a, const char *what) {
    if (!is_square(a)) {
        throw std::invalid_argument(std::string(what) +
                                    ": matrix is not square (" +
                                    std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + ")");
    }
}

double max_abs(const ComplexMatrix &a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace

ComplexMatrix Spectrum::reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
           eigenvectors.adjoint();
}

bool is_square(const ComplexMatrix &a) { return a.rows() == a.cols(); }

bool is_hermitian(const ComplexMatrix &a, double tol) {
    return is_square(a) && max_abs(a - a.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix &a, double tol) {
    if (!is_square(a)) {
        return false;
    }
    return max_abs(a.adjoint() * a - identity(a.rows())) <= tol;
}

bool is_projector(const ComplexMatrix &a, double tol) {
    return is_hermitian(a, tol) && max_abs(a * a - a) <= tol;
}

ComplexMatrix identity(std::size_t dim) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim),
                                   static_cast<Eigen::Index>(dim));
}

ComplexMatrix outer(const ComplexVector &ket, const ComplexVector &bra) {
    return ket * bra.adjoint();
}

ComplexMatrix projector_onto(const ComplexVector &ket) {
    return outer(ket, ket);
}

ComplexVector basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::out_of_range("basis_vector: index outside dimension");
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return v;
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

ComplexVector tensor(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a[i] * b;
    }
    return out;
}

ComplexMatrix partial_trace_qubits(const ComplexMatrix &a,
                                   std::size_t num_qubits,
                                   std::span<const std::size_t> keep) {
    require_square(a, "partial_trace");
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (static_cast<std::size_t>(a.rows()) != dim) {
        throw std::invalid_argument(
            "partial_trace: matrix dimension does not match qubit count");
    }
    std::vector<bool> kept(num_qubits, false);
    for (std::size_t q : keep) {
        if (q >= num_qubits || kept[q]) {
            throw std::invalid_argument(
                "partial_trace: kept qubit out of range or repeated");
        }
        kept[q] = true;
    }
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if (!kept[q]) {
            traced.push_back(q);
        }
    }

    // Offsets of each reduced basis index inside the full index; qubit q
    // sits at bit (num_qubits - 1 - q).
    auto offsets = [num_qubits](std::span<const std::size_t> positions) {
        const std::size_t n = positions.size();
        std::vector<std::size_t> off(std::size_t{1} << n, 0);
        for (std::size_t idx = 0; idx < off.size(); ++idx) {
            std::size_t full = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if ((idx >> (n - 1 - k)) & 1U) {
                    full |= std::size_t{1} << (num_qubits - 1 - positions[k]);
                }
            }
            off[idx] = full;
        }
        return off;
    };
    const auto keep_off = offsets(keep);
    const auto trace_off = offsets(traced);

    const auto kdim = static_cast<Eigen::Index>(keep_off.size());
    ComplexMatrix out = ComplexMatrix::Zero(kdim, kdim);
    for (Eigen::Index r = 0; r < kdim; ++r) {
        for (Eigen::Index c = 0; c < kdim; ++c) {
            Complex acc = 0.0;
            for (std::size_t t : trace_off) {
                acc += a(static_cast<Eigen::Index>(keep_off[r] + t),
                         static_cast<Eigen::Index>(keep_off[c] + t));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

RealVector singular_values(const ComplexMatrix &a) {
    Eigen::BDCSVD<ComplexMatrix> svd(a);
    return svd.singularValues();
}

double trace_norm(const ComplexMatrix &a) {
    require_square(a, "trace_norm");
    return a.size() == 0 ? 0.0 : singular_values(a).sum();
}

double operator_norm(const ComplexMatrix &a) {
    require_square(a, "operator_norm");
    return a.size() == 0 ? 0.0 : singular_values(a).maxCoeff();
}

Spectrum hermitian_spectrum(const ComplexMatrix &a) {
    if (!is_hermitian(a)) {
        throw std::invalid_argument("hermitian_spectrum: input not Hermitian");
    }
    // Symmetrize so the solver sees an exactly Hermitian matrix.
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_spectrum: eigensolver failed");
    }
    // Eigen returns ascending order; flip to descending.
    const Eigen::Index n = h.rows();
    Spectrum s{RealVector(n), ComplexMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        s.eigenvalues[k] = solver.eigenvalues()[n - 1 - k];
        s.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return s;
}

EigenPair max_eigpair(const ComplexMatrix &m) {
    const Spectrum s = hermitian_spectrum(m);
    if (s.eigenvalues.size() == 0) {
        throw std::invalid_argument("max_eigpair: empty matrix");
    }
    ComplexVector v = s.eigenvectors.col(0);
    // Fix the global phase: largest-magnitude component real positive.
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    v *= std::conj(v[arg]) / std::abs(v[arg]);
    return {s.eigenvalues[0], v.normalized()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix &a) {
    const Spectrum s = hermitian_spectrum(a);
    // Eigenvalues at roundoff level are zero; their square roots are not
    // small (sqrt(1e-17) ~ 3e-9), so they must not leak into the result.
    const double scale = s.eigenvalues.size() == 0 ? 0.0 : s.eigenvalues.cwiseAbs().maxCoeff();
    const double floor = static_cast<double>(a.rows()) *
                         std::numeric_limits<double>::epsilon() * scale;
    RealVector roots(s.eigenvalues.size());
    for (Eigen::Index k = 0; k < roots.size(); ++k) {
        const double lambda = s.eigenvalues(k);
        if (lambda < -kStructureTol) {
            throw std::domain_error("psd_sqrt: matrix has negative eigenvalue " +
                                    std::to_string(lambda));
        }
        roots(k) = lambda <= floor ? 0.0 : std::sqrt(lambda);
    }
    return s.eigenvectors * roots.asDiagonal() * s.eigenvectors.adjoint();
}

Complex trace(const ComplexMatrix &a) { return a.trace(); }

std::size_t qubits_for_dim(std::size_t dim) {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("dimension " + std::to_string(dim) +
                                    " is not a power of two");
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

}  // namespace onesided
