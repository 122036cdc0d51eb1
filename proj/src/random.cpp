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

#include "onesided/random.hpp"

#include <cmath>
#include <stdexcept>

namespace onesided::random {

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, RngStream &rng) {
    ComplexMatrix g(static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

ComplexMatrix hermitian(std::size_t dim, RngStream &rng) {
    const ComplexMatrix g = ginibre(dim, dim, rng);
    return 0.5 * (g + g.adjoint());
}

ComplexMatrix unitary(std::size_t dim, RngStream &rng) {
    const ComplexMatrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const Complex d = r(k, k);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(k) *= d / mag;
        }
    }
    return q;
}

ComplexVector pure_state(std::size_t dim, RngStream &rng) {
    ComplexVector v = ginibre(dim, 1, rng).col(0);
    return v.normalized();
}

ComplexMatrix density(std::size_t dim, RngStream &rng, std::size_t rank) {
    if (rank == 0) {
        rank = dim;
    }
    const ComplexMatrix g = ginibre(dim, rank, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

ComplexMatrix projector(std::size_t dim, std::size_t rank, RngStream &rng) {
    if (rank > dim) {
        throw std::invalid_argument("random::projector: rank exceeds dimension");
    }
    const ComplexMatrix u = unitary(dim, rng);
    const auto k = static_cast<Eigen::Index>(rank);
    return u.leftCols(k) * u.leftCols(k).adjoint();
}

}  // namespace onesided::random
