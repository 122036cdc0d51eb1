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

#include "onesided/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace onesided {

namespace {

constexpr Complex kI{0.0, 1.0};

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

ComplexVector bell_vector(BellLabel which) {
    const double s = 1.0 / std::numbers::sqrt2;
    ComplexVector v = ComplexVector::Zero(4);
    switch (which) {
    case BellLabel::PhiPlus:
        v[0] = s;
        v[3] = s;
        break;
    case BellLabel::PhiMinus:
        v[0] = s;
        v[3] = -s;
        break;
    case BellLabel::PsiPlus:
        v[1] = s;
        v[2] = s;
        break;
    case BellLabel::PsiMinus:
        v[1] = s;
        v[2] = -s;
        break;
    }
    return v;
}

const char *bell_name(BellLabel which) {
    switch (which) {
    case BellLabel::PhiPlus:
        return "Phi+";
    case BellLabel::PhiMinus:
        return "Phi-";
    case BellLabel::PsiPlus:
        return "Psi+";
    case BellLabel::PsiMinus:
        return "Psi-";
    }
    return "?";
}

ComplexMatrix make_gate(GateKind kind, double q) {
    switch (kind) {
    case GateKind::H: {
        const double s = 1.0 / std::numbers::sqrt2;
        return mat2(s, s, s, -s);
    }
    case GateKind::X:
        return mat2(0, 1, 1, 0);
    case GateKind::Y:
        return mat2(0, -kI, kI, 0);
    case GateKind::Z:
        return mat2(1, 0, 0, -1);
    case GateKind::CNOT: {
        ComplexMatrix m = ComplexMatrix::Zero(4, 4);
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
        return m;
    }
    case GateKind::CSWAP: {
        ComplexMatrix m = identity(8);
        // |101> <-> |110>
        m(5, 5) = m(6, 6) = 0.0;
        m(5, 6) = m(6, 5) = 1.0;
        return m;
    }
    case GateKind::R: {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw std::invalid_argument("R(q): q = " + std::to_string(q) +
                                        " outside [0, 1]");
        }
        const double c = std::sqrt(1.0 - q);
        const double s = std::sqrt(q);
        return mat2(c, -kI * s, -kI * s, c);
    }
    case GateKind::WB: {
        const ComplexVector e00 = basis_vector(4, 0b00);
        const ComplexVector e01 = basis_vector(4, 0b01);
        const ComplexVector e10 = basis_vector(4, 0b10);
        const ComplexVector e11 = basis_vector(4, 0b11);
        return outer(e00, bell_vector(BellLabel::PhiPlus)) -
               outer(e10, bell_vector(BellLabel::PsiPlus)) +
               outer(e01, bell_vector(BellLabel::PhiMinus)) -
               outer(e11, bell_vector(BellLabel::PsiMinus));
    }
    }
    throw std::invalid_argument("make_gate: unknown gate kind");
}

ComplexMatrix swap_registers_gate(std::size_t qubits) {
    const std::size_t half = std::size_t{1} << qubits;
    const std::size_t dim = half * half;
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                          static_cast<Eigen::Index>(dim));
    for (std::size_t a = 0; a < half; ++a) {
        for (std::size_t b = 0; b < half; ++b) {
            m(static_cast<Eigen::Index>(b * half + a),
              static_cast<Eigen::Index>(a * half + b)) = 1.0;
        }
    }
    return m;
}

}  // namespace onesided
