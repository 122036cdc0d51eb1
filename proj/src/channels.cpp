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

#include "onesided/channels.hpp"

#include <stdexcept>

namespace onesided {

namespace {

RegisterLayout pair_layout(const std::string &first, const std::string &second) {
    return RegisterLayout{{first, 1}, {second, 1}};
}

}  // namespace

const BellSubspaces &bell_subspaces() {
    static const BellSubspaces subspaces = [] {
        const ComplexVector phi_p = bell_vector(BellLabel::PhiPlus);
        const ComplexVector psi_p = bell_vector(BellLabel::PsiPlus);
        const ComplexVector phi_m = bell_vector(BellLabel::PhiMinus);
        const ComplexVector psi_m = bell_vector(BellLabel::PsiMinus);
        return BellSubspaces{projector_onto(phi_p) + projector_onto(psi_p),
                             projector_onto(phi_m) + projector_onto(psi_m)};
    }();
    return subspaces;
}

std::array<StateVector, 4> bell_basis(const std::string &first,
                                      const std::string &second) {
    const RegisterLayout layout = pair_layout(first, second);
    return {StateVector(layout, bell_vector(BellLabel::PhiPlus)),
            StateVector(layout, bell_vector(BellLabel::PhiMinus)),
            StateVector(layout, bell_vector(BellLabel::PsiPlus)),
            StateVector(layout, bell_vector(BellLabel::PsiMinus))};
}

ProjectiveMeasurement bell_measurement(const std::string &first,
                                       const std::string &second) {
    ProjectiveMeasurement m;
    m.targets = {first, second};
    for (BellLabel b : kBellOrder) {
        m.projectors.push_back({bell_name(b), projector_onto(bell_vector(b))});
    }
    return m;
}

StateVector choi_state(const ComplexMatrix &u, const std::string &first,
                       const std::string &second) {
    if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u)) {
        throw std::invalid_argument("choi_state: expected a 2x2 unitary");
    }
    const StateVector epr(pair_layout(first, second),
                          bell_vector(BellLabel::PhiPlus));
    return apply_unitary(epr, u, {first});
}

ComplexMatrix pinch_phi(const ComplexMatrix &a) {
    if (a.rows() != 4 || a.cols() != 4) {
        throw std::invalid_argument("pinch_phi: expected a 4x4 operator");
    }
    const auto &b = bell_subspaces();
    return b.pi_plus * a * b.pi_plus + b.pi_minus * a * b.pi_minus;
}

ComplexMatrix pinch_on(const ComplexMatrix &m, const RegisterLayout &layout,
                       const RegisterNames &pair) {
    if (layout.qubit_count(pair) != 2) {
        throw std::invalid_argument("pinch_on: target must be two qubits");
    }
    const auto &b = bell_subspaces();
    return sandwich(m, layout, b.pi_plus, pair) +
           sandwich(m, layout, b.pi_minus, pair);
}

ComplexMatrix choi_operator(const Superoperator &channel, std::size_t dim) {
    ComplexMatrix out;
    for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t y = 0; y < dim; ++y) {
            const ComplexMatrix unit =
                outer(basis_vector(dim, x), basis_vector(dim, y));
            const ComplexMatrix term = tensor(channel(unit), unit);
            if (out.size() == 0) {
                out = term;
            } else {
                out += term;
            }
        }
    }
    return out / static_cast<double>(dim);
}

}  // namespace onesided
