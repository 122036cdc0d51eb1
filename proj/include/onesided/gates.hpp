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

#pragma once

#include <array>

#include "onesided/matrix.hpp"

namespace onesided {

enum class GateKind { H, X, Y, Z, CNOT, CSWAP, R, WB };

/**
 * Exact gate matrices.
 *
 * R(q) = [[sqrt(1-q), -i sqrt(q)], [-i sqrt(q), sqrt(1-q)]], an x-axis
 * rotation with R(0) = I and R(1) = -iX. `q` is only read for GateKind::R
 * and must lie in [0, 1].
 *
 * WB = |00><Phi+| - |10><Psi+| + |01><Phi-| - |11><Psi-|. The minus signs on
 * the Psi rows are load-bearing: with them WB (R(q)^dag (x) I)|Phi+> equals
 * (R(q)|0>) (x) |0>. Implementations that flip them lose that identity.
 *
 * CNOT has the first qubit as control; CSWAP has the first qubit as control
 * and swaps qubits two and three.
 */
[[nodiscard]] ComplexMatrix make_gate(GateKind kind, double q = 0.0);

[[nodiscard]] inline ComplexMatrix rotation_r(double q) {
    return make_gate(GateKind::R, q);
}

/// Bell vectors in the order Phi+, Phi-, Psi+, Psi-.
enum class BellLabel { PhiPlus = 0, PhiMinus = 1, PsiPlus = 2, PsiMinus = 3 };
inline constexpr std::array<BellLabel, 4> kBellOrder{
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus,
    BellLabel::PsiMinus};

[[nodiscard]] ComplexVector bell_vector(BellLabel which);
[[nodiscard]] const char *bell_name(BellLabel which);

/// Permutation matrix exchanging two equal-size blocks of `qubits` qubits.
[[nodiscard]] ComplexMatrix swap_registers_gate(std::size_t qubits);

}  // namespace onesided
