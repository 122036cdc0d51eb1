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
#include <string>

#include "onesided/gates.hpp"
#include "onesided/kernel.hpp"
#include "onesided/metrics.hpp"
#include "onesided/state.hpp"

namespace onesided {

/// Projectors onto B+ = span{Phi+, Psi+} and B- = span{Phi-, Psi-}.
struct BellSubspaces {
    ComplexMatrix pi_plus;
    ComplexMatrix pi_minus;
};

[[nodiscard]] const BellSubspaces &bell_subspaces();

/// Phi+, Phi-, Psi+, Psi- on a two-register (first, second) layout.
[[nodiscard]] std::array<StateVector, 4>
bell_basis(const std::string &first = "S", const std::string &second = "S'");

/// Bell-basis measurement on two single-qubit registers, labelled
/// "Phi+", "Phi-", "Psi+", "Psi-".
[[nodiscard]] ProjectiveMeasurement bell_measurement(const std::string &first,
                                                     const std::string &second);

/// (u (x) I)|Phi+> for a 2x2 unitary; throws std::invalid_argument otherwise.
[[nodiscard]] StateVector choi_state(const ComplexMatrix &u,
                                     const std::string &first = "S",
                                     const std::string &second = "S'");

/// Pi+ A Pi+ + Pi- A Pi-. Throws std::invalid_argument unless A is 4x4.
[[nodiscard]] ComplexMatrix pinch_phi(const ComplexMatrix &a);

/// pinch_phi applied to one two-qubit pair of a larger operator.
[[nodiscard]] ComplexMatrix pinch_on(const ComplexMatrix &m,
                                     const RegisterLayout &layout,
                                     const RegisterNames &pair);

/**
 * Normalized Choi operator (1/d) sum_{x,y} channel(|x><y|) (x) |x><y| of a
 * channel on d-dimensional operators. Output dimension is d_out * d.
 */
[[nodiscard]] ComplexMatrix choi_operator(const Superoperator &channel,
                                          std::size_t dim);

}  // namespace onesided
