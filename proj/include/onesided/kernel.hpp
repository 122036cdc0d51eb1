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
 * Register-addressed circuit operations: applying gates to named
 * registers, partial traces, projective measurement (exhaustive or sampled)
 * and the random pair selection used by the verifier's first step.
 */

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "onesided/layout.hpp"
#include "onesided/matrix.hpp"
#include "onesided/rng.hpp"
#include "onesided/state.hpp"

namespace onesided {

using RegisterNames = std::vector<std::string>;

// ---------------------------------------------------------------------------
// Raw operator actions. These work on any square matrix indexed by `layout`
// (including sub-normalized branch operators) and do not validate states.

/// (op on `targets`, identity elsewhere) * m. `m` may have any column count.
[[nodiscard]] ComplexMatrix act_left(const ComplexMatrix &m,
                                     const RegisterLayout &layout,
                                     const ComplexMatrix &op,
                                     const RegisterNames &targets);

/// op m op^dag with op acting on `targets`.
[[nodiscard]] ComplexMatrix sandwich(const ComplexMatrix &m,
                                     const RegisterLayout &layout,
                                     const ComplexMatrix &op,
                                     const RegisterNames &targets);

/// Reduced operator on `keep`, ordered as listed.
[[nodiscard]] ComplexMatrix partial_trace(const ComplexMatrix &m,
                                          const RegisterLayout &layout,
                                          const RegisterNames &keep);

// ---------------------------------------------------------------------------
// State-level operations.

/// Throws std::invalid_argument on non-unitary `u` or dimension mismatch.
[[nodiscard]] StateVector apply_unitary(const StateVector &state,
                                        const ComplexMatrix &u,
                                        const RegisterNames &targets);
[[nodiscard]] DensityOperator apply_unitary(const DensityOperator &state,
                                            const ComplexMatrix &u,
                                            const RegisterNames &targets);

/// Throws UnknownRegister, or std::invalid_argument when `keep` is empty.
[[nodiscard]] DensityOperator partial_trace(const DensityOperator &rho,
                                            const RegisterNames &keep);

/// Appends a fresh register prepared in |0...0>.
[[nodiscard]] DensityOperator append_zero_register(const DensityOperator &rho,
                                                   Register reg);

// ---------------------------------------------------------------------------
// Measurement.

class InvalidMeasurement : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct LabelledProjector {
    std::string label;
    ComplexMatrix projector;
};

/// Complete projective measurement on the concatenation of `targets`.
struct ProjectiveMeasurement {
    std::vector<LabelledProjector> projectors;
    RegisterNames targets;

    /// Throws InvalidMeasurement unless the projectors are Hermitian,
    /// idempotent, pairwise orthogonal and sum to the identity.
    void validate(const RegisterLayout &layout) const;
};

/// One outcome per basis string of the targets, labelled by that bit string.
[[nodiscard]] ProjectiveMeasurement
standard_basis_measurement(const RegisterLayout &layout,
                           const RegisterNames &targets);

/// Outcomes with probability below this are reported as 0 with no state.
inline constexpr double kNegligibleProbability = 1e-14;

template <class State>
struct MeasurementRecord {
    std::string label;
    double probability = 0.0;
    std::optional<State> post_state;
};

[[nodiscard]] std::vector<MeasurementRecord<StateVector>>
measure_all(const StateVector &state, const ProjectiveMeasurement &m);
[[nodiscard]] std::vector<MeasurementRecord<DensityOperator>>
measure_all(const DensityOperator &state, const ProjectiveMeasurement &m);

[[nodiscard]] MeasurementRecord<StateVector>
measure_sample(const StateVector &state, const ProjectiveMeasurement &m,
               RngStream &rng);
[[nodiscard]] MeasurementRecord<DensityOperator>
measure_sample(const DensityOperator &state, const ProjectiveMeasurement &m,
               RngStream &rng);

/// Index drawn from a discrete distribution by inverse CDF.
[[nodiscard]] std::size_t sample_index(const std::vector<double> &probs,
                                       RngStream &rng);

// ---------------------------------------------------------------------------
// Random pair selection (uniform permutation, keep the first two slots).

using RegisterPair = std::pair<std::string, std::string>;

/**
 * Uniform mixture over every ordered pair (i, j), i != j, of the listed
 * register pairs, with all other pairs traced out. The output layout is the
 * non-pair registers in their original order followed by pairs[0] and
 * pairs[1]; the content of slot k is whichever pair was drawn into it.
 *
 * Throws std::invalid_argument on fewer than two pairs or pairs of
 * mismatched shape.
 */
[[nodiscard]] DensityOperator
symmetrize_pairs(const DensityOperator &rho,
                 const std::vector<RegisterPair> &pairs);

struct PairDraw {
    std::size_t first;
    std::size_t second;
    DensityOperator state;
};

/// One uniformly drawn ordered pair; same output layout as above.
[[nodiscard]] PairDraw symmetrize_pairs(const DensityOperator &rho,
                                        const std::vector<RegisterPair> &pairs,
                                        RngStream &rng);

/// The reduced state for a fixed ordered pair (i, j) in the output layout.
[[nodiscard]] DensityOperator
select_pairs(const DensityOperator &rho, const std::vector<RegisterPair> &pairs,
             std::size_t first, std::size_t second);

}  // namespace onesided
