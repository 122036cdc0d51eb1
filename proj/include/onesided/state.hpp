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

#include <stdexcept>
#include <string>

#include "onesided/layout.hpp"
#include "onesided/matrix.hpp"

namespace onesided {

/// A state object violated its normalization / positivity invariants.
class InvalidState : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Unit-norm pure state over a register layout.
class StateVector {
  public:
    /// Throws InvalidState if the length or norm (1 within 1e-10) is wrong.
    StateVector(RegisterLayout layout, ComplexVector amplitudes);

    /// |index> in the standard basis.
    static StateVector basis(RegisterLayout layout, std::size_t index);
    /// |0...0>.
    static StateVector zero(RegisterLayout layout);

    [[nodiscard]] const RegisterLayout &layout() const { return layout_; }
    [[nodiscard]] const ComplexVector &amplitudes() const { return amps_; }
    [[nodiscard]] std::size_t dimension() const { return layout_.dimension(); }

    [[nodiscard]] ComplexMatrix projector() const { return projector_onto(amps_); }
    [[nodiscard]] Complex inner(const StateVector &other) const;

    /// Product state; registers of `other` are appended after ours.
    [[nodiscard]] StateVector tensor(const StateVector &other) const;

  private:
    RegisterLayout layout_;
    ComplexVector amps_;
};

/// Hermitian, positive semidefinite, unit-trace operator over a layout.
class DensityOperator {
  public:
    /// Validates Hermiticity, trace 1 and eigenvalues >= -1e-10.
    DensityOperator(RegisterLayout layout, ComplexMatrix matrix);
    explicit DensityOperator(const StateVector &pure);

    /// Skips the spectral PSD check (dimensions, Hermiticity and trace are
    /// still checked). For operators produced by trace-preserving
    /// operations on already-valid inputs.
    static DensityOperator trusted(RegisterLayout layout, ComplexMatrix matrix);

    static DensityOperator maximally_mixed(RegisterLayout layout);

    [[nodiscard]] const RegisterLayout &layout() const { return layout_; }
    [[nodiscard]] const ComplexMatrix &matrix() const { return mat_; }
    [[nodiscard]] std::size_t dimension() const { return layout_.dimension(); }

    [[nodiscard]] double purity() const;
    [[nodiscard]] DensityOperator tensor(const DensityOperator &other) const;
    /// Same matrix under a relabelled layout with identical shape.
    [[nodiscard]] DensityOperator relabelled(RegisterLayout layout) const;

  private:
    struct Trusted {};
    DensityOperator(RegisterLayout layout, ComplexMatrix matrix, Trusted);

    RegisterLayout layout_;
    ComplexMatrix mat_;
};

}  // namespace onesided
