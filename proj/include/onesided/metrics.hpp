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
 * Trace distance, fidelity, and signed-margin oracles for the standard
 * inequalities relating them.
 *
 * Every `*_margin` function returns (right-hand side - left-hand side) of
 * its inequality, so a correct implementation yields margins >= 0 up to
 * rounding. Property tests assert margin >= -tolerance and can report the
 * worst case instead of a bare boolean.
 */

#pragma once

#include <functional>

#include "onesided/matrix.hpp"
#include "onesided/state.hpp"

namespace onesided {

/// Half the trace norm of a - b. Throws std::invalid_argument on shape mismatch.
[[nodiscard]] double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b);
[[nodiscard]] double trace_distance(const DensityOperator &a,
                                    const DensityOperator &b);

/// sqrt(1 - |<phi|psi>|^2) for unit vectors.
[[nodiscard]] double pure_trace_distance(const ComplexVector &phi,
                                         const ComplexVector &psi);
[[nodiscard]] double pure_trace_distance(const StateVector &phi,
                                         const StateVector &psi);

/// || sqrt(rho) sqrt(sigma) ||_1. Throws std::domain_error on non-PSD input.
[[nodiscard]] double fidelity(const ComplexMatrix &rho, const ComplexMatrix &sigma);
[[nodiscard]] double fidelity(const DensityOperator &rho,
                              const DensityOperator &sigma);
/// sqrt(<phi|sigma|phi>).
[[nodiscard]] double fidelity(const ComplexVector &phi, const ComplexMatrix &sigma);

/// |Tr(B^dag A)| <= ||A||_1 ||B||_inf.
[[nodiscard]] double holder_margin(const ComplexMatrix &a, const ComplexMatrix &b);

/// D(A,B) <= D(A,C) + D(C,B).
[[nodiscard]] double triangle_margin(const ComplexMatrix &a,
                                     const ComplexMatrix &b,
                                     const ComplexMatrix &c);

using Superoperator = std::function<ComplexMatrix(const ComplexMatrix &)>;

/// D(channel(rho), channel(sigma)) <= D(rho, sigma).
[[nodiscard]] double monotonicity_margin(const ComplexMatrix &rho,
                                         const ComplexMatrix &sigma,
                                         const Superoperator &channel);

struct FvgMargins {
    double lower;  // F - (1 - D)
    double upper;  // sqrt(1 - D^2) - F
};

/// Both sides of 1 - D <= F <= sqrt(1 - D^2).
[[nodiscard]] FvgMargins fvg_margins(const ComplexMatrix &rho,
                                     const ComplexMatrix &sigma);

/**
 * F(rho, rho')^2 - (1 - Tr(rho Pi)) where rho' is rho conditioned on the
 * complementary outcome I - Pi. Throws std::invalid_argument if `proj` is
 * not a projector or Tr(rho Pi) >= 1 - 1e-12.
 */
[[nodiscard]] double gentle_margin(const ComplexMatrix &rho,
                                   const ComplexMatrix &proj);

/**
 * Margins for the two small perturbation bounds:
 *   additive:  D(A + B, A) <= eps / 2   for PSD B with Tr(B) <= eps
 *   mixture:   D((1 - eps) rho + eps sigma, rho) <= eps   for eps in [0, 1)
 */
struct PerturbationMargins {
    double additive;
    double mixture;

    [[nodiscard]] bool holds(double tol) const {
        return additive >= -tol && mixture >= -tol;
    }
};

/// Throws std::invalid_argument if B is not PSD or Tr(B) > eps.
[[nodiscard]] double additive_perturbation_margin(const ComplexMatrix &a,
                                                  const ComplexMatrix &b,
                                                  double eps);
/// Throws std::invalid_argument if eps is outside [0, 1).
[[nodiscard]] double mixture_perturbation_margin(const ComplexMatrix &rho,
                                                 const ComplexMatrix &sigma,
                                                 double eps);

/// Both bounds for density operators rho, sigma: the additive bound is taken
/// with A = (1 - eps) rho and B = eps sigma, the mixture bound directly.
[[nodiscard]] PerturbationMargins perturbation_checks(const ComplexMatrix &rho,
                                                      const ComplexMatrix &sigma,
                                                      double eps);

}  // namespace onesided
