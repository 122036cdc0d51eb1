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

#include "onesided/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace onesided {

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b,
                        const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || !is_square(a)) {
        throw std::invalid_argument(std::string(what) +
                                    ": operands must be square and equal size");
    }
}

}  // namespace

double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "trace_distance");
    return 0.5 * trace_norm(a - b);
}

double trace_distance(const DensityOperator &a, const DensityOperator &b) {
    return trace_distance(a.matrix(), b.matrix());
}

double pure_trace_distance(const ComplexVector &phi, const ComplexVector &psi) {
    if (phi.size() != psi.size()) {
        throw std::invalid_argument("pure_trace_distance: dimension mismatch");
    }
    const double overlap = std::norm(phi.dot(psi));
    return std::sqrt(std::max(0.0, 1.0 - overlap));
}

double pure_trace_distance(const StateVector &phi, const StateVector &psi) {
    return pure_trace_distance(phi.amplitudes(), psi.amplitudes());
}

double fidelity(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    require_same_shape(rho, sigma, "fidelity");
    return trace_norm(psd_sqrt(rho) * psd_sqrt(sigma));
}

double fidelity(const DensityOperator &rho, const DensityOperator &sigma) {
    return fidelity(rho.matrix(), sigma.matrix());
}

double fidelity(const ComplexVector &phi, const ComplexMatrix &sigma) {
    if (phi.size() != sigma.rows()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    const double expectation = phi.dot(sigma * phi).real();
    return std::sqrt(std::max(0.0, expectation));
}

double holder_margin(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "holder_margin");
    const double lhs = std::abs((b.adjoint() * a).trace());
    return trace_norm(a) * operator_norm(b) - lhs;
}

double triangle_margin(const ComplexMatrix &a, const ComplexMatrix &b,
                       const ComplexMatrix &c) {
    return trace_distance(a, c) + trace_distance(c, b) - trace_distance(a, b);
}

double monotonicity_margin(const ComplexMatrix &rho, const ComplexMatrix &sigma,
                           const Superoperator &channel) {
    return trace_distance(rho, sigma) -
           trace_distance(channel(rho), channel(sigma));
}

FvgMargins fvg_margins(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    const double d = trace_distance(rho, sigma);
    const double f = fidelity(rho, sigma);
    return {f - (1.0 - d), std::sqrt(std::max(0.0, 1.0 - d * d)) - f};
}

double gentle_margin(const ComplexMatrix &rho, const ComplexMatrix &proj) {
    require_same_shape(rho, proj, "gentle_margin");
    if (!is_projector(proj)) {
        throw std::invalid_argument("gentle_margin: operator is not a projector");
    }
    const double hit = (rho * proj).trace().real();
    if (hit >= 1.0 - 1e-12) {
        throw std::invalid_argument(
            "gentle_margin: Tr(rho Pi) >= 1, post-measurement state undefined");
    }
    const ComplexMatrix comp = identity(rho.rows()) - proj;
    ComplexMatrix post = comp * rho * comp;
    post /= post.trace().real();
    post = 0.5 * (post + post.adjoint());
    const double f = fidelity(rho, post);
    return f * f - (1.0 - hit);
}

double additive_perturbation_margin(const ComplexMatrix &a,
                                    const ComplexMatrix &b, double eps) {
    require_same_shape(a, b, "additive_perturbation_margin");
    if (!is_hermitian(b)) {
        throw std::invalid_argument("additive perturbation: B is not Hermitian");
    }
    const Spectrum s = hermitian_spectrum(b);
    if (s.eigenvalues.minCoeff() < -kStructureTol) {
        throw std::invalid_argument("additive perturbation: B is not PSD");
    }
    if (b.trace().real() > eps + kStructureTol) {
        throw std::invalid_argument("additive perturbation: Tr(B) exceeds eps");
    }
    return eps / 2.0 - trace_distance(a + b, a);
}

double mixture_perturbation_margin(const ComplexMatrix &rho,
                                   const ComplexMatrix &sigma, double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw std::invalid_argument("mixture perturbation: eps outside [0, 1)");
    }
    return eps - trace_distance((1.0 - eps) * rho + eps * sigma, rho);
}

PerturbationMargins perturbation_checks(const ComplexMatrix &rho,
                                        const ComplexMatrix &sigma, double eps) {
    return {additive_perturbation_margin((1.0 - eps) * rho, eps * sigma, eps),
            mixture_perturbation_margin(rho, sigma, eps)};
}

}  // namespace onesided
