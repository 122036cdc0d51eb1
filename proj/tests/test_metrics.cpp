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

#include <gtest/gtest.h>

#include <cmath>

#include "onesided/channels.hpp"
#include "onesided/metrics.hpp"
#include "onesided/random.hpp"
#include "oracle/dense_oracle.hpp"

namespace onesided {
namespace {

constexpr double kMarginTol = 1e-9;

ComplexVector ket_plus() { return ComplexVector::Ones(2) / std::sqrt(2.0); }
ComplexVector ket_minus() {
    ComplexVector v(2);
    v << 1.0, -1.0;
    return v / std::sqrt(2.0);
}

TEST(TraceDistance, ClosedCases) {
    RngStream rng(1);
    const ComplexMatrix rho = random::density(5, rng);
    EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-15);
    EXPECT_NEAR(trace_distance(projector_onto(ket_plus()), projector_onto(ket_minus())),
                1.0, 1e-14);
    EXPECT_NEAR(trace_distance(identity(2) / 2.0, projector_onto(basis_vector(2, 0))), 0.5,
                1e-14);
    EXPECT_THROW((void)trace_distance(identity(2), identity(4)), std::invalid_argument);
}

TEST(TraceDistance, MatchesJacobiOracle) {
    RngStream rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 2 + trial % 15;
        const ComplexMatrix a = random::density(d, rng);
        const ComplexMatrix b = random::density(d, rng);
        EXPECT_NEAR(trace_distance(a, b), 0.5 * oracle::jacobi_trace_norm(a - b), 1e-10);
    }
}

TEST(PureTraceDistance, ClosedAndRandom) {
    const ComplexVector zero = basis_vector(2, 0);
    EXPECT_NEAR(pure_trace_distance(zero, zero), 0.0, 1e-15);
    EXPECT_NEAR(pure_trace_distance(zero, ket_plus()), 1.0 / std::sqrt(2.0), 1e-15);
    RngStream rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 2 + trial % 7;
        const ComplexVector a = random::pure_state(d, rng);
        const ComplexVector b = random::pure_state(d, rng);
        EXPECT_NEAR(pure_trace_distance(a, b),
                    trace_distance(projector_onto(a), projector_onto(b)), 1e-10);
    }
    EXPECT_THROW((void)pure_trace_distance(zero, basis_vector(4, 0)), std::invalid_argument);
}

TEST(Fidelity, ClosedCases) {
    RngStream rng(4);
    const ComplexMatrix rho = random::density(4, rng);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);
    EXPECT_NEAR(fidelity(projector_onto(basis_vector(2, 0)), projector_onto(basis_vector(2, 1))),
                0.0, 1e-14);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexVector phi = random::pure_state(4, rng);
        const ComplexMatrix sigma = random::density(4, rng);
        const double expected = std::sqrt(phi.dot(sigma * phi).real());
        EXPECT_NEAR(fidelity(projector_onto(phi), sigma), expected, 1e-9);
        EXPECT_NEAR(fidelity(phi, sigma), expected, 1e-14);
    }
}

TEST(Fidelity, Symmetric) {
    RngStream rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 2 + trial % 9;
        const ComplexMatrix a = random::density(d, rng, 1 + rng.below(d));
        const ComplexMatrix b = random::density(d, rng, 1 + rng.below(d));
        EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-9);
    }
}

TEST(Fidelity, RejectsNonPsd) {
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = 1.2;
    bad(1, 1) = -0.2;
    EXPECT_THROW((void)fidelity(bad, identity(2) / 2.0), std::domain_error);
}

TEST(Fvg, Extremes) {
    RngStream rng(6);
    const ComplexMatrix rho = random::density(3, rng);
    const FvgMargins same = fvg_margins(rho, rho);
    // D = 0 and F = 1 make both bounds tight.
    EXPECT_NEAR(same.lower, 0.0, 1e-9);
    EXPECT_NEAR(same.upper, 0.0, 1e-9);
    const FvgMargins orth = fvg_margins(projector_onto(basis_vector(2, 0)),
                                        projector_onto(basis_vector(2, 1)));
    EXPECT_NEAR(orth.lower, 0.0, 1e-12);
    EXPECT_NEAR(orth.upper, 0.0, 1e-12);
}

TEST(Fvg, RandomQubitPairs) {
    RngStream rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const FvgMargins m = fvg_margins(random::density(2, rng, 1 + rng.below(2)),
                                         random::density(2, rng, 1 + rng.below(2)));
        EXPECT_GE(m.lower, -kMarginTol);
        EXPECT_GE(m.upper, -kMarginTol);
    }
}

TEST(Gentle, ClosedCases) {
    RngStream rng(8);
    const ComplexMatrix rho = random::density(3, rng);
    EXPECT_NEAR(gentle_margin(rho, ComplexMatrix::Zero(3, 3)), 0.0, 1e-9);
    EXPECT_NEAR(gentle_margin(projector_onto(ket_plus()), projector_onto(basis_vector(2, 1))),
                0.0, 1e-12);
}

TEST(Gentle, RandomInstances) {
    RngStream rng(9);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t d = 2 + trial % 7;
        const ComplexMatrix rho = random::density(d, rng);
        const ComplexMatrix p = random::projector(d, 1 + rng.below(d - 1), rng);
        EXPECT_GE(gentle_margin(rho, p), -kMarginTol);
    }
}

TEST(Gentle, Preconditions) {
    const ComplexMatrix zero = projector_onto(basis_vector(2, 0));
    EXPECT_THROW((void)gentle_margin(zero, zero), std::invalid_argument);
    EXPECT_THROW((void)gentle_margin(zero, 0.5 * identity(2)), std::invalid_argument);
}

TEST(Perturbation, ClosedCases) {
    RngStream rng(10);
    const ComplexMatrix rho = random::density(4, rng);
    EXPECT_NEAR(additive_perturbation_margin(rho, ComplexMatrix::Zero(4, 4), 0.0), 0.0, 1e-15);
    EXPECT_NEAR(mixture_perturbation_margin(rho, random::density(4, rng), 0.0), 0.0, 1e-15);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix b = 0.3 * random::density(4, rng);
        const double d = trace_distance(rho + b, rho);
        EXPECT_LE(d, 0.15 + 1e-12);
        EXPECT_GE(additive_perturbation_margin(rho, b, 0.3), -kMarginTol);
    }
}

TEST(Perturbation, Preconditions) {
    const ComplexMatrix a = identity(2) / 2.0;
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = -0.1;
    EXPECT_THROW((void)additive_perturbation_margin(a, neg, 0.5), std::invalid_argument);
    EXPECT_THROW((void)additive_perturbation_margin(a, 0.4 * a, 0.3), std::invalid_argument);
    EXPECT_THROW((void)mixture_perturbation_margin(a, a, 1.0), std::invalid_argument);
    EXPECT_THROW((void)mixture_perturbation_margin(a, a, -0.1), std::invalid_argument);
}

TEST(Triangle, RandomTriples) {
    RngStream rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 2 + trial % 15;
        EXPECT_GE(triangle_margin(random::density(d, rng), random::density(d, rng),
                                  random::density(d, rng)),
                  -kMarginTol);
    }
}

TEST(Monotonicity, PartialTracePinchUnitary) {
    RngStream rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const std::size_t d = std::size_t{1} << n;
        const ComplexMatrix rho = random::density(d, rng);
        const ComplexMatrix sigma = random::density(d, rng);
        const Superoperator trace_last = [n](const ComplexMatrix &m) {
            std::vector<std::size_t> keep(n - 1);
            for (std::size_t k = 0; k + 1 < n; ++k) {
                keep[k] = k;
            }
            return partial_trace_qubits(m, n, keep);
        };
        const ComplexMatrix u = random::unitary(d, rng);
        const Superoperator conj = [u](const ComplexMatrix &m) {
            return ComplexMatrix(u * m * u.adjoint());
        };
        EXPECT_GE(monotonicity_margin(rho, sigma, trace_last), -kMarginTol);
        EXPECT_GE(monotonicity_margin(rho, sigma, conj), -kMarginTol);
        if (n == 2) {
            EXPECT_GE(monotonicity_margin(rho, sigma, pinch_phi), -kMarginTol);
        }
    }
}

TEST(Holder, MarginMatchesDefinition) {
    RngStream rng(13);
    const ComplexMatrix a = random::ginibre(3, 3, rng);
    const ComplexMatrix b = random::ginibre(3, 3, rng);
    EXPECT_NEAR(holder_margin(a, b),
                oracle::jacobi_trace_norm(a) * oracle::jacobi_singular_values(b)[0] -
                    std::abs((b.adjoint() * a).trace()),
                1e-10);
}

}  // namespace
}  // namespace onesided
