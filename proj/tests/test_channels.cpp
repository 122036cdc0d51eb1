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
#include "onesided/random.hpp"
#include "oracle/dense_oracle.hpp"

namespace onesided {
namespace {

const Complex kI(0.0, 1.0);

TEST(BellSubspaces, ProjectorStructure) {
    const auto &b = bell_subspaces();
    EXPECT_TRUE(is_projector(b.pi_plus));
    EXPECT_TRUE(is_projector(b.pi_minus));
    EXPECT_LT((b.pi_plus * b.pi_minus).norm(), 1e-12);
    EXPECT_LT((b.pi_plus + b.pi_minus - identity(4)).norm(), 1e-12);
    const oracle::Mat ref = oracle::bell(0) * oracle::bell(0).adjoint() +
                            oracle::bell(2) * oracle::bell(2).adjoint();
    EXPECT_LT((b.pi_plus - ref).norm(), 1e-15);
}

TEST(BellBasis, OrderAndOrthonormality) {
    const auto basis = bell_basis();
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_LT((basis[i].amplitudes() - oracle::bell(static_cast<int>(i))).norm(), 1e-15);
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_NEAR(std::abs(basis[i].inner(basis[j])), i == j ? 1.0 : 0.0, 1e-15);
        }
    }
}

TEST(BellBasis, PlusMinusExpansions) {
    const ComplexVector plus = ComplexVector::Ones(2) / std::sqrt(2.0);
    ComplexVector minus(2);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    const ComplexVector pp = tensor(plus, plus), mm = tensor(minus, minus);
    EXPECT_LT(((pp + mm) / std::sqrt(2.0) - bell_vector(BellLabel::PhiPlus)).norm(), 1e-15);
    EXPECT_LT(((pp - mm) / std::sqrt(2.0) - bell_vector(BellLabel::PsiPlus)).norm(), 1e-15);
}

TEST(Choi, ClosedForms) {
    EXPECT_LT((choi_state(identity(2)).amplitudes() - bell_vector(BellLabel::PhiPlus)).norm(),
              1e-15);
    EXPECT_LT((choi_state(make_gate(GateKind::X)).amplitudes() -
               bell_vector(BellLabel::PsiPlus))
                  .norm(),
              1e-15);
    for (int k = 0; k <= 10; ++k) {
        const double q = k / 10.0;
        const ComplexVector expected = std::sqrt(1 - q) * bell_vector(BellLabel::PhiPlus) +
                                       kI * std::sqrt(q) * bell_vector(BellLabel::PsiPlus);
        EXPECT_LT((choi_state(rotation_r(q).adjoint()).amplitudes() - expected).norm(), 1e-12);
    }
    EXPECT_THROW((void)choi_state(2.0 * identity(2)), std::invalid_argument);
    EXPECT_THROW((void)choi_state(identity(4)), std::invalid_argument);
}

TEST(Choi, MarginalsAreMixed) {
    RngStream rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector j = choi_state(random::unitary(2, rng));
        const ComplexMatrix rho = j.projector();
        for (std::size_t keep : {0u, 1u}) {
            const std::vector<std::size_t> k{keep};
            EXPECT_LT((partial_trace_qubits(rho, 2, k) - identity(2) / 2.0).norm(), 1e-12);
        }
    }
}

TEST(Choi, WbMapsRotationChoiToProduct) {
    const oracle::Mat wb = oracle::wb_matrix();
    for (int k = 0; k <= 10; ++k) {
        const double q = k / 10.0;
        const ComplexVector j = choi_state(rotation_r(q).adjoint()).amplitudes();
        const oracle::Vec target =
            oracle::kron(oracle::r_matrix(q).col(0), oracle::Mat(basis_vector(2, 0)));
        EXPECT_LT((make_gate(GateKind::WB) * j - target).norm(), 1e-12);
        EXPECT_LT((wb * j - target).norm(), 1e-12);
    }
}

TEST(Pinch, FixedPointsAndDephasing) {
    const ComplexMatrix phi = projector_onto(bell_vector(BellLabel::PhiPlus));
    EXPECT_LT((pinch_phi(phi) - phi).norm(), 1e-15);
    const ComplexMatrix zz = projector_onto(basis_vector(4, 0));
    const ComplexMatrix expected = 0.5 * phi + 0.5 * projector_onto(bell_vector(BellLabel::PhiMinus));
    EXPECT_LT((pinch_phi(zz) - expected).norm(), 1e-15);
    for (int k = 0; k <= 10; ++k) {
        const ComplexMatrix j = choi_state(rotation_r(k / 10.0).adjoint()).projector();
        EXPECT_LT((pinch_phi(j) - j).norm(), 1e-12);
    }
    EXPECT_THROW((void)pinch_phi(identity(2)), std::invalid_argument);
}

TEST(Pinch, IdempotentTracePreservingHermitian) {
    RngStream rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const ComplexMatrix a = random::ginibre(4, 4, rng);
        const ComplexMatrix once = pinch_phi(a);
        EXPECT_LT((pinch_phi(once) - once).norm(), 1e-12);
        EXPECT_NEAR(std::abs(once.trace() - a.trace()), 0.0, 1e-12);
        const ComplexMatrix h = random::hermitian(4, rng);
        EXPECT_TRUE(is_hermitian(pinch_phi(h)));
        const ComplexMatrix rho = random::density(4, rng);
        EXPECT_GE(hermitian_spectrum(pinch_phi(rho)).eigenvalues.minCoeff(), -1e-12);
    }
}

TEST(Pinch, ChoiOperatorIsADensity) {
    const ComplexMatrix c = choi_operator(pinch_phi, 4);
    ASSERT_EQ(c.rows(), 16);
    EXPECT_NEAR(c.trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(is_hermitian(c));
    EXPECT_GE(hermitian_spectrum(c).eigenvalues.minCoeff(), -1e-12);
}

TEST(Pinch, OnPairMatchesEmbedding) {
    RngStream rng(7);
    const RegisterLayout l{{"P", 1}, {"S1", 1}, {"S1'", 1}};
    const ComplexMatrix rho = random::density(8, rng);
    const auto &b = bell_subspaces();
    const oracle::Mat plus = oracle::embed(b.pi_plus, {1, 2}, 3);
    const oracle::Mat minus = oracle::embed(b.pi_minus, {1, 2}, 3);
    const ComplexMatrix expected = plus * rho * plus + minus * rho * minus;
    EXPECT_LT((pinch_on(rho, l, {"S1", "S1'"}) - expected).norm(), 1e-12);
    EXPECT_THROW((void)pinch_on(rho, l, {"S1"}), std::invalid_argument);
}

}  // namespace
}  // namespace onesided
