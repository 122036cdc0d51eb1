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

#include "onesided/gates.hpp"
#include "onesided/matrix.hpp"
#include "onesided/random.hpp"
#include "oracle/dense_oracle.hpp"

namespace onesided {
namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                                          static_cast<Eigen::Index>(values.size()));
    Eigen::Index k = 0;
    for (double v : values) {
        m(k, k) = v;
        ++k;
    }
    return m;
}

TEST(Tensor, IdentityAndBasis) {
    EXPECT_TRUE(tensor(identity(2), identity(2)).isApprox(identity(4)));
    const ComplexVector ket = tensor(basis_vector(2, 0), basis_vector(2, 1));
    EXPECT_TRUE(ket.isApprox(basis_vector(4, 1)));
}

TEST(Tensor, HadamardPairOnZeroMatchesHandProduct) {
    const ComplexMatrix h = make_gate(GateKind::H);
    const ComplexVector out = tensor(h, h) * basis_vector(4, 0);
    for (Eigen::Index k = 0; k < 4; ++k) {
        EXPECT_NEAR(std::abs(out(k) - Complex(0.5, 0.0)), 0.0, 1e-15);
    }
}

TEST(Tensor, BlockStructure) {
    RngStream rng(3);
    const ComplexMatrix a = random::ginibre(2, 3, rng);
    const ComplexMatrix b = random::ginibre(3, 2, rng);
    const ComplexMatrix t = tensor(a, b);
    ASSERT_EQ(t.rows(), 6);
    ASSERT_EQ(t.cols(), 6);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) {
            EXPECT_TRUE(t.block(i * 3, j * 2, 3, 2).isApprox(a(i, j) * b));
        }
    }
}

TEST(Predicates, Basics) {
    EXPECT_TRUE(is_unitary(make_gate(GateKind::H)));
    EXPECT_TRUE(is_hermitian(make_gate(GateKind::Y)));
    EXPECT_FALSE(is_hermitian(rotation_r(0.3)));
    EXPECT_TRUE(is_projector(projector_onto(basis_vector(4, 2))));
    EXPECT_FALSE(is_projector(2.0 * identity(2)));
    ComplexMatrix rect(2, 3);
    rect.setZero();
    EXPECT_FALSE(is_square(rect));
    EXPECT_FALSE(is_unitary(rect));
}

TEST(PartialTrace, EprMarginalIsMixed) {
    const ComplexMatrix epr = projector_onto(bell_vector(BellLabel::PhiPlus));
    EXPECT_TRUE(partial_trace_qubits(epr, 2, std::vector<std::size_t>{0})
                    .isApprox(identity(2) / 2.0));
    EXPECT_TRUE(partial_trace_qubits(epr, 2, std::vector<std::size_t>{1})
                    .isApprox(identity(2) / 2.0));
}

TEST(PartialTrace, ProductKeepsFactor) {
    RngStream rng(11);
    const ComplexMatrix rho = random::density(4, rng);
    const ComplexMatrix sigma = random::density(2, rng);
    const ComplexMatrix out =
        partial_trace_qubits(tensor(rho, sigma), 3, std::vector<std::size_t>{2});
    EXPECT_LT((out - sigma).norm(), 1e-12);
}

TEST(PartialTrace, MatchesIndexSumOracle) {
    RngStream rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix rho = random::density(8, rng);
        for (std::vector<std::size_t> keep :
             {std::vector<std::size_t>{1}, {0, 2}, {2, 0}, {1, 2}}) {
            const ComplexMatrix lib = partial_trace_qubits(rho, 3, keep);
            const oracle::Mat ref = oracle::reduce(rho, keep, 3);
            EXPECT_LT((lib - ref).norm(), 1e-12);
        }
    }
}

TEST(PartialTrace, PreservesTraceAndPositivity) {
    RngStream rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix rho = random::density(16, rng, 1 + rng.below(16));
        const ComplexMatrix out =
            partial_trace_qubits(rho, 4, std::vector<std::size_t>{3, 1});
        EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
        EXPECT_GE(hermitian_spectrum(out).eigenvalues.minCoeff(), -1e-12);
    }
}

TEST(PartialTrace, TensorThenTraceScalesByTrace) {
    RngStream rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = random::ginibre(4, 4, rng);
        const ComplexMatrix b = random::ginibre(2, 2, rng);
        const ComplexMatrix out =
            partial_trace_qubits(tensor(a, b), 3, std::vector<std::size_t>{0, 1});
        EXPECT_LT((out - b.trace() * a).norm(), 1e-12);
    }
}

TEST(Norms, DiagonalCases) {
    EXPECT_NEAR(trace_norm(diag({1.0, -2.0})), 3.0, 1e-14);
    EXPECT_NEAR(operator_norm(identity(5)), 1.0, 1e-14);
    EXPECT_NEAR(operator_norm(diag({3.0, 1.0})), 3.0, 1e-14);
}

TEST(Norms, DensityHasUnitTraceNorm) {
    RngStream rng(29);
    for (std::size_t d = 2; d <= 16; ++d) {
        EXPECT_NEAR(trace_norm(random::density(d, rng)), 1.0, 1e-12);
    }
}

TEST(Norms, AgreeWithJacobiOracle) {
    RngStream rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 2 + trial % 15;
        const ComplexMatrix a = random::ginibre(d, d, rng);
        const auto sv = oracle::jacobi_singular_values(a);
        const RealVector lib = singular_values(a);
        ASSERT_EQ(static_cast<std::size_t>(lib.size()), sv.size());
        for (std::size_t k = 0; k < sv.size(); ++k) {
            EXPECT_NEAR(lib(static_cast<Eigen::Index>(k)), sv[k], 1e-10 * (1 + sv[0]));
        }
        EXPECT_NEAR(trace_norm(a), oracle::jacobi_trace_norm(a), 1e-10 * d);
    }
}

TEST(Norms, OperatorNormMatchesPowerIteration) {
    RngStream rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = 2 + trial % 15;
        const ComplexMatrix a = random::ginibre(d, d, rng);
        const ComplexMatrix gram = a.adjoint() * a;
        const auto [lambda, vec] =
            oracle::power_iteration(gram, random::pure_state(d, rng));
        (void)vec;
        EXPECT_NEAR(operator_norm(a), std::sqrt(lambda), 1e-8);
    }
}

TEST(Norms, RejectNonSquare) {
    EXPECT_THROW((void)trace_norm(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
    EXPECT_THROW((void)operator_norm(ComplexMatrix::Zero(3, 2)), std::invalid_argument);
}

TEST(Spectrum, ReconstructionAndOrdering) {
    RngStream rng(41);
    for (std::size_t d = 2; d <= 32; d += 3) {
        const ComplexMatrix h = random::hermitian(d, rng);
        const Spectrum s = hermitian_spectrum(h);
        EXPECT_LE(trace_norm(h - s.reconstruct()), 1e-9);
        for (Eigen::Index k = 1; k < s.eigenvalues.size(); ++k) {
            EXPECT_GE(s.eigenvalues(k - 1), s.eigenvalues(k));
        }
        const ComplexMatrix gram = s.eigenvectors.adjoint() * s.eigenvectors;
        EXPECT_LT((gram - identity(d)).norm(), 1e-10);
    }
}

TEST(Spectrum, RejectsNonHermitian) {
    EXPECT_THROW((void)hermitian_spectrum(rotation_r(0.4)), std::invalid_argument);
    EXPECT_THROW((void)max_eigpair(rotation_r(0.4)), std::invalid_argument);
}

TEST(MaxEigpair, ProjectorCase) {
    const EigenPair top = max_eigpair(projector_onto(basis_vector(2, 1)));
    EXPECT_NEAR(top.value, 1.0, 1e-14);
    EXPECT_NEAR(std::abs(top.vector(1)), 1.0, 1e-14);
}

TEST(MaxEigpair, ResidualAndPowerIterationAgreement) {
    RngStream rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 2 + trial % 10;
        const ComplexMatrix h = random::hermitian(d, rng);
        const EigenPair top = max_eigpair(h);
        EXPECT_LE((h * top.vector - top.value * top.vector).norm(), 1e-9);
        EXPECT_NEAR(top.vector.norm(), 1.0, 1e-12);
        const auto [lambda, vec] = oracle::power_iteration(h, random::pure_state(d, rng));
        (void)vec;
        EXPECT_NEAR(top.value, lambda, 1e-8);
    }
}

TEST(Sqrt, SquaresBackAndRejectsNegative) {
    RngStream rng(47);
    const ComplexMatrix rho = random::density(6, rng, 3);
    const ComplexMatrix root = psd_sqrt(rho);
    EXPECT_LT((root * root - rho).norm(), 1e-10);
    EXPECT_THROW((void)psd_sqrt(diag({1.0, -0.1})), std::domain_error);
}

TEST(Holder, RandomMatricesProperty) {
    RngStream rng(53);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 2 + trial % 15;
        const ComplexMatrix a = random::ginibre(d, d, rng);
        const ComplexMatrix b = random::ginibre(d, d, rng);
        const double lhs = std::abs((b.adjoint() * a).trace());
        EXPECT_LE(lhs, trace_norm(a) * operator_norm(b) + 1e-9);
    }
}

TEST(Qubits, ForDim) {
    EXPECT_EQ(qubits_for_dim(1), 0u);
    EXPECT_EQ(qubits_for_dim(8), 3u);
    EXPECT_THROW((void)qubits_for_dim(6), std::invalid_argument);
}

}  // namespace
}  // namespace onesided
