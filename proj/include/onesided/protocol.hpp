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
 * The one-sided-error verifier W and its building blocks.
 *
 * Registers: the proof arrives in P and the prover halves S1..Sl; the
 * verifier holds the other EPR halves S1'..Sl'. Inside a run the verifier
 * creates its private register A in |0...0>. The proof layout is always
 * (P, S1, S1', S2, S2', ..., Sl, Sl').
 *
 * A run of W:
 *   1. keep a uniformly random ordered pair of (Si, Si') pairs as slots 1, 2
 *   2. pinch both kept pairs onto the B+ / B- Bell subspaces
 *   3. flip a fair coin b
 *   b = 0: WB on (S1, S1'), which leaves R(q)|0> in S1 for an honest proof;
 *          create A; V; phase flip on (acceptance qubit = 1, S1 = 1); V^dag;
 *          post-select through (S2, S2', S1). Failure accepts. On success,
 *          measure (A, S2) and reject iff the outcome is all zeros.
 *   b = 1: SWAP test between (S1, S1') and (S2, S2'); accept iff it passes.
 *
 * An honest prover sends the top eigenvector of the acceptance operator M
 * in P and (R(q)^dag (x) I)|Phi+> in every pair with q = 1 / (2 p_max),
 * which makes W accept with probability exactly 1.
 *
 * The phase conventions of R(q) and WB follow the matrices documented in
 * gates.hpp. Any independent implementation has to match them exactly or
 * the completeness identities fail.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "onesided/channels.hpp"
#include "onesided/kernel.hpp"
#include "onesided/rng.hpp"
#include "onesided/state.hpp"

namespace onesided {

inline constexpr double kMarginalTol = 1e-9;

inline const std::string kProofRegister = "P";
inline const std::string kAncillaRegister = "A";

/// "S<i>" for the prover half of pair i (1-based).
[[nodiscard]] std::string prover_half(std::size_t i);
/// "S<i>'" for the verifier half of pair i (1-based).
[[nodiscard]] std::string verifier_half(std::size_t i);
[[nodiscard]] RegisterLayout proof_layout(std::size_t p_qubits, std::size_t l);
[[nodiscard]] std::vector<RegisterPair> proof_pairs(std::size_t l);

// ---------------------------------------------------------------------------
// Toy verifiers

/**
 * Stand-in for an amplified verifier circuit. V acts on P (x) A; the
 * acceptance qubit is the first qubit of A and acc_projector projects it
 * onto |1> (as an operator on P (x) A).
 */
struct ToyVerifier {
    ComplexMatrix v;
    std::size_t p_qubits = 1;
    std::size_t a_qubits = 1;
    ComplexMatrix acc_projector;
    double target_p = 0.0;
};

/**
 * V = controlled rotation: when P = |1...1>, the acceptance qubit is rotated
 * by theta with sin^2(theta) = p; otherwise V acts as identity. The
 * acceptance operator is then p |1...1><1...1|.
 *
 * Throws std::invalid_argument for p outside (0, 1] or zero-size registers.
 */
[[nodiscard]] ToyVerifier make_toy_verifier(double p, std::size_t p_qubits = 1,
                                            std::size_t a_qubits = 1);

/// M = (I (x) <0|) V^dag Pi_acc V (I (x) |0>), an operator on P.
[[nodiscard]] ComplexMatrix accept_operator(const ToyVerifier &v);

/// Throws std::invalid_argument if the structural invariants fail.
void validate(const ToyVerifier &v);

// ---------------------------------------------------------------------------
// Provers

/// A prover output violated Tr_{P,S}(state) = I / 2^l.
class MarginalViolation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct ProtocolState {
    DensityOperator state;
    std::size_t l = 0;
};

enum class StrategyKind { Honest, ChoiProduct, IdleEPR, LocalUnitaries, CustomState };

[[nodiscard]] const char *strategy_name(StrategyKind kind);

struct ProverStrategy {
    StrategyKind kind = StrategyKind::Honest;
    double q = 0.0;             // ChoiProduct
    std::uint64_t seed = 0;     // LocalUnitaries
    std::optional<DensityOperator> custom;          // CustomState
    std::optional<ComplexVector> witness_override;  // state sent in P

    static ProverStrategy honest() { return {}; }
    static ProverStrategy choi_product(double q) {
        ProverStrategy s;
        s.kind = StrategyKind::ChoiProduct;
        s.q = q;
        return s;
    }
    static ProverStrategy idle_epr() {
        ProverStrategy s;
        s.kind = StrategyKind::IdleEPR;
        return s;
    }
    static ProverStrategy local_unitaries(std::uint64_t seed) {
        ProverStrategy s;
        s.kind = StrategyKind::LocalUnitaries;
        s.seed = seed;
        return s;
    }
    static ProverStrategy custom_state(DensityOperator state) {
        ProverStrategy s;
        s.kind = StrategyKind::CustomState;
        s.custom = std::move(state);
        return s;
    }
};

/// Largest eigenvalue of M, and the clamped rotation parameter 1/(2 p).
struct HonestParameters {
    double p_max;
    double q;
    ComplexVector witness;
};
[[nodiscard]] HonestParameters honest_parameters(const ToyVerifier &v);

/// Throws std::invalid_argument if p_max < 1/2 or l < 2.
[[nodiscard]] ProtocolState honest_proof(const ToyVerifier &v, std::size_t l);

/// Builds the proof for any strategy and checks the verifier-half marginal.
/// Throws MarginalViolation when it is off by more than 1e-9.
[[nodiscard]] ProtocolState cheating_proof(const ProverStrategy &strategy,
                                           const ToyVerifier &v, std::size_t l);

/// Trace distance between Tr_{P,S}(state) and I / 2^l.
[[nodiscard]] double marginal_deviation(const ProtocolState &proof);

// ---------------------------------------------------------------------------
// SWAP test

/// Exact acceptance probability of the SWAP-test circuit (ancilla H,
/// controlled register swap, H, measure 0) between reg1 and reg2.
[[nodiscard]] double swap_test(const DensityOperator &state,
                               const RegisterNames &reg1,
                               const RegisterNames &reg2);
/// One sampled run; true on acceptance.
[[nodiscard]] bool swap_test_sample(const DensityOperator &state,
                                    const RegisterNames &reg1,
                                    const RegisterNames &reg2, RngStream &rng);
/// (1 + Tr(rho sigma)) / 2.
[[nodiscard]] double swap_test_closed_form(const ComplexMatrix &rho,
                                           const ComplexMatrix &sigma);

// ---------------------------------------------------------------------------
// Post-selection (teleportation through a Choi state)

struct PostSelectionRegisters {
    std::string target;     // receives the output (S in the pair (S, S'))
    std::string pair_half;  // S'
    std::string source;     // X, the register being teleported
};

struct PostSelectionBranch {
    BellLabel outcome;
    bool success;
    double probability;
    /// Whole-layout state after the branch (X applied on `target` for Psi+).
    std::optional<DensityOperator> post_state;
};

/// Bell measurement on (pair_half, source): Phi+ succeeds as is, Psi+
/// succeeds after X on target, Phi- / Psi- fail. Returns all four branches.
[[nodiscard]] std::vector<PostSelectionBranch>
post_selection(const DensityOperator &state, const PostSelectionRegisters &regs);
[[nodiscard]] PostSelectionBranch
post_selection_sample(const DensityOperator &state,
                      const PostSelectionRegisters &regs, RngStream &rng);

/// Tr(state (I (x) Pi+ on (pair_half, source))).
[[nodiscard]] double postsel_success_prob(const DensityOperator &state,
                                          const PostSelectionRegisters &regs);

// ---------------------------------------------------------------------------
// Rewinding

class RewindingPreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/**
 * ||Delta (I - 2 Pi) Delta |omega>||. Requires Delta and Pi to be
 * projectors and Delta Pi Delta |omega> = |omega> / 2 within 1e-9; throws
 * RewindingPreconditionError otherwise. The result is zero in exact
 * arithmetic whenever the precondition holds.
 */
[[nodiscard]] double rewinding_residual(const ComplexMatrix &delta,
                                        const ComplexMatrix &pi,
                                        const ComplexVector &omega);

struct RewindingInstance {
    ComplexMatrix delta;
    ComplexMatrix pi;
    ComplexVector omega;
};

/// On P (x) A (x) S: Delta = I (x) |0..0><0..0|, Pi = (V (x) R(q))^dag
/// (Pi_acc (x) |1><1|) (V (x) R(q)), omega = witness (x) |0..0>.
[[nodiscard]] RewindingInstance honest_rewinding_instance(const ToyVerifier &v);

// ---------------------------------------------------------------------------
// Verifier W

/// Probability mass of each terminal branch; sums to 1.
struct BranchBreakdown {
    double b0_postsel_fail = 0.0;  // accept
    double b0_zero_reject = 0.0;   // reject
    double b0_accept = 0.0;        // accept: nonzero (A, S2) outcome
    double b1_swap_accept = 0.0;
    double b1_swap_reject = 0.0;

    [[nodiscard]] double accept() const {
        return b0_postsel_fail + b0_accept + b1_swap_accept;
    }
    [[nodiscard]] double reject() const { return b0_zero_reject + b1_swap_reject; }
    [[nodiscard]] double total() const { return accept() + reject(); }
};

/// Exact evaluation: averages over every ordered pair choice and the coin.
/// Throws std::invalid_argument on l < 2 or a layout that does not match
/// the verifier.
[[nodiscard]] BranchBreakdown verifier_w_exact(const ProtocolState &proof,
                                               const ToyVerifier &v);

enum class RunBranch { B0PostselFail, B0Measured, B1Swap };
[[nodiscard]] const char *run_branch_name(RunBranch b);

struct RunOutcome {
    bool accept = false;
    RunBranch branch = RunBranch::B1Swap;
    int coin = 0;
    std::size_t pair_first = 0;   // 0-based index of the pair kept in slot 1
    std::size_t pair_second = 0;  // 0-based index of the pair kept in slot 2
    std::optional<BellLabel> bell;   // b = 0 only
    std::string standard_basis;      // (A, S2) outcome when measured
    std::optional<bool> swap_passed; // b = 1 only
};

/**
 * Sampled runs of W. Construction evolves the proof once for every ordered
 * pair choice and records the conditional outcome distributions; each
 * sample then draws pair, coin and measurement outcomes in protocol order.
 * Immutable after construction, so concurrent sampling with separate
 * streams is safe.
 */
class RunSampler {
  public:
    RunSampler(const ProtocolState &proof, const ToyVerifier &v);

    [[nodiscard]] RunOutcome sample(RngStream &rng) const;
    [[nodiscard]] std::size_t pair_count() const { return l_; }

  private:
    struct SuccessBranch {
        BellLabel outcome;
        std::vector<std::string> labels;
        std::vector<double> probs;
    };
    struct PairNode {
        std::vector<double> bell_probs;  // indexed like kBellOrder
        std::vector<SuccessBranch> success;
        double swap_accept = 0.0;
    };

    std::size_t l_;
    std::vector<PairNode> nodes_;  // index first * l + second
};

[[nodiscard]] RunOutcome verifier_w_sample(const ProtocolState &proof,
                                           const ToyVerifier &v, RngStream &rng);

/**
 * Closed-form b = 1 reject mass (conditioned on b = 1) for proofs whose
 * pairs are mutually uncorrelated: the average over ordered pairs (i, j)
 * of (1 - Tr(Phi(rho_i) Phi(rho_j))) / 2. Returns nullopt when some
 * two-pair marginal differs from the product of its pair marginals by
 * more than 1e-9 in trace distance.
 */
[[nodiscard]] std::optional<double>
swap_branch_reject_closed_form(const ProtocolState &proof);

}  // namespace onesided
