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

#include "onesided/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "onesided/random.hpp"

namespace onesided {

namespace {

const std::string kSwapAncilla = "swap_anc";

ComplexMatrix ry(double theta) {
    ComplexMatrix m(2, 2);
    m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return m;
}

ComplexMatrix ket1_projector() {
    return projector_onto(basis_vector(2, 1));
}

void require_protocol_shape(const ProtocolState &proof, const ToyVerifier &v) {
    if (proof.l < 2) {
        throw std::invalid_argument("verifier W needs at least two EPR pairs");
    }
    if (!(proof.state.layout() == proof_layout(v.p_qubits, proof.l))) {
        throw std::invalid_argument(
            "proof layout does not match (P, S1, S1', ..., Sl, Sl')");
    }
}

StateVector product_proof(const ComplexVector &witness, std::size_t p_qubits,
                          const std::vector<ComplexMatrix> &pair_unitaries) {
    StateVector state(RegisterLayout{{kProofRegister, p_qubits}},
                      witness.normalized());
    for (std::size_t i = 0; i < pair_unitaries.size(); ++i) {
        state = state.tensor(choi_state(pair_unitaries[i], prover_half(i + 1),
                                        verifier_half(i + 1)));
    }
    return state;
}

// Final state of the SWAP-test circuit with the ancilla appended last.
DensityOperator swap_circuit(const DensityOperator &state,
                             const RegisterNames &reg1,
                             const RegisterNames &reg2) {
    const std::size_t k = state.layout().qubit_count(reg1);
    if (k == 0 || k != state.layout().qubit_count(reg2)) {
        throw std::invalid_argument("swap_test: registers differ in size");
    }
    if (state.layout().contains(kSwapAncilla)) {
        throw std::invalid_argument("swap_test: register name '" + kSwapAncilla +
                                    "' is reserved");
    }
    const DensityOperator with_anc =
        append_zero_register(state, {kSwapAncilla, 1});
    const RegisterLayout &layout = with_anc.layout();

    const ComplexMatrix h = make_gate(GateKind::H);
    const ComplexMatrix swap = swap_registers_gate(k);
    const std::size_t half = static_cast<std::size_t>(swap.rows());
    ComplexMatrix cswap = ComplexMatrix::Zero(static_cast<Eigen::Index>(2 * half),
                                              static_cast<Eigen::Index>(2 * half));
    cswap.topLeftCorner(swap.rows(), swap.cols()) = identity(half);
    cswap.bottomRightCorner(swap.rows(), swap.cols()) = swap;

    RegisterNames controlled{kSwapAncilla};
    controlled.insert(controlled.end(), reg1.begin(), reg1.end());
    controlled.insert(controlled.end(), reg2.begin(), reg2.end());

    ComplexMatrix m = sandwich(with_anc.matrix(), layout, h, {kSwapAncilla});
    m = sandwich(m, layout, cswap, controlled);
    m = sandwich(m, layout, h, {kSwapAncilla});
    return DensityOperator::trusted(layout, std::move(m));
}

// Everything W needs to know about one choice of kept pairs.
struct SlotEvaluation {
    std::vector<double> bell_probs;
    struct Success {
        BellLabel outcome;
        double probability;
        std::vector<std::string> labels;
        std::vector<double> probs;
    };
    std::vector<Success> success;
    double swap_accept = 0.0;
};

// `kept` has layout (P, S1, S1', S2, S2').
SlotEvaluation evaluate_slots(const DensityOperator &kept, const ToyVerifier &v) {
    const std::string s1 = prover_half(1), s1p = verifier_half(1);
    const std::string s2 = prover_half(2), s2p = verifier_half(2);
    const RegisterLayout &layout = kept.layout();

    // Step 2: pinch both pairs.
    ComplexMatrix m = pinch_on(kept.matrix(), layout, {s1, s1p});
    m = pinch_on(m, layout, {s2, s2p});
    const DensityOperator pinched = DensityOperator::trusted(layout, m);

    SlotEvaluation out;
    out.swap_accept = swap_test(pinched, {s1, s1p}, {s2, s2p});

    // b = 0 branch.
    m = sandwich(m, layout, make_gate(GateKind::WB), {s1, s1p});
    const RegisterNames without_s1p{kProofRegister, s1, s2, s2p};
    DensityOperator rho = append_zero_register(
        DensityOperator::trusted(layout.select(without_s1p),
                                 partial_trace(m, layout, without_s1p)),
        {kAncillaRegister, v.a_qubits});
    const RegisterNames pa{kProofRegister, kAncillaRegister};
    const ComplexMatrix flip =
        identity(2 * static_cast<std::size_t>(v.v.rows())) -
        2.0 * tensor(v.acc_projector, ket1_projector());
    rho = apply_unitary(rho, v.v, pa);
    rho = apply_unitary(rho, flip, {kProofRegister, kAncillaRegister, s1});
    rho = apply_unitary(rho, v.v.adjoint(), pa);

    const auto branches = post_selection(rho, {s2, s2p, s1});
    for (const auto &br : branches) {
        out.bell_probs.push_back(br.probability);
        if (!br.success || !br.post_state) {
            continue;
        }
        const auto records = measure_all(
            *br.post_state,
            standard_basis_measurement(br.post_state->layout(),
                                       {kAncillaRegister, s2}));
        SlotEvaluation::Success s{br.outcome, br.probability, {}, {}};
        for (const auto &r : records) {
            s.labels.push_back(r.label);
            s.probs.push_back(r.probability);
        }
        out.success.push_back(std::move(s));
    }
    return out;
}

bool all_zero(const std::string &bits) {
    return std::all_of(bits.begin(), bits.end(), [](char c) { return c == '0'; });
}

}  // namespace

std::string prover_half(std::size_t i) { return "S" + std::to_string(i); }
std::string verifier_half(std::size_t i) { return "S" + std::to_string(i) + "'"; }

RegisterLayout proof_layout(std::size_t p_qubits, std::size_t l) {
    std::vector<Register> regs{{kProofRegister, p_qubits}};
    for (std::size_t i = 1; i <= l; ++i) {
        regs.push_back({prover_half(i), 1});
        regs.push_back({verifier_half(i), 1});
    }
    return RegisterLayout(std::move(regs));
}

std::vector<RegisterPair> proof_pairs(std::size_t l) {
    std::vector<RegisterPair> pairs;
    for (std::size_t i = 1; i <= l; ++i) {
        pairs.emplace_back(prover_half(i), verifier_half(i));
    }
    return pairs;
}

// ---------------------------------------------------------------------------

ToyVerifier make_toy_verifier(double p, std::size_t p_qubits,
                              std::size_t a_qubits) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("toy verifier: p must lie in (0, 1]");
    }
    if (p_qubits == 0 || a_qubits == 0) {
        throw std::invalid_argument("toy verifier: registers need >= 1 qubit");
    }
    const std::size_t dp = std::size_t{1} << p_qubits;
    const std::size_t da = std::size_t{1} << a_qubits;
    const ComplexMatrix rest_a = identity(da / 2);

    ToyVerifier tv;
    tv.p_qubits = p_qubits;
    tv.a_qubits = a_qubits;
    tv.target_p = p;

    const ComplexMatrix witness_proj = projector_onto(basis_vector(dp, dp - 1));
    const ComplexMatrix rot = tensor(ry(std::asin(std::sqrt(p))), rest_a);
    tv.v = tensor(identity(dp) - witness_proj, identity(da)) +
           tensor(witness_proj, rot);
    tv.acc_projector = tensor(identity(dp), tensor(ket1_projector(), rest_a));
    return tv;
}

ComplexMatrix accept_operator(const ToyVerifier &v) {
    const ComplexMatrix full = v.v.adjoint() * v.acc_projector * v.v;
    const std::size_t dp = std::size_t{1} << v.p_qubits;
    const std::size_t da = std::size_t{1} << v.a_qubits;
    ComplexMatrix m(static_cast<Eigen::Index>(dp), static_cast<Eigen::Index>(dp));
    for (std::size_t i = 0; i < dp; ++i) {
        for (std::size_t j = 0; j < dp; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                full(static_cast<Eigen::Index>(i * da),
                     static_cast<Eigen::Index>(j * da));
        }
    }
    return 0.5 * (m + m.adjoint());
}

void validate(const ToyVerifier &v) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1}
                                               << (v.p_qubits + v.a_qubits));
    if (v.v.rows() != dim || v.acc_projector.rows() != dim) {
        throw std::invalid_argument("toy verifier: operator sizes do not match");
    }
    if (!is_unitary(v.v)) {
        throw std::invalid_argument("toy verifier: V is not unitary");
    }
    if (!is_projector(v.acc_projector)) {
        throw std::invalid_argument("toy verifier: Pi_acc is not a projector");
    }
    const double top = max_eigpair(accept_operator(v)).value;
    if (std::abs(top - v.target_p) > 1e-9) {
        throw std::invalid_argument("toy verifier: max acceptance " +
                                    std::to_string(top) + " != target " +
                                    std::to_string(v.target_p));
    }
}

// ---------------------------------------------------------------------------

const char *strategy_name(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::Honest:
        return "honest";
    case StrategyKind::ChoiProduct:
        return "choi_product";
    case StrategyKind::IdleEPR:
        return "idle_epr";
    case StrategyKind::LocalUnitaries:
        return "local_unitaries";
    case StrategyKind::CustomState:
        return "custom";
    }
    return "?";
}

HonestParameters honest_parameters(const ToyVerifier &v) {
    const EigenPair top = max_eigpair(accept_operator(v));
    const double q = std::clamp(1.0 / (2.0 * top.value), 0.5, 1.0);
    return {top.value, q, top.vector};
}

ProtocolState honest_proof(const ToyVerifier &v, std::size_t l) {
    if (l < 2) {
        throw std::invalid_argument("honest_proof: l must be >= 2");
    }
    const HonestParameters hp = honest_parameters(v);
    if (hp.p_max < 0.5 - 1e-12) {
        throw std::invalid_argument(
            "honest_proof: maximum acceptance " + std::to_string(hp.p_max) +
            " is below 1/2, no perfect-completeness proof exists");
    }
    const ComplexMatrix r_dag = rotation_r(hp.q).adjoint();
    const std::vector<ComplexMatrix> unitaries(l, r_dag);
    return {DensityOperator(product_proof(hp.witness, v.p_qubits, unitaries)), l};
}

ProtocolState cheating_proof(const ProverStrategy &strategy, const ToyVerifier &v,
                             std::size_t l) {
    if (l < 2) {
        throw std::invalid_argument("cheating_proof: l must be >= 2");
    }
    const std::size_t dp = std::size_t{1} << v.p_qubits;
    auto witness = [&] {
        if (strategy.witness_override) {
            if (static_cast<std::size_t>(strategy.witness_override->size()) != dp) {
                throw std::invalid_argument("witness override has wrong dimension");
            }
            return ComplexVector(strategy.witness_override->normalized());
        }
        return honest_parameters(v).witness;
    };

    ProtocolState proof{DensityOperator::maximally_mixed(proof_layout(v.p_qubits, l)),
                        l};
    switch (strategy.kind) {
    case StrategyKind::Honest:
        proof = honest_proof(v, l);
        break;
    case StrategyKind::ChoiProduct: {
        const std::vector<ComplexMatrix> u(l, rotation_r(strategy.q).adjoint());
        proof.state = DensityOperator(product_proof(witness(), v.p_qubits, u));
        break;
    }
    case StrategyKind::IdleEPR: {
        const std::vector<ComplexMatrix> u(l, identity(2));
        proof.state = DensityOperator(product_proof(witness(), v.p_qubits, u));
        break;
    }
    case StrategyKind::LocalUnitaries: {
        RngStream rng(strategy.seed);
        const ComplexVector w = random::unitary(dp, rng) * witness();
        std::vector<ComplexMatrix> u;
        for (std::size_t i = 0; i < l; ++i) {
            u.push_back(random::unitary(2, rng));
        }
        proof.state = DensityOperator(product_proof(w, v.p_qubits, u));
        break;
    }
    case StrategyKind::CustomState:
        if (!strategy.custom) {
            throw std::invalid_argument("custom strategy without a state");
        }
        if (!(strategy.custom->layout() == proof_layout(v.p_qubits, l))) {
            throw std::invalid_argument(
                "custom state layout does not match (P, S1, S1', ...)");
        }
        proof.state = *strategy.custom;
        break;
    }
    const double dev = marginal_deviation(proof);
    if (dev > kMarginalTol) {
        throw MarginalViolation("verifier halves are not maximally mixed "
                                "(trace distance " + std::to_string(dev) + ")");
    }
    return proof;
}

double marginal_deviation(const ProtocolState &proof) {
    RegisterNames halves;
    for (std::size_t i = 1; i <= proof.l; ++i) {
        halves.push_back(verifier_half(i));
    }
    const ComplexMatrix reduced =
        partial_trace(proof.state.matrix(), proof.state.layout(), halves);
    const std::size_t dim = std::size_t{1} << proof.l;
    return trace_distance(reduced, identity(dim) / static_cast<double>(dim));
}

// ---------------------------------------------------------------------------

double swap_test(const DensityOperator &state, const RegisterNames &reg1,
                 const RegisterNames &reg2) {
    const DensityOperator out = swap_circuit(state, reg1, reg2);
    const ComplexMatrix anc =
        partial_trace(out.matrix(), out.layout(), {kSwapAncilla});
    return std::clamp(anc(0, 0).real(), 0.0, 1.0);
}

bool swap_test_sample(const DensityOperator &state, const RegisterNames &reg1,
                      const RegisterNames &reg2, RngStream &rng) {
    const DensityOperator out = swap_circuit(state, reg1, reg2);
    const auto rec = measure_sample(
        out, standard_basis_measurement(out.layout(), {kSwapAncilla}), rng);
    return rec.label == "0";
}

double swap_test_closed_form(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw std::invalid_argument("swap_test_closed_form: dimension mismatch");
    }
    return 0.5 * (1.0 + (rho * sigma).trace().real());
}

// ---------------------------------------------------------------------------

std::vector<PostSelectionBranch> post_selection(const DensityOperator &state,
                                                const PostSelectionRegisters &regs) {
    const auto &layout = state.layout();
    for (const auto *name : {&regs.target, &regs.pair_half, &regs.source}) {
        if (layout.at(*name).qubits != 1) {
            throw std::invalid_argument("post_selection: register '" + *name +
                                        "' is not a single qubit");
        }
    }
    if (regs.target == regs.pair_half || regs.target == regs.source ||
        regs.pair_half == regs.source) {
        throw std::invalid_argument("post_selection: registers must be distinct");
    }
    const auto records =
        measure_all(state, bell_measurement(regs.pair_half, regs.source));
    std::vector<PostSelectionBranch> out;
    for (std::size_t k = 0; k < records.size(); ++k) {
        const BellLabel label = kBellOrder[k];
        PostSelectionBranch br{label,
                               label == BellLabel::PhiPlus ||
                                   label == BellLabel::PsiPlus,
                               records[k].probability, records[k].post_state};
        if (label == BellLabel::PsiPlus && br.post_state) {
            br.post_state =
                apply_unitary(*br.post_state, make_gate(GateKind::X), {regs.target});
        }
        out.push_back(std::move(br));
    }
    return out;
}

PostSelectionBranch post_selection_sample(const DensityOperator &state,
                                          const PostSelectionRegisters &regs,
                                          RngStream &rng) {
    auto branches = post_selection(state, regs);
    std::vector<double> probs;
    for (const auto &b : branches) {
        probs.push_back(b.probability);
    }
    return std::move(branches[sample_index(probs, rng)]);
}

double postsel_success_prob(const DensityOperator &state,
                            const PostSelectionRegisters &regs) {
    const ComplexMatrix projected =
        act_left(state.matrix(), state.layout(), bell_subspaces().pi_plus,
                 {regs.pair_half, regs.source});
    return projected.trace().real();
}

// ---------------------------------------------------------------------------

double rewinding_residual(const ComplexMatrix &delta, const ComplexMatrix &pi,
                          const ComplexVector &omega) {
    if (delta.rows() != pi.rows() || delta.cols() != pi.cols() ||
        omega.size() != delta.cols()) {
        throw RewindingPreconditionError("rewinding: dimension mismatch");
    }
    if (!is_projector(delta) || !is_projector(pi)) {
        throw RewindingPreconditionError("rewinding: Delta and Pi must be projectors");
    }
    if (std::abs(omega.norm() - 1.0) > kStructureTol) {
        throw RewindingPreconditionError("rewinding: omega is not a unit vector");
    }
    const ComplexVector half = delta * (pi * (delta * omega));
    const double eig_err = (half - 0.5 * omega).norm();
    if (eig_err > 1e-9) {
        throw RewindingPreconditionError(
            "rewinding: omega is not a 1/2-eigenvector of Delta Pi Delta "
            "(residual " + std::to_string(eig_err) + ")");
    }
    const ComplexVector d_omega = delta * omega;
    return (delta * (d_omega - 2.0 * (pi * d_omega))).norm();
}

RewindingInstance honest_rewinding_instance(const ToyVerifier &v) {
    const HonestParameters hp = honest_parameters(v);
    const std::size_t dp = std::size_t{1} << v.p_qubits;
    const std::size_t das = std::size_t{1} << (v.a_qubits + 1);
    const ComplexMatrix vr = tensor(v.v, rotation_r(hp.q));
    RewindingInstance inst;
    inst.pi = vr.adjoint() * tensor(v.acc_projector, ket1_projector()) * vr;
    inst.pi = 0.5 * (inst.pi + inst.pi.adjoint());
    inst.delta = tensor(identity(dp), projector_onto(basis_vector(das, 0)));
    inst.omega = tensor(hp.witness, basis_vector(das, 0));
    return inst;
}

// ---------------------------------------------------------------------------

BranchBreakdown verifier_w_exact(const ProtocolState &proof, const ToyVerifier &v) {
    require_protocol_shape(proof, v);
    const DensityOperator kept = symmetrize_pairs(proof.state, proof_pairs(proof.l));
    const SlotEvaluation ev = evaluate_slots(kept, v);

    BranchBreakdown out;
    out.b1_swap_accept = 0.5 * ev.swap_accept;
    out.b1_swap_reject = 0.5 * (1.0 - ev.swap_accept);
    double success = 0.0;
    for (const auto &s : ev.success) {
        success += s.probability;
        for (std::size_t k = 0; k < s.labels.size(); ++k) {
            const double mass = 0.5 * s.probability * s.probs[k];
            (all_zero(s.labels[k]) ? out.b0_zero_reject : out.b0_accept) += mass;
        }
    }
    double total_bell = 0.0;
    for (double p : ev.bell_probs) {
        total_bell += p;
    }
    out.b0_postsel_fail = 0.5 * std::max(0.0, total_bell - success);
    return out;
}

const char *run_branch_name(RunBranch b) {
    switch (b) {
    case RunBranch::B0PostselFail:
        return "b0_postsel_fail";
    case RunBranch::B0Measured:
        return "b0_measured";
    case RunBranch::B1Swap:
        return "b1_swap";
    }
    return "?";
}

RunSampler::RunSampler(const ProtocolState &proof, const ToyVerifier &v)
    : l_(proof.l) {
    require_protocol_shape(proof, v);
    const auto pairs = proof_pairs(l_);
    nodes_.resize(l_ * l_);
    for (std::size_t i = 0; i < l_; ++i) {
        for (std::size_t j = 0; j < l_; ++j) {
            if (i == j) {
                continue;
            }
            const SlotEvaluation ev =
                evaluate_slots(select_pairs(proof.state, pairs, i, j), v);
            PairNode node;
            node.bell_probs = ev.bell_probs;
            node.swap_accept = ev.swap_accept;
            for (const auto &s : ev.success) {
                node.success.push_back({s.outcome, s.labels, s.probs});
            }
            nodes_[i * l_ + j] = std::move(node);
        }
    }
}

RunOutcome RunSampler::sample(RngStream &rng) const {
    RunOutcome out;
    out.pair_first = rng.below(l_);
    out.pair_second = rng.below(l_ - 1);
    if (out.pair_second >= out.pair_first) {
        ++out.pair_second;
    }
    const PairNode &node = nodes_[out.pair_first * l_ + out.pair_second];
    out.coin = static_cast<int>(rng.below(2));
    if (out.coin == 1) {
        out.branch = RunBranch::B1Swap;
        out.swap_passed = rng.uniform() < node.swap_accept;
        out.accept = *out.swap_passed;
        return out;
    }
    const BellLabel bell = kBellOrder[sample_index(node.bell_probs, rng)];
    out.bell = bell;
    const auto it = std::find_if(node.success.begin(), node.success.end(),
                                 [bell](const SuccessBranch &s) {
                                     return s.outcome == bell;
                                 });
    if (it == node.success.end()) {
        out.branch = RunBranch::B0PostselFail;
        out.accept = true;
        return out;
    }
    out.branch = RunBranch::B0Measured;
    out.standard_basis = it->labels[sample_index(it->probs, rng)];
    out.accept = !all_zero(out.standard_basis);
    return out;
}

RunOutcome verifier_w_sample(const ProtocolState &proof, const ToyVerifier &v,
                             RngStream &rng) {
    return RunSampler(proof, v).sample(rng);
}

std::optional<double> swap_branch_reject_closed_form(const ProtocolState &proof) {
    const auto &layout = proof.state.layout();
    const auto &m = proof.state.matrix();
    std::vector<ComplexMatrix> singles;
    for (std::size_t i = 1; i <= proof.l; ++i) {
        singles.push_back(
            partial_trace(m, layout, {prover_half(i), verifier_half(i)}));
    }
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < proof.l; ++i) {
        for (std::size_t j = 0; j < proof.l; ++j) {
            if (i == j) {
                continue;
            }
            const ComplexMatrix joint = partial_trace(
                m, layout,
                {prover_half(i + 1), verifier_half(i + 1), prover_half(j + 1),
                 verifier_half(j + 1)});
            if (trace_distance(joint, tensor(singles[i], singles[j])) > 1e-9) {
                return std::nullopt;
            }
            const double overlap =
                (pinch_phi(singles[i]) * pinch_phi(singles[j])).trace().real();
            acc += 0.5 * (1.0 - overlap);
            ++count;
        }
    }
    return acc / static_cast<double>(count);
}

}  // namespace onesided
