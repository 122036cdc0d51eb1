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

#include "onesided/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "onesided/random.hpp"

namespace onesided {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Names

const char *experiment_name(Experiment e) {
    switch (e) {
    case Experiment::Completeness:
        return "completeness";
    case Experiment::Soundness:
        return "soundness";
    case Experiment::Lemmas:
        return "lemmas";
    case Experiment::SwapBench:
        return "swap-bench";
    }
    return "?";
}

const char *mode_name(Mode m) { return m == Mode::Exact ? "exact" : "sampled"; }

Experiment parse_experiment(const std::string &s) {
    for (Experiment e : {Experiment::Completeness, Experiment::Soundness,
                         Experiment::Lemmas, Experiment::SwapBench}) {
        if (s == experiment_name(e)) {
            return e;
        }
    }
    throw ConfigError("experiment: unknown value '" + s + "'");
}

Mode parse_mode(const std::string &s) {
    if (s == "exact") {
        return Mode::Exact;
    }
    if (s == "sampled") {
        return Mode::Sampled;
    }
    throw ConfigError("mode: expected 'exact' or 'sampled', got '" + s + "'");
}

ReportFormat parse_format(const std::string &s) {
    if (s == "json") {
        return ReportFormat::Json;
    }
    if (s == "csv") {
        return ReportFormat::Csv;
    }
    throw ConfigError("format: expected 'json' or 'csv', got '" + s + "'");
}

// ---------------------------------------------------------------------------
// Config parsing

namespace {

void reject_unknown(const json &obj, const std::string &where,
                    std::initializer_list<const char *> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto &item : obj.items()) {
        if (!ok.count(item.key())) {
            throw ConfigError(where + item.key() + ": unknown field");
        }
    }
}

const json &require_object(const json &j, const std::string &where) {
    if (!j.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    return j;
}

double get_real(const json &j, const std::string &field) {
    if (!j.is_number()) {
        throw ConfigError(field + ": expected a number");
    }
    return j.get<double>();
}

std::uint64_t get_unsigned(const json &j, const std::string &field) {
    if (!j.is_number_unsigned()) {
        throw ConfigError(field + ": expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

std::string get_string(const json &j, const std::string &field) {
    if (!j.is_string()) {
        throw ConfigError(field + ": expected a string");
    }
    return j.get<std::string>();
}

Amplitudes get_amplitudes(const json &j, const std::string &field) {
    if (!j.is_array() || j.empty()) {
        throw ConfigError(field + ": expected a non-empty array");
    }
    Amplitudes out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const json &a = j[k];
        const std::string where = field + "[" + std::to_string(k) + "]";
        if (a.is_number()) {
            out.emplace_back(a.get<double>(), 0.0);
        } else if (a.is_array() && a.size() == 2 && a[0].is_number() &&
                   a[1].is_number()) {
            out.emplace_back(a[0].get<double>(), a[1].get<double>());
        } else {
            throw ConfigError(where + ": expected a number or [re, im]");
        }
    }
    return out;
}

StrategyKind parse_strategy_kind(const std::string &s) {
    for (StrategyKind k : {StrategyKind::Honest, StrategyKind::ChoiProduct,
                           StrategyKind::IdleEPR, StrategyKind::LocalUnitaries,
                           StrategyKind::CustomState}) {
        if (s == strategy_name(k)) {
            return k;
        }
    }
    throw ConfigError("strategy.kind: unknown value '" + s + "'");
}

ComplexVector to_vector(const Amplitudes &a) {
    ComplexVector v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t k = 0; k < a.size(); ++k) {
        v(static_cast<Eigen::Index>(k)) = a[k];
    }
    return v;
}

ordered_json amplitudes_json(const Amplitudes &a) {
    ordered_json arr = ordered_json::array();
    for (const auto &z : a) {
        arr.push_back({z.real(), z.imag()});
    }
    return arr;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

ExperimentConfig parse_config(const json &j) {
    require_object(j, "config");
    reject_unknown(j, "", {"experiment", "verifier", "l", "strategy", "trials",
                           "seed", "mode", "instances", "workers", "tolerances"});
    ExperimentConfig c;
    if (!j.contains("experiment")) {
        throw ConfigError("experiment: missing");
    }
    c.experiment = parse_experiment(get_string(j["experiment"], "experiment"));
    if (c.experiment == Experiment::Soundness) {
        c.verifier.p = 1e-3;
        c.strategy.kind = StrategyKind::IdleEPR;
    }

    if (j.contains("verifier")) {
        const json &v = require_object(j["verifier"], "verifier");
        reject_unknown(v, "verifier.", {"p", "p_qubits", "a_qubits"});
        if (v.contains("p")) {
            c.verifier.p = get_real(v["p"], "verifier.p");
        }
        if (v.contains("p_qubits")) {
            c.verifier.p_qubits = get_unsigned(v["p_qubits"], "verifier.p_qubits");
        }
        if (v.contains("a_qubits")) {
            c.verifier.a_qubits = get_unsigned(v["a_qubits"], "verifier.a_qubits");
        }
    }
    if (j.contains("l")) {
        c.l = get_unsigned(j["l"], "l");
    }
    if (j.contains("strategy")) {
        const json &s = require_object(j["strategy"], "strategy");
        reject_unknown(s, "strategy.", {"kind", "q", "seed", "witness", "amplitudes"});
        if (!s.contains("kind")) {
            throw ConfigError("strategy.kind: missing");
        }
        c.strategy = StrategyConfig{};
        c.strategy.kind = parse_strategy_kind(get_string(s["kind"], "strategy.kind"));
        if (s.contains("q")) {
            c.strategy.q = get_real(s["q"], "strategy.q");
        }
        if (s.contains("seed")) {
            c.strategy.seed = get_unsigned(s["seed"], "strategy.seed");
        }
        if (s.contains("witness")) {
            c.strategy.witness = get_amplitudes(s["witness"], "strategy.witness");
        }
        if (s.contains("amplitudes")) {
            c.strategy.amplitudes =
                get_amplitudes(s["amplitudes"], "strategy.amplitudes");
        }
    }
    if (j.contains("trials")) {
        c.trials = get_unsigned(j["trials"], "trials");
    }
    if (j.contains("seed")) {
        c.seed = get_unsigned(j["seed"], "seed");
    }
    if (j.contains("mode")) {
        c.mode = parse_mode(get_string(j["mode"], "mode"));
    }
    if (j.contains("instances")) {
        c.instances = get_unsigned(j["instances"], "instances");
    }
    if (j.contains("workers")) {
        c.workers = get_unsigned(j["workers"], "workers");
    }
    if (j.contains("tolerances")) {
        const json &t = require_object(j["tolerances"], "tolerances");
        reject_unknown(t, "tolerances.",
                       {"completeness", "branch_sum", "margin", "identity",
                        "rewinding", "closed_form", "sigma"});
        auto read = [&](const char *key, double &dst) {
            if (t.contains(key)) {
                dst = get_real(t[key], std::string("tolerances.") + key);
            }
        };
        read("completeness", c.tolerances.completeness);
        read("branch_sum", c.tolerances.branch_sum);
        read("margin", c.tolerances.margin);
        read("identity", c.tolerances.identity);
        read("rewinding", c.tolerances.rewinding);
        read("closed_form", c.tolerances.closed_form);
        read("sigma", c.tolerances.sigma);
    }
    validate_config(c);
    return c;
}

void validate_config(const ExperimentConfig &c) {
    if (!(c.verifier.p > 0.0 && c.verifier.p <= 1.0)) {
        throw ConfigError("verifier.p: must lie in (0, 1]");
    }
    if (c.verifier.p_qubits < 1 || c.verifier.a_qubits < 1) {
        throw ConfigError("verifier: p_qubits and a_qubits must be >= 1");
    }
    if (c.verifier.p_qubits + c.verifier.a_qubits > 6) {
        throw ConfigError("verifier: p_qubits + a_qubits must be <= 6");
    }
    if (c.l < 2 || c.l > 4) {
        throw ConfigError("l: supported range is 2..4");
    }
    if (c.verifier.p_qubits + 2 * c.l > 12) {
        throw ConfigError("verifier.p_qubits + 2 l must be <= 12");
    }
    if (c.workers < 1) {
        throw ConfigError("workers: must be >= 1");
    }
    if (c.mode == Mode::Sampled && c.trials < 1) {
        throw ConfigError("trials: must be >= 1 in sampled mode");
    }
    if (c.experiment == Experiment::SwapBench && c.trials < 1) {
        throw ConfigError("trials: swap-bench needs at least one pair");
    }
    if (c.experiment == Experiment::Lemmas && c.instances < 1) {
        throw ConfigError("instances: must be >= 1");
    }
    if ((c.experiment == Experiment::Lemmas ||
         c.experiment == Experiment::SwapBench) &&
        c.mode != Mode::Exact) {
        throw ConfigError(std::string("mode: ") + experiment_name(c.experiment) +
                          " only runs in exact mode");
    }
    if (c.experiment == Experiment::Completeness &&
        c.strategy.kind != StrategyKind::Honest) {
        throw ConfigError("strategy.kind: completeness runs the honest prover");
    }
    if (c.experiment == Experiment::Completeness && c.verifier.p < 0.5) {
        throw ConfigError("verifier.p: completeness needs p >= 1/2");
    }
    const auto &s = c.strategy;
    if (s.kind == StrategyKind::ChoiProduct && !(s.q >= 0.0 && s.q <= 1.0)) {
        throw ConfigError("strategy.q: must lie in [0, 1]");
    }
    if (s.witness) {
        if (s.witness->size() != (std::size_t{1} << c.verifier.p_qubits)) {
            throw ConfigError("strategy.witness: length must be 2^p_qubits");
        }
        if (to_vector(*s.witness).norm() == 0.0) {
            throw ConfigError("strategy.witness: zero vector");
        }
    }
    if (s.kind == StrategyKind::CustomState) {
        if (!s.amplitudes) {
            throw ConfigError("strategy.amplitudes: required for kind 'custom'");
        }
        const std::size_t dim = std::size_t{1}
                                << (c.verifier.p_qubits + 2 * c.l);
        if (s.amplitudes->size() != dim || !is_power_of_two(dim)) {
            throw ConfigError("strategy.amplitudes: length must be 2^(p_qubits + 2 l) = " +
                              std::to_string(dim));
        }
        if (std::abs(to_vector(*s.amplitudes).norm() - 1.0) > kStructureTol) {
            throw ConfigError("strategy.amplitudes: state is not normalized");
        }
    } else if (s.amplitudes) {
        throw ConfigError("strategy.amplitudes: only valid for kind 'custom'");
    }
    const auto &t = c.tolerances;
    for (double x : {t.completeness, t.branch_sum, t.margin, t.identity, t.rewinding,
                     t.closed_form, t.sigma}) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw ConfigError("tolerances: values must be finite and >= 0");
        }
    }
}

ordered_json config_to_json(const ExperimentConfig &c) {
    ordered_json j;
    j["experiment"] = experiment_name(c.experiment);
    j["verifier"] = {{"p", c.verifier.p},
                     {"p_qubits", c.verifier.p_qubits},
                     {"a_qubits", c.verifier.a_qubits}};
    j["l"] = c.l;
    ordered_json s;
    s["kind"] = strategy_name(c.strategy.kind);
    if (c.strategy.kind == StrategyKind::ChoiProduct) {
        s["q"] = c.strategy.q;
    }
    if (c.strategy.kind == StrategyKind::LocalUnitaries) {
        s["seed"] = c.strategy.seed;
    }
    if (c.strategy.witness) {
        s["witness"] = amplitudes_json(*c.strategy.witness);
    }
    if (c.strategy.amplitudes) {
        s["amplitudes"] = amplitudes_json(*c.strategy.amplitudes);
    }
    j["strategy"] = s;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["mode"] = mode_name(c.mode);
    j["instances"] = c.instances;
    j["workers"] = c.workers;
    j["tolerances"] = {{"completeness", c.tolerances.completeness},
                       {"branch_sum", c.tolerances.branch_sum},
                       {"margin", c.tolerances.margin},
                       {"identity", c.tolerances.identity},
                       {"rewinding", c.tolerances.rewinding},
                       {"closed_form", c.tolerances.closed_form},
                       {"sigma", c.tolerances.sigma}};
    return j;
}

ProverStrategy build_strategy(const ExperimentConfig &c) {
    const StrategyConfig &sc = c.strategy;
    ProverStrategy s;
    s.kind = sc.kind;
    s.q = sc.q;
    s.seed = sc.seed;
    if (sc.witness) {
        s.witness_override = to_vector(*sc.witness);
    }
    if (sc.kind == StrategyKind::CustomState) {
        StateVector pure(proof_layout(c.verifier.p_qubits, c.l),
                         to_vector(*sc.amplitudes));
        s.custom = DensityOperator(pure);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Checks

CheckAccumulator::CheckAccumulator(std::string name, double tolerance) {
    r_.name = std::move(name);
    r_.tolerance = tolerance;
    r_.worst_margin = std::numeric_limits<double>::infinity();
}

void CheckAccumulator::add(double margin) {
    ++r_.count;
    if (!(margin >= r_.worst_margin)) {  // NaN sticks
        r_.worst_margin = margin;
    }
    if (!(margin >= -r_.tolerance)) {
        r_.passed = false;
    }
}

CheckResult CheckAccumulator::result() const {
    CheckResult r = r_;
    if (r.count == 0) {
        r.worst_margin = 0.0;
    }
    return r;
}

bool ExperimentReport::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult &c) { return c.passed; });
}

namespace {

ComplexMatrix pinch_first_pair(const ComplexMatrix &m) {
    const std::size_t rest = static_cast<std::size_t>(m.rows()) / 4;
    const auto &b = bell_subspaces();
    const ComplexMatrix plus = tensor(b.pi_plus, identity(rest));
    const ComplexMatrix minus = tensor(b.pi_minus, identity(rest));
    return plus * m * plus + minus * m * minus;
}

std::vector<std::size_t> leading_qubits(std::size_t count) {
    std::vector<std::size_t> keep(count);
    for (std::size_t k = 0; k < count; ++k) {
        keep[k] = k;
    }
    return keep;
}

// ½-eigenpair built from two subspaces at 45 degrees, conjugated by a
// random unitary. Residual is zero in exact arithmetic.
RewindingInstance jordan_instance(std::size_t dim, RngStream &rng) {
    const std::size_t k = dim / 2;
    const ComplexMatrix q = random::unitary(dim, rng);
    ComplexMatrix delta = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < k; ++i) {
        delta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    }
    const ComplexVector u =
        (basis_vector(dim, 0) + basis_vector(dim, k)) / std::sqrt(2.0);
    ComplexMatrix pi = projector_onto(u);
    if (k >= 2) {
        pi += projector_onto(basis_vector(dim, 1));
    }
    if (k + 1 < dim) {
        pi += projector_onto(basis_vector(dim, k + 1));
    }
    RewindingInstance inst;
    inst.delta = q * delta * q.adjoint();
    inst.pi = q * pi * q.adjoint();
    inst.delta = 0.5 * (inst.delta + inst.delta.adjoint());
    inst.pi = 0.5 * (inst.pi + inst.pi.adjoint());
    inst.omega = q * basis_vector(dim, 0);
    return inst;
}

}  // namespace

std::vector<CheckResult> lemma_suite(std::size_t instances, std::uint64_t seed,
                                     const Tolerances &tol) {
    const RngStream root(seed);
    std::vector<CheckResult> out;
    auto dim_for = [](std::size_t k) { return 2 + k % 15; };
    auto qubits_for = [](std::size_t k) { return 2 + k % 3; };

    {
        RngStream rng = root.split(1);
        CheckAccumulator c("holder", tol.margin);
        for (std::size_t k = 0; k < instances; ++k) {
            const std::size_t d = dim_for(k);
            c.add(holder_margin(random::ginibre(d, d, rng),
                                random::ginibre(d, d, rng)));
        }
        out.push_back(c.result());
    }
    {
        RngStream rng = root.split(2);
        CheckAccumulator c("triangle", tol.margin);
        for (std::size_t k = 0; k < instances; ++k) {
            const std::size_t d = dim_for(k);
            c.add(triangle_margin(random::density(d, rng), random::density(d, rng),
                                  random::density(d, rng)));
        }
        out.push_back(c.result());
    }
    {
        RngStream rng = root.split(3);
        CheckAccumulator c("monotonicity_partial_trace", tol.margin);
        for (std::size_t k = 0; k < instances; ++k) {
            const std::size_t n = qubits_for(k);
            const std::size_t d = std::size_t{1} << n;
            const auto keep = leading_qubits(1 + rng.below(n - 1));
            const Superoperator tr = [n, keep](const ComplexMatrix &m) {
                return partial_trace_qubits(m, n, keep);
            };
            c.add(monotonicity_margin(random::density(d, rng),
                                      random::density(d, rng), tr));
        }
        out.push_back(c.result());
    }
    {
        RngStream rng = root.split(4);
        CheckAccumulator c("monotonicity_pinch", tol.margin);
        for (std::size_t k = 0; k < instances; ++k) {
            const std::size_t d = std::size_t{1} << qubits_for(k);
            c.add(monotonicity_margin(random::density(d, rng),
                                      random::density(d, rng), pinch_first_pair));
        }
        out.push_back(c.result());
    }
    {
        RngStream rng = root.split(5);
        CheckAccumulator c("monotonicity_unitary", tol.margin);
        for (std::size_t k = 0; k < instances; ++k) {
            const std::size_t d = dim_for(k);
            const ComplexMatrix u = random::unitary(d, rng);
            const Superoperator conj = [u](const ComplexMatrix &m) {
                return ComplexMatrix(u * m * u.adjoint());
            };
            c.add(monotonicity_margin(random::density(d, rng),
                                      random::density(d, rng), conj));
        }
        out.push_back(c.result());
    }
    {
        RngStream rng = root.split(6);
        CheckAccumulator lower("fvg_lower", tol.margin);
        CheckAccumulator upper("fvg_upper", tol.margin);
        for (std::size_t k = 0; k < instances; ++k) {
            const std::size_t d = dim_for(k);
            const FvgMargins m =
                fvg_margins(random::density(d, rng, 1 + rng.below(d)),
                            random::density(d, rng, 1 + rng.below(d)));
            lower.add(m.lower);
            upper.add(m.upper);
        }
        out.push_back(lower.result());
        out.push_back(upper.result());
    }
    {
        RngStream rng = root.split(7);
        CheckAccumulator c("gentle_measurement", tol.margin);
        for (std::size_t k = 0; k < instances; ++k) {
            const std::size_t d = dim_for(k);
            const ComplexMatrix rho = random::density(d, rng);
            const ComplexMatrix proj = random::projector(d, 1 + rng.below(d - 1), rng);
            c.add(gentle_margin(rho, proj));
        }
        out.push_back(c.result());
    }
    {
        RngStream rng = root.split(8);
        CheckAccumulator additive("perturbation_additive", tol.margin);
        CheckAccumulator mixture("perturbation_mixture", tol.margin);
        for (std::size_t k = 0; k < instances; ++k) {
            const std::size_t d = dim_for(k);
            const double eps = 0.99 * rng.uniform();
            const PerturbationMargins m = perturbation_checks(
                random::density(d, rng), random::density(d, rng), eps);
            additive.add(m.additive);
            mixture.add(m.mixture);
        }
        out.push_back(additive.result());
        out.push_back(mixture.result());
    }
    {
        RngStream rng = root.split(9);
        CheckAccumulator c("swap_test_formula", tol.identity);
        for (std::size_t k = 0; k < instances; ++k) {
            const std::size_t n = 1 + k % 2;
            const std::size_t d = std::size_t{1} << n;
            const ComplexMatrix rho = random::density(d, rng, 1 + rng.below(d));
            const ComplexMatrix sigma = random::density(d, rng, 1 + rng.below(d));
            const DensityOperator joint = DensityOperator::trusted(
                RegisterLayout{{"R1", n}, {"R2", n}}, tensor(rho, sigma));
            c.add(-std::abs(swap_test(joint, {"R1"}, {"R2"}) -
                            swap_test_closed_form(rho, sigma)));
        }
        out.push_back(c.result());
    }
    {
        RngStream rng = root.split(10);
        CheckAccumulator prob("postselection_probability", tol.identity);
        CheckAccumulator fid("postselection_fidelity", 1e-10);
        for (std::size_t k = 0; k < instances; ++k) {
            const double q = rng.uniform();
            const ComplexVector phi = random::pure_state(2, rng);
            const StateVector input =
                choi_state(rotation_r(q).adjoint(), "S2", "S2'")
                    .tensor(StateVector(RegisterLayout{{"S1", 1}}, phi));
            const ComplexVector expected = rotation_r(q).adjoint() * phi;
            double success = 0.0;
            for (const auto &br :
                 post_selection(DensityOperator(input), {"S2", "S2'", "S1"})) {
                if (!br.success) {
                    continue;
                }
                success += br.probability;
                if (br.post_state) {
                    const ComplexMatrix out_s2 = partial_trace(
                        br.post_state->matrix(), br.post_state->layout(), {"S2"});
                    fid.add(fidelity(expected, out_s2) - 1.0);
                }
            }
            prob.add(-std::abs(success - 0.5));
        }
        out.push_back(prob.result());
        out.push_back(fid.result());
    }
    {
        CheckAccumulator choi("choi_closed_form", tol.identity);
        CheckAccumulator wb("wb_map", tol.identity);
        const ComplexMatrix w = make_gate(GateKind::WB);
        for (int k = 0; k <= 10; ++k) {
            const double q = k / 10.0;
            const ComplexVector j =
                choi_state(rotation_r(q).adjoint()).amplitudes();
            const ComplexVector closed =
                std::sqrt(1.0 - q) * bell_vector(BellLabel::PhiPlus) +
                Complex(0.0, std::sqrt(q)) * bell_vector(BellLabel::PsiPlus);
            choi.add(-(j - closed).norm());
            const ComplexVector target =
                tensor(ComplexVector(rotation_r(q) * basis_vector(2, 0)),
                       basis_vector(2, 0));
            wb.add(-(w * j - target).norm());
        }
        out.push_back(choi.result());
        out.push_back(wb.result());
    }
    {
        CheckAccumulator honest("rewinding_honest", tol.rewinding);
        CheckAccumulator top("rewinding_top_eigenvalue", 1e-9);
        for (int k = 0; k <= 10; ++k) {
            const ToyVerifier v = make_toy_verifier(0.5 + 0.05 * k);
            const RewindingInstance inst = honest_rewinding_instance(v);
            honest.add(-rewinding_residual(inst.delta, inst.pi, inst.omega));
            const ComplexMatrix dpd = inst.delta * inst.pi * inst.delta;
            top.add(-std::abs(max_eigpair(0.5 * (dpd + dpd.adjoint())).value - 0.5));
        }
        out.push_back(honest.result());
        out.push_back(top.result());
    }
    {
        RngStream rng = root.split(11);
        CheckAccumulator c("rewinding_synthetic", tol.rewinding);
        for (std::size_t k = 0; k < instances; ++k) {
            const RewindingInstance inst = jordan_instance(4 + k % 13, rng);
            c.add(-rewinding_residual(inst.delta, inst.pi, inst.omega));
        }
        out.push_back(c.result());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

void protocol_checks(const ExperimentConfig &c, const ProtocolState &proof,
                     const BranchBreakdown &exact,
                     std::vector<CheckResult> &checks) {
    const Tolerances &t = c.tolerances;
    {
        CheckAccumulator a("branch_sum", t.branch_sum);
        a.add(-std::abs(exact.total() - 1.0));
        checks.push_back(a.result());
    }
    {
        CheckAccumulator a("verifier_marginal", 0.0);
        a.add(kMarginalTol - marginal_deviation(proof));
        checks.push_back(a.result());
    }
    if (c.experiment == Experiment::Completeness) {
        CheckAccumulator a("perfect_completeness", t.completeness);
        a.add(-std::abs(1.0 - exact.accept()));
        checks.push_back(a.result());
        return;
    }
    {
        // Strictly positive rejection: a zero margin fails.
        CheckResult r{"reject_positive", 1, exact.reject(), 0.0,
                      exact.reject() > 0.0};
        checks.push_back(r);
    }
    if (const auto cf = swap_branch_reject_closed_form(proof)) {
        CheckAccumulator a("swap_branch_closed_form", t.closed_form);
        a.add(-std::abs(2.0 * exact.b1_swap_reject - *cf));
        checks.push_back(a.result());
    }
}

void run_protocol(const ExperimentConfig &c, ExperimentReport &report) {
    const ToyVerifier v =
        make_toy_verifier(c.verifier.p, c.verifier.p_qubits, c.verifier.a_qubits);
    validate(v);
    // A custom state that breaks the marginal constraint is a config error.
    const ProtocolState proof = [&] {
        try {
            return c.experiment == Experiment::Completeness
                       ? honest_proof(v, c.l)
                       : cheating_proof(build_strategy(c), v, c.l);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("strategy: ") + e.what());
        }
    }();

    const BranchBreakdown exact = verifier_w_exact(proof, v);
    protocol_checks(c, proof, exact, report.checks);

    if (c.mode == Mode::Exact) {
        report.accept_probability = exact.accept();
        report.reject_probability = exact.reject();
        report.breakdown = exact;
        return;
    }

    const RunSampler sampler(proof, v);
    const RngStream root(c.seed);
    std::vector<RunOutcome> outcomes(c.trials);
    const std::size_t workers = std::min(c.workers, c.trials);
    const auto work = [&](std::size_t w) {
        const std::size_t begin = c.trials * w / workers;
        const std::size_t end = c.trials * (w + 1) / workers;
        for (std::size_t t = begin; t < end; ++t) {
            RngStream rng = root.split(t);
            outcomes[t] = sampler.sample(rng);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    BranchBreakdown empirical;
    std::size_t accepted = 0;
    const double unit = 1.0 / static_cast<double>(c.trials);
    report.rows.reserve(c.trials);
    for (std::size_t t = 0; t < c.trials; ++t) {
        const RunOutcome &o = outcomes[t];
        accepted += o.accept ? 1 : 0;
        switch (o.branch) {
        case RunBranch::B0PostselFail:
            empirical.b0_postsel_fail += unit;
            break;
        case RunBranch::B0Measured:
            (o.accept ? empirical.b0_accept : empirical.b0_zero_reject) += unit;
            break;
        case RunBranch::B1Swap:
            (o.accept ? empirical.b1_swap_accept : empirical.b1_swap_reject) += unit;
            break;
        }
        report.rows.push_back({t, o.coin, o.pair_first + 1, o.pair_second + 1,
                               o.bell ? bell_name(*o.bell) : "-", o.accept});
    }
    const double freq = static_cast<double>(accepted) * unit;
    report.accept_probability = freq;
    report.reject_probability = 1.0 - freq;
    report.breakdown = empirical;
    report.exact_accept_probability = exact.accept();

    const double p = std::clamp(exact.accept(), 0.0, 1.0);
    const double bound =
        c.tolerances.sigma * std::sqrt(p * (1.0 - p) * unit);
    CheckAccumulator a("sampled_vs_exact", c.tolerances.branch_sum);
    a.add(bound - std::abs(freq - exact.accept()));
    report.checks.push_back(a.result());
}

void run_swap_bench(const ExperimentConfig &c, ExperimentReport &report) {
    RngStream rng = RngStream(c.seed).split(0);
    CheckAccumulator formula("swap_test_formula", c.tolerances.identity);
    for (std::size_t k = 0; k < c.trials; ++k) {
        const std::size_t n = 1 + k % 2;
        const std::size_t d = std::size_t{1} << n;
        const ComplexMatrix rho = random::density(d, rng, 1 + rng.below(d));
        const ComplexMatrix sigma = random::density(d, rng, 1 + rng.below(d));
        const DensityOperator joint = DensityOperator::trusted(
            RegisterLayout{{"R1", n}, {"R2", n}}, tensor(rho, sigma));
        formula.add(-std::abs(swap_test(joint, {"R1"}, {"R2"}) -
                              swap_test_closed_form(rho, sigma)));
    }
    report.checks.push_back(formula.result());

    const RegisterLayout pair{{"R1", 1}, {"R2", 1}};
    CheckAccumulator identical("swap_identical_pure", c.tolerances.identity);
    CheckAccumulator orthogonal("swap_orthogonal_pure", c.tolerances.identity);
    CheckAccumulator mixed("swap_maximally_mixed", c.tolerances.identity);
    for (std::size_t k = 0; k < 16; ++k) {
        const ComplexVector psi = random::pure_state(2, rng);
        ComplexVector perp(2);
        perp << -std::conj(psi(1)), std::conj(psi(0));
        const StateVector same(pair, tensor(psi, psi));
        const StateVector orth(pair, tensor(psi, perp));
        identical.add(-std::abs(swap_test(DensityOperator(same), {"R1"}, {"R2"}) - 1.0));
        orthogonal.add(
            -std::abs(swap_test(DensityOperator(orth), {"R1"}, {"R2"}) - 0.5));
    }
    mixed.add(-std::abs(
        swap_test(DensityOperator::maximally_mixed(pair), {"R1"}, {"R2"}) - 0.75));
    report.checks.push_back(identical.result());
    report.checks.push_back(orthogonal.result());
    report.checks.push_back(mixed.result());
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig &config) {
    validate_config(config);
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.config = config;
    switch (config.experiment) {
    case Experiment::Completeness:
    case Experiment::Soundness:
        run_protocol(config, report);
        break;
    case Experiment::Lemmas:
        report.checks = lemma_suite(config.instances, config.seed, config.tolerances);
        break;
    case Experiment::SwapBench:
        run_swap_bench(config, report);
        break;
    }
    report.wall_time_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    return report;
}

// ---------------------------------------------------------------------------
// Output

namespace {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ordered_json breakdown_json(const BranchBreakdown &b) {
    return {{"b0_postsel_fail", b.b0_postsel_fail},
            {"b0_zero_reject", b.b0_zero_reject},
            {"b0_accept", b.b0_accept},
            {"b1_swap_accept", b.b1_swap_accept},
            {"b1_swap_reject", b.b1_swap_reject}};
}

std::string emit_json(const ExperimentReport &r, const EmitOptions &o) {
    ordered_json j;
    j["version"] = r.version;
    ordered_json config = config_to_json(r.config);
    config.erase("workers");  // execution detail; reports must not depend on it
    j["config"] = config;
    j["passed"] = r.passed();
    if (r.accept_probability) {
        j["accept_probability"] = *r.accept_probability;
        j["reject_probability"] = *r.reject_probability;
    }
    if (r.exact_accept_probability) {
        j["exact_accept_probability"] = *r.exact_accept_probability;
        j["trials"] = r.rows.size();
    }
    if (r.breakdown) {
        j["breakdown"] = breakdown_json(*r.breakdown);
    }
    ordered_json checks = ordered_json::array();
    for (const auto &c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"count", c.count},
                          {"worst_margin", c.worst_margin},
                          {"tolerance", c.tolerance},
                          {"passed", c.passed}});
    }
    j["checks"] = checks;
    if (o.include_timing) {
        j["wall_time_ms"] = r.wall_time_ms;
    }
    return j.dump(2) + "\n";
}

std::string emit_csv(const ExperimentReport &r, const EmitOptions &o) {
    std::ostringstream out;
    if (r.config.mode == Mode::Sampled && !r.rows.empty()) {
        out << "trial,b,pair_i,pair_j,postsel,verdict\n";
        for (const auto &row : r.rows) {
            out << row.trial << ',' << row.b << ',' << row.pair_i << ','
                << row.pair_j << ',' << row.postsel << ','
                << (row.accept ? "accept" : "reject") << '\n';
        }
        return out.str();
    }
    out << "metric,value\n";
    out << "version," << r.version << '\n';
    out << "experiment," << experiment_name(r.config.experiment) << '\n';
    out << "seed," << r.config.seed << '\n';
    out << "passed," << (r.passed() ? "true" : "false") << '\n';
    if (r.accept_probability) {
        out << "accept_probability," << format_real(*r.accept_probability) << '\n';
        out << "reject_probability," << format_real(*r.reject_probability) << '\n';
    }
    if (r.breakdown) {
        const ordered_json b = breakdown_json(*r.breakdown);
        for (const auto &item : b.items()) {
            out << "breakdown." << item.key() << ','
                << format_real(item.value().get<double>()) << '\n';
        }
    }
    for (const auto &c : r.checks) {
        out << "check." << c.name << ".count," << c.count << '\n';
        out << "check." << c.name << ".worst_margin," << format_real(c.worst_margin)
            << '\n';
        out << "check." << c.name << ".passed," << (c.passed ? "true" : "false")
            << '\n';
    }
    if (o.include_timing) {
        out << "wall_time_ms," << format_real(r.wall_time_ms) << '\n';
    }
    return out.str();
}

}  // namespace

std::string emit_report(const ExperimentReport &report, const EmitOptions &options) {
    return options.format == ReportFormat::Json ? emit_json(report, options)
                                                : emit_csv(report, options);
}

void write_file(const std::string &path, const std::string &bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << bytes;
    f.flush();
    if (!f) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

}  // namespace onesided
