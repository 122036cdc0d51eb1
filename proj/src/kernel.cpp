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

#include "onesided/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace onesided {

namespace {

// Full-index offsets for every assignment of the given qubit positions,
// first position most significant.
std::vector<std::size_t> index_offsets(std::size_t num_qubits,
                                       const std::vector<std::size_t> &positions) {
    const std::size_t n = positions.size();
    std::vector<std::size_t> off(std::size_t{1} << n, 0);
    for (std::size_t idx = 0; idx < off.size(); ++idx) {
        std::size_t full = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if ((idx >> (n - 1 - k)) & 1U) {
                full |= std::size_t{1} << (num_qubits - 1 - positions[k]);
            }
        }
        off[idx] = full;
    }
    return off;
}

std::vector<std::size_t> other_positions(std::size_t num_qubits,
                                         const std::vector<std::size_t> &targets) {
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if (std::find(targets.begin(), targets.end(), q) == targets.end()) {
            rest.push_back(q);
        }
    }
    return rest;
}

void require_op_shape(const ComplexMatrix &op, std::size_t target_qubits) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << target_qubits);
    if (op.rows() != dim || op.cols() != dim) {
        throw std::invalid_argument(
            "operator of shape " + std::to_string(op.rows()) + "x" +
            std::to_string(op.cols()) + " does not match " +
            std::to_string(target_qubits) + " target qubit(s)");
    }
}

template <class State>
State make_post_state(const State &pre, const ComplexMatrix &unnormalized,
                      double prob);

template <>
StateVector make_post_state(const StateVector &pre,
                            const ComplexMatrix &unnormalized, double prob) {
    ComplexVector v = unnormalized.col(0) / std::sqrt(prob);
    v.normalize();
    return StateVector(pre.layout(), std::move(v));
}

template <>
DensityOperator make_post_state(const DensityOperator &pre,
                                const ComplexMatrix &unnormalized, double prob) {
    ComplexMatrix m = unnormalized / prob;
    m = 0.5 * (m + m.adjoint());
    m /= m.trace().real();
    return DensityOperator::trusted(pre.layout(), std::move(m));
}

ComplexMatrix as_matrix(const StateVector &s) { return s.amplitudes(); }
ComplexMatrix as_matrix(const DensityOperator &s) { return s.matrix(); }

template <class State>
std::vector<MeasurementRecord<State>>
measure_all_impl(const State &state, const ProjectiveMeasurement &m) {
    m.validate(state.layout());
    std::vector<MeasurementRecord<State>> out;
    out.reserve(m.projectors.size());
    const ComplexMatrix base = as_matrix(state);
    for (const auto &p : m.projectors) {
        MeasurementRecord<State> rec{p.label, 0.0, std::nullopt};
        ComplexMatrix projected;
        double prob = 0.0;
        if constexpr (std::is_same_v<State, StateVector>) {
            projected = act_left(base, state.layout(), p.projector, m.targets);
            prob = projected.col(0).squaredNorm();
        } else {
            projected = sandwich(base, state.layout(), p.projector, m.targets);
            prob = projected.trace().real();
        }
        if (prob >= kNegligibleProbability) {
            rec.probability = std::min(prob, 1.0);
            rec.post_state = make_post_state(state, projected, prob);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

template <class State>
MeasurementRecord<State> measure_sample_impl(const State &state,
                                             const ProjectiveMeasurement &m,
                                             RngStream &rng) {
    auto all = measure_all_impl(state, m);
    std::vector<double> probs;
    probs.reserve(all.size());
    for (const auto &r : all) {
        probs.push_back(r.probability);
    }
    return std::move(all[sample_index(probs, rng)]);
}

}  // namespace

ComplexMatrix act_left(const ComplexMatrix &m, const RegisterLayout &layout,
                       const ComplexMatrix &op, const RegisterNames &targets) {
    const std::size_t n = layout.total_qubits();
    if (static_cast<std::size_t>(m.rows()) != layout.dimension()) {
        throw std::invalid_argument("act_left: operand does not match layout");
    }
    const auto tq = layout.qubits_of(targets);
    require_op_shape(op, tq.size());
    const auto toff = index_offsets(n, tq);
    const auto roff = index_offsets(n, other_positions(n, tq));

    const auto tdim = static_cast<Eigen::Index>(toff.size());
    ComplexMatrix out(m.rows(), m.cols());
    ComplexMatrix gathered(tdim, m.cols());
    for (std::size_t r : roff) {
        for (Eigen::Index t = 0; t < tdim; ++t) {
            gathered.row(t) = m.row(static_cast<Eigen::Index>(r + toff[t]));
        }
        const ComplexMatrix mapped = op * gathered;
        for (Eigen::Index t = 0; t < tdim; ++t) {
            out.row(static_cast<Eigen::Index>(r + toff[t])) = mapped.row(t);
        }
    }
    return out;
}

ComplexMatrix sandwich(const ComplexMatrix &m, const RegisterLayout &layout,
                       const ComplexMatrix &op, const RegisterNames &targets) {
    // op m op^dag = (op (op m)^dag)^dag
    const ComplexMatrix left = act_left(m, layout, op, targets);
    return act_left(left.adjoint(), layout, op, targets).adjoint();
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const RegisterLayout &layout,
                            const RegisterNames &keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set is empty");
    }
    const auto kq = layout.qubits_of(keep);
    return partial_trace_qubits(m, layout.total_qubits(), kq);
}

StateVector apply_unitary(const StateVector &state, const ComplexMatrix &u,
                          const RegisterNames &targets) {
    require_op_shape(u, state.layout().qubit_count(targets));
    if (!is_unitary(u)) {
        throw std::invalid_argument("apply_unitary: operator is not unitary");
    }
    ComplexVector v =
        act_left(state.amplitudes(), state.layout(), u, targets).col(0);
    return StateVector(state.layout(), std::move(v));
}

DensityOperator apply_unitary(const DensityOperator &state,
                              const ComplexMatrix &u,
                              const RegisterNames &targets) {
    require_op_shape(u, state.layout().qubit_count(targets));
    if (!is_unitary(u)) {
        throw std::invalid_argument("apply_unitary: operator is not unitary");
    }
    ComplexMatrix m = sandwich(state.matrix(), state.layout(), u, targets);
    return DensityOperator::trusted(state.layout(), std::move(m));
}

DensityOperator partial_trace(const DensityOperator &rho,
                              const RegisterNames &keep) {
    ComplexMatrix m = partial_trace(rho.matrix(), rho.layout(), keep);
    return DensityOperator::trusted(rho.layout().select(keep), std::move(m));
}

DensityOperator append_zero_register(const DensityOperator &rho, Register reg) {
    const std::size_t dim = std::size_t{1} << reg.qubits;
    RegisterLayout fresh{std::move(reg)};
    return rho.tensor(DensityOperator::trusted(
        std::move(fresh), projector_onto(basis_vector(dim, 0))));
}

void ProjectiveMeasurement::validate(const RegisterLayout &layout) const {
    if (projectors.empty()) {
        throw InvalidMeasurement("measurement has no outcomes");
    }
    std::size_t qubits = 0;
    try {
        qubits = layout.qubit_count(targets);
        (void)layout.qubits_of(targets);
    } catch (const std::invalid_argument &e) {
        throw InvalidMeasurement(std::string("measurement targets: ") + e.what());
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits);
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        const auto &p = projectors[i].projector;
        if (p.rows() != dim || p.cols() != dim) {
            throw InvalidMeasurement("projector '" + projectors[i].label +
                                     "' has wrong dimension");
        }
        if (!is_projector(p)) {
            throw InvalidMeasurement("operator '" + projectors[i].label +
                                     "' is not a projector");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if ((p * projectors[j].projector).cwiseAbs().maxCoeff() >
                kStructureTol) {
                throw InvalidMeasurement("projectors '" + projectors[i].label +
                                         "' and '" + projectors[j].label +
                                         "' are not orthogonal");
            }
        }
        sum += p;
    }
    if ((sum - identity(static_cast<std::size_t>(dim))).cwiseAbs().maxCoeff() >
        kStructureTol) {
        throw InvalidMeasurement("projectors do not sum to the identity");
    }
}

ProjectiveMeasurement standard_basis_measurement(const RegisterLayout &layout,
                                                 const RegisterNames &targets) {
    const std::size_t k = layout.qubit_count(targets);
    const std::size_t dim = std::size_t{1} << k;
    ProjectiveMeasurement m;
    m.targets = targets;
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::string label(k, '0');
        for (std::size_t b = 0; b < k; ++b) {
            if ((idx >> (k - 1 - b)) & 1U) {
                label[b] = '1';
            }
        }
        m.projectors.push_back({label, projector_onto(basis_vector(dim, idx))});
    }
    return m;
}

std::vector<MeasurementRecord<StateVector>>
measure_all(const StateVector &state, const ProjectiveMeasurement &m) {
    return measure_all_impl(state, m);
}

std::vector<MeasurementRecord<DensityOperator>>
measure_all(const DensityOperator &state, const ProjectiveMeasurement &m) {
    return measure_all_impl(state, m);
}

MeasurementRecord<StateVector> measure_sample(const StateVector &state,
                                              const ProjectiveMeasurement &m,
                                              RngStream &rng) {
    return measure_sample_impl(state, m, rng);
}

MeasurementRecord<DensityOperator> measure_sample(const DensityOperator &state,
                                                  const ProjectiveMeasurement &m,
                                                  RngStream &rng) {
    return measure_sample_impl(state, m, rng);
}

std::size_t sample_index(const std::vector<double> &probs, RngStream &rng) {
    if (probs.empty()) {
        throw std::invalid_argument("sample_index: empty distribution");
    }
    double total = 0.0;
    for (double p : probs) {
        total += p;
    }
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0) {
            last_positive = i;
        }
        acc += probs[i];
        if (u < acc && probs[i] > 0.0) {
            return i;
        }
    }
    return last_positive;
}

DensityOperator select_pairs(const DensityOperator &rho,
                             const std::vector<RegisterPair> &pairs,
                             std::size_t first, std::size_t second) {
    if (pairs.size() < 2) {
        throw std::invalid_argument("symmetrize_pairs: need at least two pairs");
    }
    if (first >= pairs.size() || second >= pairs.size() || first == second) {
        throw std::invalid_argument("select_pairs: invalid pair indices");
    }
    const auto &layout = rho.layout();
    const std::size_t a = layout.at(pairs[0].first).qubits;
    const std::size_t b = layout.at(pairs[0].second).qubits;
    RegisterNames in_pairs;
    for (const auto &[x, y] : pairs) {
        if (layout.at(x).qubits != a || layout.at(y).qubits != b) {
            throw std::invalid_argument(
                "symmetrize_pairs: pairs are not structurally identical");
        }
        in_pairs.push_back(x);
        in_pairs.push_back(y);
    }
    RegisterNames keep = layout.complement(in_pairs);
    RegisterNames slots = keep;
    for (auto [idx, slot] : {std::pair{first, 0UL}, std::pair{second, 1UL}}) {
        keep.push_back(pairs[idx].first);
        keep.push_back(pairs[idx].second);
        slots.push_back(pairs[slot].first);
        slots.push_back(pairs[slot].second);
    }
    ComplexMatrix reduced = partial_trace(rho.matrix(), layout, keep);
    return DensityOperator::trusted(layout.select(slots), std::move(reduced));
}

DensityOperator symmetrize_pairs(const DensityOperator &rho,
                                 const std::vector<RegisterPair> &pairs) {
    if (pairs.size() < 2) {
        throw std::invalid_argument("symmetrize_pairs: need at least two pairs");
    }
    std::optional<RegisterLayout> layout;
    ComplexMatrix acc;
    std::size_t count = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            if (i == j) {
                continue;
            }
            DensityOperator part = select_pairs(rho, pairs, i, j);
            if (!layout) {
                layout = part.layout();
                acc = part.matrix();
            } else {
                acc += part.matrix();
            }
            ++count;
        }
    }
    acc /= static_cast<double>(count);
    return DensityOperator::trusted(*layout, std::move(acc));
}

PairDraw symmetrize_pairs(const DensityOperator &rho,
                          const std::vector<RegisterPair> &pairs,
                          RngStream &rng) {
    if (pairs.size() < 2) {
        throw std::invalid_argument("symmetrize_pairs: need at least two pairs");
    }
    const std::size_t l = pairs.size();
    const std::size_t first = rng.below(l);
    std::size_t second = rng.below(l - 1);
    if (second >= first) {
        ++second;
    }
    return {first, second, select_pairs(rho, pairs, first, second)};
}

}  // namespace onesided
