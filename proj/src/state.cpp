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

#include "onesided/state.hpp"

#include <cmath>
#include <vector>

namespace onesided {

namespace {

void check_shape(const RegisterLayout &layout, Eigen::Index rows,
                 Eigen::Index cols, const char *what) {
    const auto dim = static_cast<Eigen::Index>(layout.dimension());
    if (rows != dim || cols != dim) {
        throw InvalidState(std::string(what) + ": shape " +
                           std::to_string(rows) + "x" + std::to_string(cols) +
                           " does not match layout dimension " +
                           std::to_string(dim));
    }
}

void check_hermitian_unit_trace(const ComplexMatrix &m) {
    if (!is_hermitian(m)) {
        throw InvalidState("density operator is not Hermitian");
    }
    const Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0)) > kStructureTol) {
        throw InvalidState("density operator trace " +
                           std::to_string(tr.real()) + " != 1");
    }
}

}  // namespace

StateVector::StateVector(RegisterLayout layout, ComplexVector amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amps_.size()) != layout_.dimension()) {
        throw InvalidState("state vector length " +
                           std::to_string(amps_.size()) +
                           " does not match layout dimension " +
                           std::to_string(layout_.dimension()));
    }
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > kStructureTol) {
        throw InvalidState("state vector norm " + std::to_string(norm) +
                           " != 1");
    }
}

StateVector StateVector::basis(RegisterLayout layout, std::size_t index) {
    const std::size_t dim = layout.dimension();
    return StateVector(std::move(layout), basis_vector(dim, index));
}

StateVector StateVector::zero(RegisterLayout layout) {
    return basis(std::move(layout), 0);
}

Complex StateVector::inner(const StateVector &other) const {
    if (other.amps_.size() != amps_.size()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    return amps_.dot(other.amps_);  // conjugates the left operand
}

StateVector StateVector::tensor(const StateVector &other) const {
    auto regs = layout_.registers();
    for (const auto &r : other.layout_.registers()) {
        regs.push_back(r);
    }
    return StateVector(RegisterLayout(std::move(regs)),
                       onesided::tensor(amps_, other.amps_));
}

DensityOperator::DensityOperator(RegisterLayout layout, ComplexMatrix matrix)
    : layout_(std::move(layout)), mat_(std::move(matrix)) {
    check_shape(layout_, mat_.rows(), mat_.cols(), "DensityOperator");
    check_hermitian_unit_trace(mat_);
    const Spectrum s = hermitian_spectrum(mat_);
    const double smallest = s.eigenvalues[s.eigenvalues.size() - 1];
    if (smallest < -kStructureTol) {
        throw InvalidState("density operator has negative eigenvalue " +
                           std::to_string(smallest));
    }
}

DensityOperator::DensityOperator(RegisterLayout layout, ComplexMatrix matrix,
                                 Trusted)
    : layout_(std::move(layout)), mat_(std::move(matrix)) {
    check_shape(layout_, mat_.rows(), mat_.cols(), "DensityOperator");
    check_hermitian_unit_trace(mat_);
}

DensityOperator::DensityOperator(const StateVector &pure)
    : layout_(pure.layout()), mat_(pure.projector()) {}

DensityOperator DensityOperator::trusted(RegisterLayout layout,
                                         ComplexMatrix matrix) {
    return DensityOperator(std::move(layout), std::move(matrix), Trusted{});
}

DensityOperator DensityOperator::maximally_mixed(RegisterLayout layout) {
    const std::size_t dim = layout.dimension();
    return trusted(std::move(layout),
                   identity(dim) / static_cast<double>(dim));
}

double DensityOperator::purity() const {
    return (mat_ * mat_).trace().real();
}

DensityOperator DensityOperator::tensor(const DensityOperator &other) const {
    auto regs = layout_.registers();
    for (const auto &r : other.layout_.registers()) {
        regs.push_back(r);
    }
    return trusted(RegisterLayout(std::move(regs)),
                   onesided::tensor(mat_, other.mat_));
}

DensityOperator DensityOperator::relabelled(RegisterLayout layout) const {
    if (layout.dimension() != layout_.dimension()) {
        throw InvalidState("relabelled: dimension mismatch");
    }
    return trusted(std::move(layout), mat_);
}

}  // namespace onesided
