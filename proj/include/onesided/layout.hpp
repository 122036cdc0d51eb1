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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace onesided {

/// Thrown when a register name is not part of a layout.
class UnknownRegister : public std::invalid_argument {
  public:
    explicit UnknownRegister(const std::string &name)
        : std::invalid_argument("unknown register '" + name + "'") {}
};

struct Register {
    std::string name;
    std::size_t qubits;

    bool operator==(const Register &) const = default;
};

/**
 * Ordered, uniquely named qubit registers. Registers occupy consecutive
 * qubit positions in declaration order; position 0 is the most significant
 * bit of a basis index.
 */
class RegisterLayout {
  public:
    RegisterLayout() = default;
    RegisterLayout(std::initializer_list<Register> regs);
    explicit RegisterLayout(std::vector<Register> regs);

    [[nodiscard]] const std::vector<Register> &registers() const {
        return regs_;
    }
    [[nodiscard]] std::size_t total_qubits() const { return total_; }
    [[nodiscard]] std::size_t dimension() const {
        return std::size_t{1} << total_;
    }
    [[nodiscard]] bool contains(const std::string &name) const;
    [[nodiscard]] const Register &at(const std::string &name) const;
    /// First qubit position of a register.
    [[nodiscard]] std::size_t offset(const std::string &name) const;
    /// Qubit positions of the named registers, concatenated in the given order.
    [[nodiscard]] std::vector<std::size_t>
    qubits_of(std::span<const std::string> names) const;
    [[nodiscard]] std::size_t qubit_count(std::span<const std::string> names) const;

    /// Layout restricted to `names`, in the order given.
    [[nodiscard]] RegisterLayout select(std::span<const std::string> names) const;
    /// Every register name not in `names`, in layout order.
    [[nodiscard]] std::vector<std::string>
    complement(std::span<const std::string> names) const;
    [[nodiscard]] RegisterLayout appended(Register reg) const;
    [[nodiscard]] RegisterLayout renamed(const std::string &from,
                                         const std::string &to) const;

    bool operator==(const RegisterLayout &) const = default;

  private:
    std::vector<Register> regs_;
    std::size_t total_ = 0;
};

}  // namespace onesided
