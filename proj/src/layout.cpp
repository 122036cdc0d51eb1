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

#include "onesided/layout.hpp"

#include <algorithm>
#include <set>

namespace onesided {

RegisterLayout::RegisterLayout(std::initializer_list<Register> regs)
    : RegisterLayout(std::vector<Register>(regs)) {}

RegisterLayout::RegisterLayout(std::vector<Register> regs)
    : regs_(std::move(regs)) {
    std::set<std::string> seen;
    for (const auto &r : regs_) {
        if (r.name.empty()) {
            throw std::invalid_argument("register name must not be empty");
        }
        if (r.qubits == 0) {
            throw std::invalid_argument("register '" + r.name +
                                        "' has zero qubits");
        }
        if (!seen.insert(r.name).second) {
            throw std::invalid_argument("duplicate register '" + r.name + "'");
        }
        total_ += r.qubits;
    }
    if (total_ > 24) {
        throw std::invalid_argument("layout exceeds 24 qubits");
    }
}

bool RegisterLayout::contains(const std::string &name) const {
    return std::any_of(regs_.begin(), regs_.end(),
                       [&](const Register &r) { return r.name == name; });
}

const Register &RegisterLayout::at(const std::string &name) const {
    for (const auto &r : regs_) {
        if (r.name == name) {
            return r;
        }
    }
    throw UnknownRegister(name);
}

std::size_t RegisterLayout::offset(const std::string &name) const {
    std::size_t pos = 0;
    for (const auto &r : regs_) {
        if (r.name == name) {
            return pos;
        }
        pos += r.qubits;
    }
    throw UnknownRegister(name);
}

std::vector<std::size_t>
RegisterLayout::qubits_of(std::span<const std::string> names) const {
    std::vector<std::size_t> out;
    std::set<std::string> seen;
    for (const auto &n : names) {
        if (!seen.insert(n).second) {
            throw std::invalid_argument("register '" + n + "' listed twice");
        }
        const std::size_t off = offset(n);
        for (std::size_t k = 0; k < at(n).qubits; ++k) {
            out.push_back(off + k);
        }
    }
    return out;
}

std::size_t RegisterLayout::qubit_count(std::span<const std::string> names) const {
    std::size_t n = 0;
    for (const auto &name : names) {
        n += at(name).qubits;
    }
    return n;
}

RegisterLayout RegisterLayout::select(std::span<const std::string> names) const {
    std::vector<Register> out;
    for (const auto &n : names) {
        out.push_back(at(n));
    }
    return RegisterLayout(std::move(out));
}

std::vector<std::string>
RegisterLayout::complement(std::span<const std::string> names) const {
    for (const auto &n : names) {
        (void)at(n);
    }
    std::vector<std::string> out;
    for (const auto &r : regs_) {
        if (std::find(names.begin(), names.end(), r.name) == names.end()) {
            out.push_back(r.name);
        }
    }
    return out;
}

RegisterLayout RegisterLayout::appended(Register reg) const {
    auto regs = regs_;
    regs.push_back(std::move(reg));
    return RegisterLayout(std::move(regs));
}

RegisterLayout RegisterLayout::renamed(const std::string &from,
                                       const std::string &to) const {
    auto regs = regs_;
    bool found = false;
    for (auto &r : regs) {
        if (r.name == from) {
            r.name = to;
            found = true;
        }
    }
    if (!found) {
        throw UnknownRegister(from);
    }
    return RegisterLayout(std::move(regs));
}

}  // namespace onesided
