// Copyright 2026 The qsbo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsbo/arithmetic.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace qsbo {

const Register &RegisterLayout::allocate(const std::string &name, unsigned count) {
    if (contains(name)) {
        throw std::invalid_argument("RegisterLayout: duplicate register '" + name + "'");
    }
    Register reg(count);
    for (unsigned i = 0; i < count; ++i) {
        reg[i] = width_ + i;
    }
    width_ += count;
    entries_.emplace_back(name, std::move(reg));
    return entries_.back().second;
}

const Register &RegisterLayout::operator[](const std::string &name) const {
    for (const auto &[key, reg] : entries_) {
        if (key == name) {
            return reg;
        }
    }
    throw std::out_of_range("RegisterLayout: no register '" + name + "'");
}

Qubit RegisterLayout::single(const std::string &name) const {
    const auto &reg = (*this)[name];
    if (reg.size() != 1) {
        throw std::invalid_argument("RegisterLayout: register '" + name + "' is not a single qubit");
    }
    return reg.front();
}

bool RegisterLayout::contains(const std::string &name) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto &e) { return e.first == name; });
}

std::uint64_t register_value(BasisIndex index, std::span<const Qubit> reg) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        v |= ((index >> reg[i]) & 1U) << i;
    }
    return v;
}

BasisIndex with_register_value(BasisIndex index, std::span<const Qubit> reg, std::uint64_t value) {
    for (std::size_t i = 0; i < reg.size(); ++i) {
        const BasisIndex bit = BasisIndex{1} << reg[i];
        index = ((value >> i) & 1U) ? (index | bit) : (index & ~bit);
    }
    return index;
}

namespace {

void require_disjoint(std::initializer_list<std::span<const Qubit>> regs) {
    std::set<Qubit> seen;
    for (const auto &r : regs) {
        for (Qubit q : r) {
            if (!seen.insert(q).second) {
                throw std::invalid_argument("overlapping registers at qubit " + std::to_string(q));
            }
        }
    }
}

Gate controlled(Gate g, const std::vector<Control> &extra) {
    g.controls.insert(g.controls.begin(), extra.begin(), extra.end());
    return g;
}

Gate cx(Qubit c, Qubit t) { return gates::cx(c, t); }
Gate ccx(Qubit c0, Qubit c1, Qubit t) { return gates::mcx({{c0, true}, {c1, true}}, t); }

void cuccaro(Circuit &circuit, const Register &a, const Register &b, std::optional<Qubit> carry,
             Qubit ancilla, const std::vector<Control> &extra) {
    if (a.empty() || a.size() != b.size()) {
        throw std::invalid_argument("adder: registers must be non-empty and of equal width");
    }
    const Register anc{ancilla};
    const Register car = carry ? Register{*carry} : Register{};
    std::vector<Qubit> ctrl;
    for (const auto &c : extra) {
        ctrl.push_back(c.qubit);
    }
    require_disjoint({a, b, anc, car, ctrl});

    const std::size_t n = a.size();
    auto emit = [&](Gate g) { circuit.add(controlled(std::move(g), extra)); };
    // MAJ(c, b, a) and UMA(c, b, a) with c the incoming carry wire.
    auto maj = [&](Qubit c, Qubit bq, Qubit aq) {
        emit(cx(aq, bq));
        emit(cx(aq, c));
        emit(ccx(c, bq, aq));
    };
    auto uma = [&](Qubit c, Qubit bq, Qubit aq) {
        emit(ccx(c, bq, aq));
        emit(cx(aq, c));
        emit(cx(c, bq));
    };
    maj(ancilla, b[0], a[0]);
    for (std::size_t i = 1; i < n; ++i) {
        maj(a[i - 1], b[i], a[i]);
    }
    if (carry) {
        emit(cx(a[n - 1], *carry));
    }
    for (std::size_t i = n; i-- > 1;) {
        uma(a[i - 1], b[i], a[i]);
    }
    uma(ancilla, b[0], a[0]);
}

}  // namespace

void add_inplace(Circuit &circuit, const Register &a, const Register &b,
                 std::optional<Qubit> carry, Qubit ancilla) {
    cuccaro(circuit, a, b, carry, ancilla, {});
}

void controlled_add_inplace(Circuit &circuit, Control control, const Register &a,
                            const Register &b, std::optional<Qubit> carry, Qubit ancilla) {
    cuccaro(circuit, a, b, carry, ancilla, {control});
}

void increment(Circuit &circuit, const Register &reg, std::vector<Control> controls) {
    for (std::size_t i = reg.size(); i-- > 0;) {
        std::vector<Control> c = controls;
        for (std::size_t j = 0; j < i; ++j) {
            c.push_back({reg[j], true});
        }
        circuit.add(gates::mcx(std::move(c), reg[i]));
    }
}

void twos_complement_inplace(Circuit &circuit, const Register &b, Qubit carry) {
    const Register car{carry};
    require_disjoint({b, car});
    for (Qubit q : b) {
        circuit.add(gates::x(q));
    }
    Register wide = b;
    wide.push_back(carry);
    increment(circuit, wide);
}

void compare_geq(Circuit &circuit, const Register &a, const Register &b, Qubit result,
                 std::span<const Qubit> ancillas) {
    if (ancillas.empty()) {
        throw std::invalid_argument("insufficient ancillas: compare_geq needs 1");
    }
    if (a.empty() || a.size() != b.size()) {
        throw std::invalid_argument("compare_geq: registers must be non-empty and of equal width");
    }
    const Qubit anc = ancillas.front();
    const Register res{result};
    const Register ancr{anc};
    require_disjoint({a, b, res, ancr});

    // (b, result) <- 2^n - b, then add a: the top bit is [a + 2^n - b >= 2^n].
    twos_complement_inplace(circuit, b, result);
    add_inplace(circuit, a, b, result, anc);

    // Restore b from (2^n - b + a) mod 2^n without touching result.
    Circuit undo(circuit.num_qubits());
    add_inplace(undo, a, b, std::nullopt, anc);
    circuit.append(undo.adjoint());
    Circuit inc(circuit.num_qubits());
    increment(inc, b);
    circuit.append(inc.adjoint());
    for (Qubit q : b) {
        circuit.add(gates::x(q));
    }
}

unsigned compare_leq_const_ancillas(unsigned n) noexcept { return n > 0 ? n - 1 : 0; }

void compare_leq_const(Circuit &circuit, const Register &a, std::uint64_t lambda, Qubit result,
                       std::span<const Qubit> ancillas) {
    const auto n = static_cast<unsigned>(a.size());
    if (n == 0 || n > 62) {
        throw std::invalid_argument("compare_leq_const: register width must be in [1, 62]");
    }
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    if (lambda > full) {
        throw std::out_of_range("compare_leq_const: lambda " + std::to_string(lambda) +
                                " out of range for " + std::to_string(n) + " bits");
    }
    const unsigned need = compare_leq_const_ancillas(n);
    if (ancillas.size() < need) {
        throw std::invalid_argument("insufficient ancillas: compare_leq_const needs " +
                                    std::to_string(need));
    }
    const Register res{result};
    const Register carries(ancillas.begin(), ancillas.begin() + need);
    require_disjoint({a, res, carries});

    if (lambda == full) {
        circuit.add(gates::x(result));
        return;
    }
    // Carry chain of a + K with K = 2^n - (lambda + 1); the final carry is
    // [a >= lambda + 1].
    const std::uint64_t k = (std::uint64_t{1} << n) - (lambda + 1);
    auto carry_wire = [&](unsigned i) { return i < n ? carries[i - 1] : result; };

    Circuit chain(circuit.num_qubits());
    auto emit_carry = [&](Circuit &c, unsigned i) {
        // c_{i+1} = maj(a_i, K_i, c_i)
        const Qubit t = carry_wire(i + 1);
        const bool ki = ((k >> i) & 1U) != 0;
        if (i == 0) {
            if (ki) {
                c.add(gates::cx(a[0], t));
            }
            return;
        }
        const Qubit ci = carry_wire(i);
        if (ki) {
            c.add(gates::x(t));
            c.add(gates::mcx({{a[i], false}, {ci, false}}, t));
        } else {
            c.add(gates::mcx({{a[i], true}, {ci, true}}, t));
        }
    };
    for (unsigned i = 0; i + 1 < n; ++i) {
        emit_carry(chain, i);
    }
    circuit.append(chain);
    emit_carry(circuit, n - 1);
    circuit.add(gates::x(result));
    circuit.append(chain.adjoint());
}

unsigned sum_register_width(unsigned k, unsigned n) {
    if (k < 1 || n < 1 || n > 30) {
        throw std::invalid_argument("sum_register_width: need k >= 1 and n in [1, 30]");
    }
    const std::uint64_t max_sum = static_cast<std::uint64_t>(k) * ((std::uint64_t{1} << n) - 1);
    return static_cast<unsigned>(std::bit_width(max_sum));
}

namespace {

unsigned adder_width(unsigned i, unsigned n, unsigned s) {
    const std::uint64_t bound = static_cast<std::uint64_t>(i + 1) * ((std::uint64_t{1} << n) - 1);
    const auto w = static_cast<unsigned>(std::bit_width(bound));
    return std::min(s, std::max(n, w - 1));
}

}  // namespace

unsigned weighted_sum_ancillas(unsigned k, unsigned n) {
    const unsigned s = sum_register_width(k, n);
    unsigned need = 1;
    for (unsigned i = 0; i < k; ++i) {
        need = std::max(need, 1 + adder_width(i, n, s) - n);
    }
    return need;
}

void weighted_sum(Circuit &circuit, const Register &y, const std::vector<Register> &xs,
                  const Register &sum, std::span<const Qubit> ancillas) {
    const auto k = static_cast<unsigned>(y.size());
    if (k == 0 || xs.size() != k) {
        throw std::invalid_argument("weighted_sum: need one value register per selector qubit");
    }
    const auto n = static_cast<unsigned>(xs.front().size());
    for (const auto &x : xs) {
        if (x.size() != n) {
            throw std::invalid_argument("weighted_sum: value registers must share a width");
        }
    }
    const unsigned s = sum_register_width(k, n);
    if (sum.size() < s) {
        throw std::invalid_argument("sum register too narrow: need " + std::to_string(s) +
                                    " qubits, got " + std::to_string(sum.size()));
    }
    const unsigned need = weighted_sum_ancillas(k, n);
    if (ancillas.size() < need) {
        throw std::invalid_argument("insufficient ancillas: weighted_sum needs " +
                                    std::to_string(need));
    }
    const Qubit c0 = ancillas[0];
    for (unsigned i = 0; i < k; ++i) {
        const unsigned w = adder_width(i, n, s);
        Register a = xs[i];
        for (unsigned p = 0; p < w - n; ++p) {
            a.push_back(ancillas[1 + p]);
        }
        const Register b(sum.begin(), sum.begin() + w);
        const std::optional<Qubit> carry =
            w < sum.size() ? std::optional<Qubit>(sum[w]) : std::nullopt;
        controlled_add_inplace(circuit, {y[i], true}, a, b, carry, c0);
    }
}

}  // namespace qsbo
