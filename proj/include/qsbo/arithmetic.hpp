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

/**
 * @file arithmetic.hpp
 * Reversible integer arithmetic on qubit registers. Registers are lists of
 * qubit indices, least significant bit first. Every builder appends gates
 * to an existing circuit and leaves its ancillas in |0>.
 */
#pragma once

#include "qsbo/statevector.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsbo {

using Register = std::vector<Qubit>;

/// Named, disjoint, contiguous qubit ranges allocated in order.
class RegisterLayout {
  public:
    /// Allocates `count` fresh qubits under `name` (count may be 0).
    const Register &allocate(const std::string &name, unsigned count);

    [[nodiscard]] const Register &operator[](const std::string &name) const;
    [[nodiscard]] Qubit single(const std::string &name) const;
    [[nodiscard]] bool contains(const std::string &name) const;
    [[nodiscard]] unsigned width() const noexcept { return width_; }
    [[nodiscard]] const std::vector<std::pair<std::string, Register>> &entries() const noexcept {
        return entries_;
    }

  private:
    std::vector<std::pair<std::string, Register>> entries_;
    unsigned width_ = 0;
};

/// Reads the integer held by `reg` in basis state `index`.
[[nodiscard]] std::uint64_t register_value(BasisIndex index, std::span<const Qubit> reg);
/// Sets the bits of `reg` in `index` to `value`.
[[nodiscard]] BasisIndex with_register_value(BasisIndex index, std::span<const Qubit> reg,
                                             std::uint64_t value);

/**
 * Cuccaro ripple-carry adder: b <- a + b. When `carry` is given, (b, carry)
 * receives the (n+1)-bit sum; otherwise the addition is modulo 2^n.
 * `ancilla` must be |0>.
 */
void add_inplace(Circuit &circuit, const Register &a, const Register &b,
                 std::optional<Qubit> carry, Qubit ancilla);

/// add_inplace with every gate conditioned on `control`.
void controlled_add_inplace(Circuit &circuit, Control control, const Register &a,
                            const Register &b, std::optional<Qubit> carry, Qubit ancilla);

/// reg <- reg + 1 mod 2^|reg|, optionally controlled. Needs no ancilla.
void increment(Circuit &circuit, const Register &reg, std::vector<Control> controls = {});

/// (b, carry) <- 2^n - b as an (n+1)-bit value. `carry` must be |0>.
void twos_complement_inplace(Circuit &circuit, const Register &b, Qubit carry);

/**
 * result ^= [a >= b]. Needs one ancilla; a and b are restored.
 * Throws std::invalid_argument("insufficient ancillas") otherwise.
 */
void compare_geq(Circuit &circuit, const Register &a, const Register &b, Qubit result,
                 std::span<const Qubit> ancillas);

/// Ancillas needed by compare_leq_const on an n-bit register.
[[nodiscard]] unsigned compare_leq_const_ancillas(unsigned n) noexcept;

/**
 * result ^= [a <= lambda] with 2^n - (lambda + 1) folded in classically.
 * Needs compare_leq_const_ancillas(n) ancillas, all restored.
 */
void compare_leq_const(Circuit &circuit, const Register &a, std::uint64_t lambda, Qubit result,
                       std::span<const Qubit> ancillas);

/// Bit width of the largest attainable sum k * (2^n - 1).
[[nodiscard]] unsigned sum_register_width(unsigned k, unsigned n);
/// Ancillas needed by weighted_sum for k registers of n qubits.
[[nodiscard]] unsigned weighted_sum_ancillas(unsigned k, unsigned n);

/**
 * sum += sum_i y_i * x_i using one controlled adder per term. The adder
 * width grows with the running bound so only the necessary bits are used.
 */
void weighted_sum(Circuit &circuit, const Register &y, const std::vector<Register> &xs,
                  const Register &sum, std::span<const Qubit> ancillas);

}  // namespace qsbo
