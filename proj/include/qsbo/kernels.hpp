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
 * @file kernels.hpp
 * Amplitude-update kernels. `serial` is the reference implementation kept
 * for testing; `parallel` splits the same loops across OpenMP threads.
 * Both namespaces expose identical signatures and must agree bit-for-bit
 * up to floating point reassociation in reductions.
 */
#pragma once

#include "qsbo/statevector.hpp"

#include <span>

namespace qsbo::kernels {

/// Basis indices with (index & mask) == value satisfy the controls.
struct ControlMask {
    BasisIndex mask = 0;
    BasisIndex value = 0;
};

ControlMask make_control_mask(std::span<const Control> controls);

/// Row-major 2x2 matrix acting on one target qubit.
struct Matrix2 {
    Complex m00, m01, m10, m11;
};

/// Below this dimension the parallel kernels run on the calling thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 11;

namespace serial {
void apply_matrix(std::span<Complex> amps, Qubit target, const Matrix2 &m, ControlMask ctrl);
void apply_x(std::span<Complex> amps, Qubit target, ControlMask ctrl);
void apply_phase(std::span<Complex> amps, Qubit target, Complex phase, ControlMask ctrl);
void apply_phase_flip(std::span<Complex> amps, const BasisPredicate &pred, ControlMask ctrl);
double masked_probability(std::span<const Complex> amps, const BasisPredicate &pred);
}  // namespace serial

namespace parallel {
void apply_matrix(std::span<Complex> amps, Qubit target, const Matrix2 &m, ControlMask ctrl);
void apply_x(std::span<Complex> amps, Qubit target, ControlMask ctrl);
void apply_phase(std::span<Complex> amps, Qubit target, Complex phase, ControlMask ctrl);
void apply_phase_flip(std::span<Complex> amps, const BasisPredicate &pred, ControlMask ctrl);
double masked_probability(std::span<const Complex> amps, const BasisPredicate &pred);
}  // namespace parallel

/// Inserts a zero bit at position `bit` into `i`.
inline BasisIndex insert_zero_bit(BasisIndex i, Qubit bit) noexcept {
    const BasisIndex low = i & ((BasisIndex{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

}  // namespace qsbo::kernels
