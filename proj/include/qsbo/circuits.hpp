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
 * @file circuits.hpp
 * Standard circuit blocks: QFT, the RY/CX trial state and exact
 * amplitude loading of a probability vector.
 */
#pragma once

#include "qsbo/statevector.hpp"

#include <cstddef>
#include <span>

namespace qsbo {

/// QFT on qubits 0..n-1 (little-endian), including the final qubit reversal.
Circuit qft(unsigned n, bool inverse = false);

/// Appends a SWAP as three CX gates.
void append_swap(Circuit &circuit, Qubit a, Qubit b);

/**
 * Linear-chain RY ansatz: `reps` blocks of [RY layer, CX q_i -> q_{i+1}],
 * then a final RY layer. Parameters are ordered layer-major.
 */
struct AnsatzSpec {
    unsigned k = 1;
    unsigned reps = 0;

    [[nodiscard]] std::size_t num_parameters() const noexcept {
        return static_cast<std::size_t>(k) * (reps + 1);
    }
};

Circuit trial_state(const AnsatzSpec &spec, std::span<const double> theta);

/**
 * Loads sqrt(p) into the amplitudes of |0...0>. Uses recursive binary
 * splitting with multi-controlled RY, most significant qubit first.
 */
Circuit prepare_probabilities(std::span<const double> p);

}  // namespace qsbo
