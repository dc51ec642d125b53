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

#include "qsbo/circuits.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsbo {

void append_swap(Circuit &circuit, Qubit a, Qubit b) {
    circuit.add(gates::cx(a, b));
    circuit.add(gates::cx(b, a));
    circuit.add(gates::cx(a, b));
}

Circuit qft(unsigned n, bool inverse) {
    if (n < 1) {
        throw std::invalid_argument("qft: n must be >= 1");
    }
    Circuit c(n);
    for (unsigned j = n; j-- > 0;) {
        c.add(gates::h(j));
        for (unsigned k = 0; k < j; ++k) {
            c.add(gates::cphase(k, j, std::numbers::pi / static_cast<double>(1ULL << (j - k))));
        }
    }
    for (unsigned i = 0; i < n / 2; ++i) {
        append_swap(c, i, n - 1 - i);
    }
    return inverse ? c.adjoint() : c;
}

Circuit trial_state(const AnsatzSpec &spec, std::span<const double> theta) {
    if (spec.k < 1) {
        throw std::invalid_argument("trial_state: k must be >= 1");
    }
    if (theta.size() != spec.num_parameters()) {
        throw std::invalid_argument("trial_state: expected " + std::to_string(spec.num_parameters()) +
                                    " parameters, got " + std::to_string(theta.size()));
    }
    Circuit c(spec.k);
    std::size_t p = 0;
    for (unsigned layer = 0; layer <= spec.reps; ++layer) {
        for (unsigned q = 0; q < spec.k; ++q) {
            c.add(gates::ry(q, theta[p++]));
        }
        if (layer == spec.reps) {
            break;
        }
        for (unsigned q = 0; q + 1 < spec.k; ++q) {
            c.add(gates::cx(q, q + 1));
        }
    }
    return c;
}

Circuit prepare_probabilities(std::span<const double> p) {
    const std::size_t dim = p.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("prepare_probabilities: length must be a power of two >= 2");
    }
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument("prepare_probabilities: negative or NaN probability");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > kStateTolerance) {
        throw std::invalid_argument("prepare_probabilities: probabilities do not sum to 1");
    }
    const auto n = static_cast<unsigned>(std::countr_zero(dim));
    Circuit c(n);
    // Level `q` splits each block of 2^(q+1) indices sharing the high bits
    // above q into its lower and upper halves.
    for (unsigned q = n; q-- > 0;) {
        const std::size_t half = std::size_t{1} << q;
        const std::size_t blocks = dim >> (q + 1);
        for (std::size_t prefix = 0; prefix < blocks; ++prefix) {
            const std::size_t base = prefix << (q + 1);
            double p0 = 0.0;
            double p1 = 0.0;
            for (std::size_t i = 0; i < half; ++i) {
                p0 += p[base + i];
                p1 += p[base + half + i];
            }
            if (p1 == 0.0) {
                continue;
            }
            const double angle = 2.0 * std::atan2(std::sqrt(p1), std::sqrt(p0));
            std::vector<Control> controls;
            for (unsigned h = q + 1; h < n; ++h) {
                controls.push_back({h, ((prefix >> (h - q - 1)) & 1U) != 0});
            }
            c.add(gates::mcry(std::move(controls), q, angle));
        }
    }
    return c;
}

}  // namespace qsbo
