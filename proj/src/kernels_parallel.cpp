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

#include "qsbo/kernels.hpp"

#include <cstdint>
#include <utility>

namespace qsbo::kernels::parallel {

// Loop counters are signed for OpenMP. Each iteration touches a disjoint
// pair (i0, i1), so there are no write conflicts.

void apply_matrix(std::span<Complex> amps, Qubit target, const Matrix2 &m, ControlMask ctrl) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const BasisIndex tbit = BasisIndex{1} << target;
    Complex *data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t i = 0; i < half; ++i) {
        const BasisIndex i0 = insert_zero_bit(static_cast<BasisIndex>(i), target);
        if ((i0 & ctrl.mask) != ctrl.value) {
            continue;
        }
        const BasisIndex i1 = i0 | tbit;
        const Complex a0 = data[i0];
        const Complex a1 = data[i1];
        data[i0] = m.m00 * a0 + m.m01 * a1;
        data[i1] = m.m10 * a0 + m.m11 * a1;
    }
}

void apply_x(std::span<Complex> amps, Qubit target, ControlMask ctrl) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const BasisIndex tbit = BasisIndex{1} << target;
    Complex *data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t i = 0; i < half; ++i) {
        const BasisIndex i0 = insert_zero_bit(static_cast<BasisIndex>(i), target);
        if ((i0 & ctrl.mask) == ctrl.value) {
            std::swap(data[i0], data[i0 | tbit]);
        }
    }
}

void apply_phase(std::span<Complex> amps, Qubit target, Complex phase, ControlMask ctrl) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const BasisIndex tbit = BasisIndex{1} << target;
    Complex *data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t i = 0; i < half; ++i) {
        const BasisIndex i1 = insert_zero_bit(static_cast<BasisIndex>(i), target) | tbit;
        if ((i1 & ctrl.mask) == ctrl.value) {
            data[i1] *= phase;
        }
    }
}

void apply_phase_flip(std::span<Complex> amps, const BasisPredicate &pred, ControlMask ctrl) {
    const auto dim = static_cast<std::int64_t>(amps.size());
    Complex *data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto idx = static_cast<BasisIndex>(i);
        if ((idx & ctrl.mask) == ctrl.value && pred(idx)) {
            data[i] = -data[i];
        }
    }
}

double masked_probability(std::span<const Complex> amps, const BasisPredicate &pred) {
    const auto dim = static_cast<std::int64_t>(amps.size());
    const Complex *data = amps.data();
    double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total) if (amps.size() >= kParallelThreshold)
    for (std::int64_t i = 0; i < dim; ++i) {
        if (pred(static_cast<BasisIndex>(i))) {
            total += std::norm(data[i]);
        }
    }
    return total;
}

}  // namespace qsbo::kernels::parallel
