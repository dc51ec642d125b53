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

#include <utility>

namespace qsbo::kernels {

ControlMask make_control_mask(std::span<const Control> controls) {
    ControlMask ctrl;
    for (const auto &c : controls) {
        const BasisIndex bit = BasisIndex{1} << c.qubit;
        ctrl.mask |= bit;
        if (c.on_one) {
            ctrl.value |= bit;
        }
    }
    return ctrl;
}

namespace serial {

void apply_matrix(std::span<Complex> amps, Qubit target, const Matrix2 &m, ControlMask ctrl) {
    const BasisIndex half = amps.size() / 2;
    const BasisIndex tbit = BasisIndex{1} << target;
    for (BasisIndex i = 0; i < half; ++i) {
        const BasisIndex i0 = insert_zero_bit(i, target);
        if ((i0 & ctrl.mask) != ctrl.value) {
            continue;
        }
        const BasisIndex i1 = i0 | tbit;
        const Complex a0 = amps[i0];
        const Complex a1 = amps[i1];
        amps[i0] = m.m00 * a0 + m.m01 * a1;
        amps[i1] = m.m10 * a0 + m.m11 * a1;
    }
}

void apply_x(std::span<Complex> amps, Qubit target, ControlMask ctrl) {
    const BasisIndex half = amps.size() / 2;
    const BasisIndex tbit = BasisIndex{1} << target;
    for (BasisIndex i = 0; i < half; ++i) {
        const BasisIndex i0 = insert_zero_bit(i, target);
        if ((i0 & ctrl.mask) == ctrl.value) {
            std::swap(amps[i0], amps[i0 | tbit]);
        }
    }
}

void apply_phase(std::span<Complex> amps, Qubit target, Complex phase, ControlMask ctrl) {
    const BasisIndex half = amps.size() / 2;
    const BasisIndex tbit = BasisIndex{1} << target;
    for (BasisIndex i = 0; i < half; ++i) {
        const BasisIndex i1 = insert_zero_bit(i, target) | tbit;
        if ((i1 & ctrl.mask) == ctrl.value) {
            amps[i1] *= phase;
        }
    }
}

void apply_phase_flip(std::span<Complex> amps, const BasisPredicate &pred, ControlMask ctrl) {
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if ((i & ctrl.mask) == ctrl.value && pred(i)) {
            amps[i] = -amps[i];
        }
    }
}

double masked_probability(std::span<const Complex> amps, const BasisPredicate &pred) {
    double total = 0.0;
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        if (pred(i)) {
            total += std::norm(amps[i]);
        }
    }
    return total;
}

}  // namespace serial
}  // namespace qsbo::kernels
