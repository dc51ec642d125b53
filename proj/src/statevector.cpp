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

#include "qsbo/statevector.hpp"

#include "qsbo/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qsbo {

StateVector::StateVector(unsigned num_qubits)
    : num_qubits_(num_qubits), amplitudes_(std::size_t{1} << num_qubits) {
    if (num_qubits == 0 || num_qubits > 30) {
        throw std::invalid_argument("StateVector: qubit count must be in [1, 30]");
    }
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(unsigned num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(unsigned num_qubits, BasisIndex index) {
    StateVector s(num_qubits);
    if (index >= s.dimension()) {
        throw std::out_of_range("StateVector::basis: index out of range");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("StateVector: length must be a power of two >= 2");
    }
    double norm = 0.0;
    for (const auto &a : amplitudes) {
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > kStateTolerance) {
        throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
    return StateVector(static_cast<unsigned>(std::countr_zero(dim)), std::move(amplitudes));
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

namespace {

template <class Ops>
void dispatch(std::span<Complex> amps, const Gate &gate) {
    const auto ctrl = kernels::make_control_mask(gate.controls);
    switch (gate.kind) {
    case GateKind::X:
        Ops::x(amps, gate.target, ctrl);
        break;
    case GateKind::H: {
        const double r = std::numbers::sqrt2 / 2.0;
        Ops::matrix(amps, gate.target, kernels::Matrix2{r, r, r, -r}, ctrl);
        break;
    }
    case GateKind::Z:
        Ops::phase(amps, gate.target, Complex{-1.0, 0.0}, ctrl);
        break;
    case GateKind::RY: {
        const double c = std::cos(gate.angle / 2.0);
        const double s = std::sin(gate.angle / 2.0);
        Ops::matrix(amps, gate.target, kernels::Matrix2{c, -s, s, c}, ctrl);
        break;
    }
    case GateKind::Phase:
        Ops::phase(amps, gate.target, std::polar(1.0, gate.angle), ctrl);
        break;
    case GateKind::PhaseFlip:
        Ops::flip(amps, *gate.predicate, ctrl);
        break;
    }
}

struct SerialOps {
    static void x(std::span<Complex> a, Qubit t, kernels::ControlMask c) { kernels::serial::apply_x(a, t, c); }
    static void matrix(std::span<Complex> a, Qubit t, const kernels::Matrix2 &m, kernels::ControlMask c) {
        kernels::serial::apply_matrix(a, t, m, c);
    }
    static void phase(std::span<Complex> a, Qubit t, Complex p, kernels::ControlMask c) {
        kernels::serial::apply_phase(a, t, p, c);
    }
    static void flip(std::span<Complex> a, const BasisPredicate &p, kernels::ControlMask c) {
        kernels::serial::apply_phase_flip(a, p, c);
    }
};

struct ParallelOps {
    static void x(std::span<Complex> a, Qubit t, kernels::ControlMask c) { kernels::parallel::apply_x(a, t, c); }
    static void matrix(std::span<Complex> a, Qubit t, const kernels::Matrix2 &m, kernels::ControlMask c) {
        kernels::parallel::apply_matrix(a, t, m, c);
    }
    static void phase(std::span<Complex> a, Qubit t, Complex p, kernels::ControlMask c) {
        kernels::parallel::apply_phase(a, t, p, c);
    }
    static void flip(std::span<Complex> a, const BasisPredicate &p, kernels::ControlMask c) {
        kernels::parallel::apply_phase_flip(a, p, c);
    }
};

void check_gate_fits(const Gate &gate, unsigned n) {
    if (gate.kind != GateKind::PhaseFlip && gate.target >= n) {
        throw std::out_of_range("apply: target qubit out of range");
    }
    for (const auto &c : gate.controls) {
        if (c.qubit >= n) {
            throw std::out_of_range("apply: control qubit out of range");
        }
        if (gate.kind != GateKind::PhaseFlip && c.qubit == gate.target) {
            throw std::invalid_argument("apply: control and target overlap");
        }
    }
    if (gate.kind == GateKind::PhaseFlip && !gate.predicate) {
        throw std::invalid_argument("apply: phase flip without predicate");
    }
}

}  // namespace

void apply_inplace(StateVector &state, const Gate &gate, Backend backend) {
    check_gate_fits(gate, state.num_qubits());
    if (backend == Backend::Serial) {
        dispatch<SerialOps>(state.mutable_amplitudes(), gate);
    } else {
        dispatch<ParallelOps>(state.mutable_amplitudes(), gate);
    }
}

StateVector apply(StateVector state, const Gate &gate, Backend backend) {
    apply_inplace(state, gate, backend);
    return state;
}

void run_inplace(const Circuit &circuit, StateVector &state, Backend backend) {
    if (circuit.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("run: circuit has " + std::to_string(circuit.num_qubits()) +
                                    " qubits, state has " + std::to_string(state.num_qubits()));
    }
    // Gates were validated when added to the circuit.
    for (const auto &g : circuit.gates()) {
        if (backend == Backend::Serial) {
            dispatch<SerialOps>(state.mutable_amplitudes(), g);
        } else {
            dispatch<ParallelOps>(state.mutable_amplitudes(), g);
        }
    }
}

StateVector run(const Circuit &circuit, StateVector initial, Backend backend) {
    run_inplace(circuit, initial, backend);
    return initial;
}

StateVector run(const Circuit &circuit, Backend backend) {
    return run(circuit, StateVector(circuit.num_qubits()), backend);
}

double probability(const StateVector &state, const BasisPredicate &predicate, Backend backend) {
    const double p = backend == Backend::Serial
                         ? kernels::serial::masked_probability(state.amplitudes(), predicate)
                         : kernels::parallel::masked_probability(state.amplitudes(), predicate);
    return std::clamp(p, 0.0, 1.0);
}

std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> out(state.dimension());
    const auto amps = state.amplitudes();
    std::transform(amps.begin(), amps.end(), out.begin(), [](Complex a) { return std::norm(a); });
    return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ShotSampler::ShotSampler(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed, 0)) {}

ShotSampler ShotSampler::split(std::uint64_t stream) const {
    return ShotSampler(mix_seed(seed_, stream + 1));
}

double ShotSampler::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

std::uint64_t ShotSampler::binomial(std::uint64_t trials, double p) {
    p = std::clamp(p, 0.0, 1.0);
    if (p == 0.0) {
        return 0;
    }
    if (p == 1.0) {
        return trials;
    }
    return std::binomial_distribution<std::uint64_t>(trials, p)(engine_);
}

std::uint64_t ShotSampler::discrete(std::span<const double> weights) {
    return std::discrete_distribution<std::uint64_t>(weights.begin(), weights.end())(engine_);
}

std::map<BasisIndex, std::uint64_t> sample(const StateVector &state, std::uint64_t shots,
                                           ShotSampler &sampler) {
    if (shots == 0) {
        throw std::invalid_argument("sample: shots must be >= 1");
    }
    const auto probs = probabilities(state);
    std::discrete_distribution<BasisIndex> dist(probs.begin(), probs.end());
    std::map<BasisIndex, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        ++counts[dist(sampler.engine())];
    }
    return counts;
}

BasisPredicate qubit_is_one(Qubit q) {
    return [q](BasisIndex i) { return ((i >> q) & 1U) != 0; };
}

}  // namespace qsbo
