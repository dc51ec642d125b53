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
 * @file statevector.hpp
 * Dense statevector simulation: gates, circuits, states and shot sampling.
 *
 * Qubit ordering is little-endian: qubit i contributes 2^i to a basis index.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qsbo {

using Complex = std::complex<double>;
using Qubit = unsigned;
using BasisIndex = std::uint64_t;
using BasisPredicate = std::function<bool(BasisIndex)>;

/// Numerical tolerance used by the simulator for norm and unitarity checks.
inline constexpr double kStateTolerance = 1e-10;

/// A control qubit. `on_one == false` conditions on the qubit being |0>.
struct Control {
    Qubit qubit = 0;
    bool on_one = true;
};

enum class GateKind {
    X,
    H,
    Z,
    RY,        ///< RY(t)|0> = cos(t/2)|0> + sin(t/2)|1>
    Phase,     ///< diag(1, e^{i t})
    PhaseFlip  ///< multiplies every basis state satisfying a predicate by -1
};

/**
 * A single gate application. Every kind may carry an arbitrary list of
 * controls, so CX, CRY, multi-controlled X/Z and controlled-phase are all
 * expressed as a base kind plus controls. `PhaseFlip` has no target; its
 * predicate is evaluated on the full basis index of the owning circuit.
 */
struct Gate {
    GateKind kind = GateKind::X;
    Qubit target = 0;
    double angle = 0.0;
    std::vector<Control> controls;
    std::shared_ptr<const BasisPredicate> predicate;

    [[nodiscard]] Gate adjoint() const;
    [[nodiscard]] std::string name() const;
};

namespace gates {
Gate x(Qubit target);
Gate h(Qubit target);
Gate z(Qubit target);
Gate ry(Qubit target, double angle);
Gate phase(Qubit target, double angle);
Gate cx(Qubit control, Qubit target);
Gate cry(Qubit control, Qubit target, double angle);
Gate cphase(Qubit control, Qubit target, double angle);
Gate mcx(std::vector<Control> controls, Qubit target);
Gate mcz(std::vector<Control> controls, Qubit target);
Gate mcry(std::vector<Control> controls, Qubit target, double angle);
Gate phase_flip(BasisPredicate predicate);
/// Returns `g` with `extra` prepended to its control list.
Gate with_control(Gate g, Control extra);
}  // namespace gates

/// Ordered gate sequence on a fixed number of qubits.
class Circuit {
  public:
    explicit Circuit(unsigned num_qubits);

    [[nodiscard]] unsigned num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] const std::vector<Gate> &gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }

    /// Validates indices (range, target/control overlap) and appends.
    Circuit &add(Gate gate);

    /// Appends a circuit of identical width.
    Circuit &append(const Circuit &other);

    /// Appends `other` with its qubit i relabelled to `mapping[i]`.
    Circuit &append_mapped(const Circuit &other, std::span<const Qubit> mapping);

    /// Reversed sequence of element-wise adjoints.
    [[nodiscard]] Circuit adjoint() const;

    /// Every gate additionally conditioned on `control`.
    [[nodiscard]] Circuit controlled(Control control) const;

  private:
    unsigned num_qubits_;
    std::vector<Gate> gates_;
};

class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(unsigned num_qubits);

    static StateVector basis(unsigned num_qubits, BasisIndex index);
    /// Length must be a power of two and the vector normalized within 1e-10.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] unsigned num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::span<Complex> mutable_amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] Complex operator[](BasisIndex index) const { return amplitudes_.at(index); }
    [[nodiscard]] double norm_squared() const;

  private:
    StateVector(unsigned num_qubits, std::vector<Complex> amplitudes);

    unsigned num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Selects the serial reference kernels or the OpenMP kernels.
enum class Backend { Serial, Parallel };

void apply_inplace(StateVector &state, const Gate &gate, Backend backend = Backend::Parallel);
[[nodiscard]] StateVector apply(StateVector state, const Gate &gate,
                                Backend backend = Backend::Parallel);

void run_inplace(const Circuit &circuit, StateVector &state, Backend backend = Backend::Parallel);
[[nodiscard]] StateVector run(const Circuit &circuit, StateVector initial,
                              Backend backend = Backend::Parallel);
/// run(circuit, |0...0>)
[[nodiscard]] StateVector run(const Circuit &circuit, Backend backend = Backend::Parallel);

/// Total probability of the basis states satisfying `predicate`.
[[nodiscard]] double probability(const StateVector &state, const BasisPredicate &predicate,
                                 Backend backend = Backend::Parallel);
/// |amplitude|^2 per basis index.
[[nodiscard]] std::vector<double> probabilities(const StateVector &state);

/**
 * Seeded source of measurement shots. Single-owner: do not share one
 * sampler between concurrent consumers; use split() to derive streams.
 */
class ShotSampler {
  public:
    explicit ShotSampler(std::uint64_t seed);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    /// Independent, deterministic child stream.
    [[nodiscard]] ShotSampler split(std::uint64_t stream) const;

    double uniform();
    std::uint64_t binomial(std::uint64_t trials, double p);
    std::uint64_t discrete(std::span<const double> weights);
    std::mt19937_64 &engine() noexcept { return engine_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive seeds for child streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Draws `shots` measurements in the computational basis.
std::map<BasisIndex, std::uint64_t> sample(const StateVector &state, std::uint64_t shots,
                                           ShotSampler &sampler);

/// Predicate "qubit q is |1>".
BasisPredicate qubit_is_one(Qubit q);

}  // namespace qsbo
