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

// Shared helpers for the unit and acceptance tests. Nothing here calls the
// library's kernels: the dense-matrix oracle below rebuilds every gate from
// its textbook definition.
#pragma once

#include "qsbo/amplitude_estimation.hpp"
#include "qsbo/statevector.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace qsbo::testing {

inline StateVector random_state(unsigned n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> amps(std::size_t{1} << n);
    double norm = 0.0;
    for (auto &a : amps) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto &a : amps) {
        a /= std::sqrt(norm);
    }
    return StateVector::from_amplitudes(std::move(amps));
}

inline Eigen::VectorXcd to_eigen(const StateVector &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

/// Full 2^n x 2^n matrix of one gate, built column by column.
inline Eigen::MatrixXcd gate_matrix(const Gate &g, unsigned n) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    const double c = std::cos(g.angle / 2.0);
    const double s = std::sin(g.angle / 2.0);
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t col = 0; col < dim; ++col) {
        bool active = true;
        for (const auto &ctl : g.controls) {
            const bool bit = ((col >> ctl.qubit) & 1U) != 0;
            active = active && (bit == ctl.on_one);
        }
        const auto ci = static_cast<Eigen::Index>(col);
        if (!active) {
            u(ci, ci) = 1.0;
            continue;
        }
        if (g.kind == GateKind::PhaseFlip) {
            u(ci, ci) = (*g.predicate)(col) ? -1.0 : 1.0;
            continue;
        }
        const std::size_t bit = (col >> g.target) & 1U;
        const std::size_t col0 = col & ~(std::size_t{1} << g.target);
        const std::size_t col1 = col0 | (std::size_t{1} << g.target);
        // Column `bit` of the single-qubit matrix.
        Complex m0;
        Complex m1;
        switch (g.kind) {
        case GateKind::X:
            m0 = bit ? 1.0 : 0.0;
            m1 = bit ? 0.0 : 1.0;
            break;
        case GateKind::H:
            m0 = r;
            m1 = bit ? -r : r;
            break;
        case GateKind::Z:
            m0 = bit ? 0.0 : 1.0;
            m1 = bit ? -1.0 : 0.0;
            break;
        case GateKind::RY:
            m0 = bit ? -s : c;
            m1 = bit ? c : s;
            break;
        case GateKind::Phase:
            m0 = bit ? 0.0 : 1.0;
            m1 = bit ? std::polar(1.0, g.angle) : Complex{0.0};
            break;
        default:
            throw std::logic_error("gate_matrix: unhandled kind");
        }
        u(static_cast<Eigen::Index>(col0), ci) = m0;
        u(static_cast<Eigen::Index>(col1), ci) = m1;
    }
    return u;
}

inline Eigen::MatrixXcd circuit_matrix(const Circuit &circ) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << circ.num_qubits());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &g : circ.gates()) {
        u = gate_matrix(g, circ.num_qubits()) * u;
    }
    return u;
}

/// Runs a circuit on a basis state and returns the basis state it lands in.
/// Fails if the output is not a basis state up to phase.
inline BasisIndex run_basis(const Circuit &circ, BasisIndex input) {
    const StateVector out = run(circ, StateVector::basis(circ.num_qubits(), input));
    for (std::size_t i = 0; i < out.dimension(); ++i) {
        if (std::norm(out[i]) > 1.0 - 1e-9) {
            return i;
        }
    }
    throw std::runtime_error("run_basis: output is not a basis state");
}

/// Random A operator: RY layers and CX chains on n qubits with the top
/// qubit as marker.
inline AEProblem random_problem(unsigned n, std::mt19937_64 &rng, unsigned layers = 2) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    Circuit a(n);
    for (unsigned l = 0; l < layers; ++l) {
        for (Qubit q = 0; q < n; ++q) {
            a.add(gates::ry(q, angle(rng)));
        }
        for (Qubit q = 0; q + 1 < n; ++q) {
            a.add(gates::cx(q, q + 1));
        }
    }
    a.add(gates::ry(n - 1, angle(rng)));
    return {a, qubit_is_one(n - 1)};
}

/// A with good-state probability exactly a: one RY on a single qubit.
inline AEProblem problem_with_amplitude(double a) {
    Circuit c(1);
    c.add(gates::ry(0, 2.0 * std::asin(std::sqrt(a))));
    return {c, qubit_is_one(0)};
}

/// Phase-estimation outcome law for an amplitude a = sin^2(theta):
/// half of the Fejer kernel centred at M theta / pi and half at -M theta / pi.
inline std::vector<double> qpe_outcome_law(double a, unsigned m) {
    const double theta = std::asin(std::sqrt(a));
    const double big_m = std::ldexp(1.0, static_cast<int>(m));
    auto fejer = [&](double delta) {
        const double s = std::sin(std::numbers::pi * delta);
        if (std::abs(s) < 1e-12) {
            return 1.0;
        }
        const double num = std::sin(big_m * std::numbers::pi * delta);
        return num * num / (big_m * big_m * s * s);
    };
    std::vector<double> p(static_cast<std::size_t>(big_m));
    for (std::size_t y = 0; y < p.size(); ++y) {
        const double w = static_cast<double>(y) / big_m;
        p[y] = 0.5 * fejer(w - theta / std::numbers::pi) + 0.5 * fejer(w + theta / std::numbers::pi);
    }
    return p;
}

inline double max_abs_diff(const StateVector &a, const StateVector &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

}  // namespace qsbo::testing
