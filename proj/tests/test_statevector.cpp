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

#include "support.hpp"

#include "qsbo/kernels.hpp"
#include "qsbo/statevector.hpp"

#include <doctest.h>

#include <array>
#include <bit>
#include <numeric>

using namespace qsbo;
using qsbo::testing::gate_matrix;
using qsbo::testing::random_state;
using qsbo::testing::to_eigen;

namespace {

std::vector<Gate> sample_gates() {
    auto odd = [](BasisIndex i) { return (std::popcount(i) & 1) != 0; };
    return {
        gates::x(1),
        gates::h(0),
        gates::z(3),
        gates::ry(2, 0.7),
        gates::phase(1, -1.3),
        gates::cx(0, 3),
        gates::cry(3, 1, 2.1),
        gates::cphase(2, 0, 0.4),
        gates::mcx({{0, true}, {2, false}}, 1),
        gates::mcz({{1, false}, {3, true}}, 0),
        gates::mcry({{0, false}, {1, false}, {3, true}}, 2, -0.9),
        gates::phase_flip(odd),
        gates::with_control(gates::phase_flip(odd), {2, false}),
        gates::with_control(gates::h(3), {1, true}),
    };
}

}  // namespace

TEST_CASE("construction checks normalization and size") {
    StateVector s(3);
    CHECK(s.dimension() == 8);
    CHECK(s[0] == Complex{1.0});
    CHECK(StateVector::basis(3, 5)[5] == Complex{1.0});
    CHECK_THROWS_AS(StateVector::basis(3, 8), std::out_of_range);
    CHECK_THROWS(StateVector::from_amplitudes({1.0, 1.0}));
    CHECK_THROWS(StateVector::from_amplitudes({1.0, 0.0, 0.0}));
    CHECK_NOTHROW(StateVector::from_amplitudes({std::sqrt(0.5), Complex{0.0, std::sqrt(0.5)}}));
}

TEST_CASE("every gate kind matches its dense matrix on both backends") {
    std::mt19937_64 rng(7);
    for (const auto &g : sample_gates()) {
        CAPTURE(g.name());
        const StateVector in = random_state(4, rng);
        const Eigen::VectorXcd expect = gate_matrix(g, 4) * to_eigen(in);
        for (Backend b : {Backend::Serial, Backend::Parallel}) {
            const StateVector out = apply(in, g, b);
            CHECK((to_eigen(out) - expect).norm() < 1e-12);
        }
    }
}

TEST_CASE("gate adjoint inverts the gate") {
    std::mt19937_64 rng(8);
    for (const auto &g : sample_gates()) {
        CAPTURE(g.name());
        const StateVector in = random_state(4, rng);
        const StateVector back = apply(apply(in, g), g.adjoint());
        CHECK(testing::max_abs_diff(in, back) < 1e-12);
    }
}

TEST_CASE("circuits preserve the norm and are linear") {
    std::mt19937_64 rng(9);
    Circuit c(4);
    for (const auto &g : sample_gates()) {
        c.add(g);
    }
    const StateVector psi = random_state(4, rng);
    const StateVector phi = random_state(4, rng);
    const Complex alpha{0.6, 0.0};
    const Complex beta{0.0, 0.8};

    std::vector<Complex> mix(16);
    for (std::size_t i = 0; i < 16; ++i) {
        mix[i] = alpha * psi[i] + beta * phi[i];
    }
    // alpha psi + beta phi is not normalized in general; scale it.
    const double norm = std::sqrt(std::accumulate(mix.begin(), mix.end(), 0.0,
                                                  [](double t, Complex z) { return t + std::norm(z); }));
    for (auto &z : mix) {
        z /= norm;
    }
    const StateVector lhs = run(c, StateVector::from_amplitudes(mix));
    const StateVector upsi = run(c, psi);
    const StateVector uphi = run(c, phi);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(std::abs(lhs[i] - (alpha * upsi[i] + beta * uphi[i]) / norm) < 1e-12);
    }
    CHECK(upsi.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(testing::max_abs_diff(run(c.adjoint(), upsi), psi) < 1e-12);
}

TEST_CASE("serial and parallel kernels agree above the threshold") {
    std::mt19937_64 rng(10);
    const unsigned n = 13;
    REQUIRE((std::size_t{1} << n) > kernels::kParallelThreshold);
    Circuit c(n);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (Qubit q = 0; q < n; ++q) {
        c.add(gates::h(q));
        c.add(gates::ry((q + 5) % n, angle(rng)));
        c.add(gates::cx(q, (q + 1) % n));
        c.add(gates::cphase((q + 3) % n, q, angle(rng)));
    }
    c.add(gates::mcx({{0, true}, {4, false}, {9, true}}, 12));
    c.add(gates::phase_flip([](BasisIndex i) { return i % 7 == 3; }));
    const StateVector in = random_state(n, rng);
    const StateVector s = run(c, in, Backend::Serial);
    const StateVector p = run(c, in, Backend::Parallel);
    CHECK(testing::max_abs_diff(s, p) < 1e-12);
    const auto pred = qubit_is_one(5);
    CHECK(probability(s, pred, Backend::Serial) ==
          doctest::Approx(probability(p, pred, Backend::Parallel)).epsilon(1e-12));
}

TEST_CASE("circuit construction rejects bad indices") {
    Circuit c(3);
    CHECK_THROWS_AS(c.add(gates::x(3)), std::out_of_range);
    CHECK_THROWS_AS(c.add(gates::cx(3, 0)), std::out_of_range);
    CHECK_THROWS_AS(c.add(gates::cx(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(c.add(gates::mcx({{0, true}, {0, false}}, 2)), std::invalid_argument);
    CHECK_THROWS(c.append(Circuit(2)));
    StateVector s(2);
    CHECK_THROWS(run_inplace(c, s));
}

TEST_CASE("append_mapped relabels targets, controls and predicates") {
    Circuit inner(2);
    inner.add(gates::h(0));
    inner.add(gates::cx(0, 1));
    inner.add(gates::phase_flip([](BasisIndex i) { return i == 1; }));

    Circuit mapped(4);
    const std::array<Qubit, 2> mapping{3, 1};
    mapped.append_mapped(inner, mapping);

    Circuit direct(4);
    direct.add(gates::h(3));
    direct.add(gates::cx(3, 1));
    // inner index 1 means inner qubit 0 set and inner qubit 1 clear.
    direct.add(gates::phase_flip([](BasisIndex i) { return ((i >> 3) & 1) && !((i >> 1) & 1); }));

    std::mt19937_64 rng(11);
    const StateVector in = random_state(4, rng);
    CHECK(testing::max_abs_diff(run(mapped, in), run(direct, in)) < 1e-12);

    const std::array<Qubit, 2> clash{2, 2};
    CHECK_THROWS(mapped.append_mapped(inner, clash));
    const std::array<Qubit, 1> short_map{0};
    CHECK_THROWS(mapped.append_mapped(inner, short_map));
}

TEST_CASE("controlled circuit acts only when the control is set") {
    Circuit inner(3);
    inner.add(gates::h(0));
    inner.add(gates::ry(1, 0.3));
    inner.add(gates::cx(0, 1));
    const Circuit ctl = inner.controlled({2, true});

    // Qubit 2 clear: identity.
    StateVector off = StateVector::basis(3, 0b001);
    CHECK(testing::max_abs_diff(run(ctl, off), off) < 1e-12);
    // Qubit 2 set: same as the inner circuit.
    CHECK_THROWS(inner.controlled({0, true}));
    const StateVector on = StateVector::basis(3, 0b101);
    CHECK(testing::max_abs_diff(run(ctl, on), run(inner, on)) < 1e-12);
}

TEST_CASE("probabilities and sampling") {
    Circuit c(2);
    c.add(gates::ry(0, 2.0 * std::asin(std::sqrt(0.3))));
    const StateVector s = run(c);
    const auto p = probabilities(s);
    CHECK(p[1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(probability(s, qubit_is_one(0)) == doctest::Approx(0.3).epsilon(1e-12));

    ShotSampler a(99);
    ShotSampler b(99);
    const auto ca = sample(s, 10000, a);
    const auto cb = sample(s, 10000, b);
    CHECK(ca == cb);
    std::uint64_t total = 0;
    for (const auto &[k, v] : ca) {
        CHECK((k == 0 || k == 1));
        total += v;
    }
    CHECK(total == 10000);
    CHECK(static_cast<double>(ca.at(1)) / 10000.0 == doctest::Approx(0.3).epsilon(0.1));
    CHECK_THROWS(sample(s, 0, a));
}

TEST_CASE("sampler streams are reproducible and distinct") {
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(5, 3) == mix_seed(5, 3));
    ShotSampler root(3);
    ShotSampler c1 = root.split(1);
    ShotSampler c1b = root.split(1);
    ShotSampler c2 = root.split(2);
    const double u1 = c1.uniform();
    CHECK(u1 == c1b.uniform());
    CHECK(u1 != c2.uniform());
    CHECK(root.binomial(100, 0.0) == 0);
    CHECK(root.binomial(100, 1.0) == 100);
}
