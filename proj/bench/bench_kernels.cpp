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

// Serial reference kernels vs. OpenMP kernels on random states.
// Prints one line per (workload, width) with both timings and the largest
// amplitude difference between the two backends.

#include "qsbo/circuits.hpp"
#include "qsbo/statevector.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace qsbo;

namespace {

StateVector random_state(unsigned n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
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

Circuit layer(unsigned n) {
    Circuit c(n);
    for (Qubit q = 0; q < n; ++q) {
        c.add(gates::h(q));
        c.add(gates::ry(q, 0.1 + 0.01 * q));
    }
    for (Qubit q = 0; q + 1 < n; ++q) {
        c.add(gates::cx(q, q + 1));
    }
    c.add(gates::mcz({{0, true}, {1, true}, {2, true}}, n - 1));
    return c;
}

double seconds(const std::function<void()> &f, unsigned reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (unsigned r = 0; r < reps; ++r) {
        f();
    }
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

double max_diff(const StateVector &a, const StateVector &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Serial vs OpenMP statevector kernels"};
    unsigned min_qubits = 12;
    unsigned max_qubits = 20;
    unsigned reps = 3;
    app.add_option("--min-qubits", min_qubits)->check(CLI::Range(4u, 28u));
    app.add_option("--max-qubits", max_qubits)->check(CLI::Range(4u, 28u));
    app.add_option("--reps", reps)->check(CLI::Range(1u, 1000u));
    CLI11_PARSE(app, argc, argv);

    std::printf("threads %d\n", omp_get_max_threads());
    std::printf("%-8s %6s %12s %12s %8s %10s\n", "workload", "qubits", "serial_ms", "omp_ms",
                "speedup", "max_diff");

    for (unsigned n = min_qubits; n <= max_qubits; n += 2) {
        const StateVector start = random_state(n, n);
        const std::vector<std::pair<std::string, Circuit>> workloads{{"layer", layer(n)},
                                                                     {"qft", qft(n)}};
        for (const auto &[name, circ] : workloads) {
            StateVector s = start;
            StateVector p = start;
            const double ts = seconds([&] { run_inplace(circ, s, Backend::Serial); }, reps);
            const double tp = seconds([&] { run_inplace(circ, p, Backend::Parallel); }, reps);
            std::printf("%-8s %6u %12.3f %12.3f %8.2f %10.2e\n", name.c_str(), n, ts * 1e3,
                        tp * 1e3, ts / tp, max_diff(s, p));
        }
    }
    return 0;
}
