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
 * @file amplitude_estimation.hpp
 * Grover operator construction plus canonical (phase estimation) and
 * maximum-likelihood amplitude estimation.
 */
#pragma once

#include "qsbo/statevector.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qsbo {

/// A|0> = sqrt(1-a)|psi0> + sqrt(a)|psi1>, with |psi1> selected by `good`.
struct AEProblem {
    Circuit a_circuit;
    BasisPredicate good;

    [[nodiscard]] unsigned num_qubits() const noexcept { return a_circuit.num_qubits(); }
};

/// a computed directly from the statevector A|0>.
[[nodiscard]] double exact_amplitude(const AEProblem &problem, Backend backend = Backend::Parallel);

/**
 * Q = A S_0 A^dagger S_psi0, where S_psi0 flips the sign of basis states
 * failing `good` and S_0 flips |0...0>. Each application rotates A|0> by
 * 2*theta_a towards |psi1> with no extra global phase, which keeps
 * controlled powers of Q usable inside phase estimation.
 */
[[nodiscard]] Circuit grover_operator(const AEProblem &problem);

/// Good-state probability of Q^k A|0> for k = 0..max_power.
[[nodiscard]] std::vector<double> grover_power_probabilities(const AEProblem &problem,
                                                             unsigned max_power);

enum class EstimatorMethod { Canonical, MLE, Exact };

[[nodiscard]] std::string to_string(EstimatorMethod method);
[[nodiscard]] EstimatorMethod estimator_from_string(const std::string &name);

struct EstimationResult {
    double estimate = 0.0;
    std::uint64_t queries = 0;
    EstimatorMethod method = EstimatorMethod::Exact;
    /// Canonical: probability of each evaluation outcome y in [0, 2^m).
    std::vector<double> outcome_distribution;
    /// Canonical sampled mode: the measured y.
    std::optional<std::uint64_t> sampled_outcome;
    /// MLE: Grover power, shots and successes per schedule entry.
    std::vector<std::uint64_t> powers;
    std::vector<double> hits;
    std::uint64_t shots = 0;
};

struct MLESchedule {
    std::vector<std::uint64_t> powers{0, 1, 2, 4};
    std::uint64_t shots = 1024;

    /// (0, 1, 2, 4, ..., 2^(j-1)) with `j + 1` entries in total.
    static MLESchedule exponential(unsigned j, std::uint64_t shots);
    /// Throws unless powers are non-empty, non-negative and strictly
    /// increasing, and shots >= 1.
    void validate() const;
};

/**
 * Phase estimation with m evaluation qubits placed above the problem's
 * qubits. Returns the exact outcome distribution and the estimate
 * sin^2(y pi / 2^m) of the most probable y (ties to the smaller y).
 * Charges 2^m queries: one A plus 2^m - 1 Q.
 */
[[nodiscard]] EstimationResult canonical_qae(const AEProblem &problem, unsigned m);

/// Same circuit, but draws one outcome with `sampler`.
[[nodiscard]] EstimationResult canonical_qae_sampled(const AEProblem &problem, unsigned m,
                                                     ShotSampler &sampler);

/// Draws `schedule.shots` measurements of Q^{m_k} A|0> per power.
[[nodiscard]] EstimationResult mle_qae(const AEProblem &problem, const MLESchedule &schedule,
                                       ShotSampler &sampler);

/**
 * Deterministic variant: the success count per power is replaced by its
 * expectation N * p_k, so the likelihood is maximized at the true angle.
 */
[[nodiscard]] EstimationResult mle_qae_expected(const AEProblem &problem,
                                                const MLESchedule &schedule);

/**
 * argmax over theta in [0, pi/2] of
 *   sum_k h_k ln sin^2((2 m_k + 1) theta) + (N - h_k) ln cos^2((2 m_k + 1) theta),
 * by a 10^4-point scan followed by golden-section refinement to 1e-10.
 * Returns sin^2(theta*). All-hit and no-hit data map to 1 and 0.
 */
[[nodiscard]] double mle_maximize(const std::vector<std::uint64_t> &powers,
                                  const std::vector<double> &hits, std::uint64_t shots);

using Estimator = std::function<EstimationResult(ShotSampler &)>;

/**
 * Runs `estimator` on `repetitions` independent child streams of `sampler`
 * and returns the result with the median estimate; queries accumulate.
 * `repetitions` must be odd.
 */
[[nodiscard]] EstimationResult median_repeat(const Estimator &estimator, unsigned repetitions,
                                             ShotSampler &sampler);

/// Estimator selection shared by encoders, risk measures and applications.
struct EstimatorConfig {
    EstimatorMethod method = EstimatorMethod::Exact;
    unsigned m = 5;
    MLESchedule schedule;
    /// MLE only: use expected hit counts instead of sampled shots.
    bool expected_hits = false;
    /// Canonical only: sample one outcome instead of taking the mode.
    bool sampled = false;
    unsigned repetitions = 1;
};

[[nodiscard]] EstimationResult estimate(const AEProblem &problem, const EstimatorConfig &config,
                                        std::uint64_t seed);

}  // namespace qsbo
