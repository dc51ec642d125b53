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

#pragma once

#include "qsbo/amplitude_estimation.hpp"
#include "qsbo/distributions.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace qsbo {

/// Builds the CDF problem "value <= lambda" for an integer threshold.
using CdfProblemFactory = std::function<AEProblem(std::uint64_t lambda)>;

struct VaRResult {
    std::uint64_t index = 0;
    /// Sample-space value phi(index); equal to index for generic factories.
    double value = 0.0;
    std::uint64_t queries = 0;
    /// (lambda, estimated CDF) in probe order.
    std::vector<std::pair<std::uint64_t, double>> probes;
};

/**
 * Smallest lambda in [0, size) whose estimated CDF reaches alpha, found by
 * integer bisection. The last index is never probed (its CDF is 1). A
 * final downward sweep repairs non-monotone noisy probes. Probe lambda
 * uses the seed mix_seed(seed, lambda).
 */
VaRResult value_at_risk(const CdfProblemFactory &factory, std::uint64_t size, double alpha,
                        const EstimatorConfig &config, std::uint64_t seed);

/// value_at_risk over encode_cdf(dist, .), with value = phi(index).
VaRResult value_at_risk(const DiscretizedDistribution &dist, double alpha,
                        const EstimatorConfig &config, std::uint64_t seed);

struct CVaRResult {
    /// Restricted expectation in integer index space.
    double index_value = 0.0;
    std::uint64_t var_index = 0;
    double tail_probability = 0.0;
    std::uint64_t queries = 0;
};

/**
 * a * lambda / P[X <= lambda] with a from encode_cvar and the tail
 * probability from encode_cdf. lambda = 0 returns 0 without a circuit.
 */
CVaRResult conditional_value_at_risk(const DiscretizedDistribution &dist, double alpha,
                                     const EstimatorConfig &config, std::uint64_t seed);

/// Maps an index-space result to sample space with the distribution's grid.
[[nodiscard]] double index_to_sample(const DiscretizedDistribution &dist, double index_value);

}  // namespace qsbo
