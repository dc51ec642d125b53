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
 * @file classical.hpp
 * Brute-force classical evaluation of every objective. These fill the
 * "exact" columns of result records and serve as reference values.
 */
#pragma once

#include "qsbo/distributions.hpp"
#include "qsbo/encoders.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qsbo::classical {

/// E[(X - y)^2]
[[nodiscard]] double quadratic_objective(const DiscretizedDistribution &dist, double y);

/// Prefix sums of p.
[[nodiscard]] std::vector<double> cdf(std::span<const double> p);

/// min{lambda : CDF(lambda) >= alpha}
[[nodiscard]] std::uint64_t var_index(std::span<const double> p, double alpha);

/// sum_{x <= lambda} x p_x / sum_{x <= lambda} p_x in index space.
[[nodiscard]] double cvar_index(std::span<const double> p, std::uint64_t lambda);

/// E[f(s, D)] for an integer stock s.
[[nodiscard]] double newsvendor_expectation(const DiscretizedDistribution &demand, std::uint64_t s,
                                            const NewsvendorParams &params);

/// Sum-register distribution of sum_i y_i x_i for basis y.
[[nodiscard]] std::vector<double> portfolio_sum_distribution(const DiscretizedDistribution &dist,
                                                             std::uint64_t y);

/// Mixture of portfolio_sum_distribution over y with weights w[y].
[[nodiscard]] std::vector<double> portfolio_sum_distribution(const DiscretizedDistribution &dist,
                                                             std::span<const double> weights);

struct PortfolioValue {
    double expected_return = 0.0;  ///< sample space
    double var = 0.0;               ///< sample space, lower alpha-quantile
    double objective = 0.0;         ///< expected_return - q * var
};

/// Objective terms of a sum-register distribution, scaled by the grid step.
[[nodiscard]] PortfolioValue portfolio_value(const DiscretizedDistribution &dist,
                                             std::span<const double> sum_distribution, double q,
                                             double alpha);

}  // namespace qsbo::classical
