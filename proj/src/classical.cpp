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

#include "qsbo/classical.hpp"

#include <stdexcept>

namespace qsbo::classical {

double quadratic_objective(const DiscretizedDistribution &dist, double y) {
    double total = 0.0;
    for (BasisIndex i = 0; i < dist.probabilities().size(); ++i) {
        const double d = dist.value(i) - y;
        total += dist.probability(i) * d * d;
    }
    return total;
}

std::vector<double> cdf(std::span<const double> p) {
    std::vector<double> out(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        out[i] = acc;
    }
    return out;
}

std::uint64_t var_index(std::span<const double> p, double alpha) {
    const auto c = cdf(p);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= alpha) {
            return i;
        }
    }
    return c.empty() ? 0 : c.size() - 1;
}

double cvar_index(std::span<const double> p, std::uint64_t lambda) {
    if (lambda >= p.size()) {
        throw std::out_of_range("cvar_index: lambda out of range");
    }
    double mass = 0.0;
    double weighted = 0.0;
    for (std::uint64_t i = 0; i <= lambda; ++i) {
        mass += p[i];
        weighted += static_cast<double>(i) * p[i];
    }
    return mass > 0.0 ? weighted / mass : 0.0;
}

double newsvendor_expectation(const DiscretizedDistribution &demand, std::uint64_t s,
                              const NewsvendorParams &params) {
    double total = 0.0;
    for (BasisIndex d = 0; d < demand.probabilities().size(); ++d) {
        total += demand.probability(d) *
                 newsvendor_cost(static_cast<double>(s), demand.value(d), params);
    }
    return total;
}

std::vector<double> portfolio_sum_distribution(const DiscretizedDistribution &dist,
                                               std::uint64_t y) {
    const std::uint64_t vmax = portfolio_max_sum(dist);
    std::vector<double> out(vmax + 1, 0.0);
    for (BasisIndex j = 0; j < dist.probabilities().size(); ++j) {
        std::uint64_t v = 0;
        for (std::size_t d = 0; d < dist.dimensions(); ++d) {
            if ((y >> d) & 1U) {
                v += dist.component(j, d);
            }
        }
        out[v] += dist.probability(j);
    }
    return out;
}

std::vector<double> portfolio_sum_distribution(const DiscretizedDistribution &dist,
                                               std::span<const double> weights) {
    if (weights.size() != (std::size_t{1} << dist.dimensions())) {
        throw std::invalid_argument("portfolio_sum_distribution: one weight per portfolio required");
    }
    std::vector<double> out(portfolio_max_sum(dist) + 1, 0.0);
    for (std::uint64_t y = 0; y < weights.size(); ++y) {
        if (weights[y] == 0.0) {
            continue;
        }
        const auto part = portfolio_sum_distribution(dist, y);
        for (std::size_t v = 0; v < out.size(); ++v) {
            out[v] += weights[y] * part[v];
        }
    }
    return out;
}

PortfolioValue portfolio_value(const DiscretizedDistribution &dist,
                               std::span<const double> sum_distribution, double q, double alpha) {
    const double step = dist.grid(0).step();
    double mean = 0.0;
    for (std::size_t v = 0; v < sum_distribution.size(); ++v) {
        mean += static_cast<double>(v) * sum_distribution[v];
    }
    PortfolioValue out;
    out.expected_return = step * mean;
    out.var = step * static_cast<double>(var_index(sum_distribution, alpha));
    out.objective = out.expected_return - q * out.var;
    return out;
}

}  // namespace qsbo::classical
