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

#include "qsbo/risk_measures.hpp"

#include "qsbo/encoders.hpp"

#include <map>
#include <stdexcept>

namespace qsbo {

VaRResult value_at_risk(const CdfProblemFactory &factory, std::uint64_t size, double alpha,
                        const EstimatorConfig &config, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("value_at_risk: alpha must be in (0, 1)");
    }
    if (size < 1) {
        throw std::invalid_argument("value_at_risk: empty support");
    }
    VaRResult out;
    std::map<std::uint64_t, double> cache;
    auto cdf = [&](std::uint64_t lambda) {
        if (auto it = cache.find(lambda); it != cache.end()) {
            return it->second;
        }
        const EstimationResult r = estimate(factory(lambda), config, mix_seed(seed, lambda));
        out.queries += r.queries;
        out.probes.emplace_back(lambda, r.estimate);
        cache.emplace(lambda, r.estimate);
        return r.estimate;
    };

    std::uint64_t lo = 0;
    std::uint64_t hi = size - 1;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (cdf(mid) >= alpha) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    while (lo > 0 && cdf(lo - 1) >= alpha) {
        --lo;
    }
    out.index = lo;
    out.value = static_cast<double>(lo);
    return out;
}

VaRResult value_at_risk(const DiscretizedDistribution &dist, double alpha,
                        const EstimatorConfig &config, std::uint64_t seed) {
    if (dist.dimensions() != 1) {
        throw std::invalid_argument("value_at_risk: distribution must be one-dimensional");
    }
    VaRResult r = value_at_risk([&](std::uint64_t l) { return encode_cdf(dist, l).problem; },
                                dist.grid().size(), alpha, config, seed);
    r.value = dist.grid().value(r.index);
    return r;
}

CVaRResult conditional_value_at_risk(const DiscretizedDistribution &dist, double alpha,
                                     const EstimatorConfig &config, std::uint64_t seed) {
    const VaRResult var = value_at_risk(dist, alpha, config, seed);
    CVaRResult out;
    out.var_index = var.index;
    out.queries = var.queries;
    if (var.index == 0) {
        return out;
    }
    const std::uint64_t tail_seed = mix_seed(seed, dist.grid().size() + 1);
    const std::uint64_t cvar_seed = mix_seed(seed, dist.grid().size() + 2);
    const EstimationResult tail = estimate(encode_cdf(dist, var.index).problem, config, tail_seed);
    const EstimationResult restricted =
        estimate(encode_cvar(dist, var.index).problem, config, cvar_seed);
    out.queries += tail.queries + restricted.queries;
    out.tail_probability = tail.estimate;
    if (tail.estimate <= 0.0) {
        throw std::runtime_error("conditional_value_at_risk: estimated tail probability is zero");
    }
    out.index_value = restricted.estimate * static_cast<double>(var.index) / tail.estimate;
    return out;
}

double index_to_sample(const DiscretizedDistribution &dist, double index_value) {
    const auto &g = dist.grid();
    return g.lower + g.step() * index_value;
}

}  // namespace qsbo
