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

#include "qsbo/classical.hpp"
#include "qsbo/distributions.hpp"
#include "qsbo/encoders.hpp"
#include "qsbo/risk_measures.hpp"

#include <doctest.h>

#include <set>

using namespace qsbo;

namespace {

DiscretizedDistribution random_distribution(unsigned n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(std::size_t{1} << n);
    double total = 0.0;
    for (auto &x : p) {
        x = u(rng) < 0.2 ? 0.0 : u(rng);
        total += x;
    }
    if (total == 0.0) {
        p.back() = total = 1.0;
    }
    for (auto &x : p) {
        x /= total;
    }
    return {AffineGrid{n, 10.0, 20.0}, p};
}

}  // namespace

TEST_CASE("classical risk oracles on a hand example") {
    const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    CHECK(classical::cdf(p) == std::vector<double>{0.1, 0.1 + 0.2, 0.1 + 0.2 + 0.3, 1.0});
    CHECK(classical::var_index(p, 0.05) == 0);
    CHECK(classical::var_index(p, 0.1) == 0);
    CHECK(classical::var_index(p, 0.25) == 1);
    CHECK(classical::var_index(p, 0.95) == 3);
    CHECK(classical::cvar_index(p, 2) == doctest::Approx((0.2 + 0.6) / 0.6));
    CHECK(classical::cvar_index(p, 0) == 0.0);
}

TEST_CASE("exact-estimator VaR equals the CDF quantile") {
    std::mt19937_64 rng(51);
    EstimatorConfig exact;
    for (int trial = 0; trial < 10; ++trial) {
        const auto dist = random_distribution(1 + trial % 4, rng);
        const auto &p = dist.probabilities();
        for (double alpha = 0.05; alpha < 1.0; alpha += 0.1) {
            const auto r = value_at_risk(dist, alpha, exact, 3);
            CHECK(r.index == classical::var_index(p, alpha));
            CHECK(r.value == doctest::Approx(dist.grid().value(r.index)));
            std::set<std::uint64_t> probed;
            for (const auto &[lambda, est] : r.probes) {
                CHECK(lambda + 1 < p.size());
                CHECK(probed.insert(lambda).second);
            }
            CHECK(r.queries == r.probes.size());
        }
    }
    const auto dist = random_distribution(2, rng);
    CHECK_THROWS(value_at_risk(dist, 0.0, exact, 1));
    CHECK_THROWS(value_at_risk(dist, 1.0, exact, 1));
}

TEST_CASE("VaR bisection uses logarithmically many probes") {
    EstimatorConfig exact;
    const std::vector<double> uniform(16, 1.0 / 16.0);
    const DiscretizedDistribution dist(AffineGrid{4, 0.0, 15.0}, uniform);
    const auto r = value_at_risk(dist, 0.5, exact, 0);
    CHECK(r.index == 7);
    CHECK(r.probes.size() <= 5);
}

TEST_CASE("generic VaR repairs non-monotone probes") {
    // Estimated CDF that dips below alpha after first reaching it. The
    // result must reach alpha while its predecessor does not.
    const std::vector<double> fake_cdf{0.0, 0.6, 0.3, 0.7, 0.8, 1.0};
    const CdfProblemFactory factory = [&](std::uint64_t lambda) {
        return testing::problem_with_amplitude(fake_cdf[lambda]);
    };
    EstimatorConfig exact;
    const auto r = value_at_risk(factory, fake_cdf.size(), 0.5, exact, 0);
    CHECK(fake_cdf[r.index] >= 0.5);
    CHECK(r.index > 0);
    CHECK(fake_cdf[r.index - 1] < 0.5);
}

TEST_CASE("exact-estimator CVaR equals the restricted expectation") {
    std::mt19937_64 rng(52);
    EstimatorConfig exact;
    for (int trial = 0; trial < 10; ++trial) {
        const auto dist = random_distribution(1 + trial % 4, rng);
        const auto &p = dist.probabilities();
        for (double alpha : {0.05, 0.3, 0.6, 0.95}) {
            const auto r = conditional_value_at_risk(dist, alpha, exact, 4);
            const auto lambda = classical::var_index(p, alpha);
            CHECK(r.var_index == lambda);
            CHECK(r.index_value ==
                  doctest::Approx(classical::cvar_index(p, lambda)).epsilon(1e-9));
            const double sample = index_to_sample(dist, r.index_value);
            CHECK(sample == doctest::Approx(10.0 + dist.grid().step() * r.index_value));
        }
    }
}

TEST_CASE("shot-based VaR lands next to the quantile") {
    const auto dist = discretize_normal(3.5, 1.5, 0.0, 7.0, 3);
    EstimatorConfig mle;
    mle.method = EstimatorMethod::MLE;
    mle.schedule = MLESchedule::exponential(4, 1024);
    mle.repetitions = 5;
    for (double alpha : {0.1, 0.5, 0.9}) {
        const auto r = value_at_risk(dist, alpha, mle, 17);
        const auto want = classical::var_index(dist.probabilities(), alpha);
        CHECK(r.index + 1 >= want);
        CHECK(r.index <= want + 1);
        const auto again = value_at_risk(dist, alpha, mle, 17);
        CHECK(again.index == r.index);
        CHECK(again.queries == r.queries);
    }
}

TEST_CASE("newsvendor oracle table") {
    const auto demand = discretize_normal(2.0, 1.0, 0.0, 7.0, 3);
    const std::vector<double> expected{0.60417, 0.33129, 0.17995, 0.22900,
                                       0.39958, 0.59729, 0.79722, 0.99722};
    std::uint64_t argmin = 0;
    for (std::uint64_t s = 0; s < 8; ++s) {
        const double v = classical::newsvendor_expectation(demand, s, {});
        CHECK(v == doctest::Approx(expected[s]).epsilon(1e-4));
        if (v < classical::newsvendor_expectation(demand, argmin, {})) {
            argmin = s;
        }
    }
    CHECK(argmin == 2);
}

TEST_CASE("toy quadratic oracle is symmetric about the mean") {
    const auto dist = discretize_normal(1.0, 1.0, 0.0, 2.0, 2);
    CHECK(classical::quadratic_objective(dist, 1.0) == doctest::Approx(0.4583844).epsilon(1e-6));
    for (double d : {0.1, 0.3, 0.9}) {
        CHECK(classical::quadratic_objective(dist, 1.0 - d) ==
              doctest::Approx(classical::quadratic_objective(dist, 1.0 + d)).epsilon(1e-12));
        CHECK(classical::quadratic_objective(dist, 1.0 + d) >
              classical::quadratic_objective(dist, 1.0));
    }
}

TEST_CASE("portfolio sum distributions") {
    const auto dist = discretize_lognormal_multivariate({0.8, 1.0}, {{1.0, -1.0}, {-1.0, 10.0}},
                                                        {{0.0, 1.0}, {0.0, 1.0}}, 2);
    const auto none = classical::portfolio_sum_distribution(dist, 0);
    CHECK(none[0] == doctest::Approx(1.0));
    const auto first = classical::portfolio_sum_distribution(dist, 1);
    const auto m0 = dist.marginal(0);
    for (std::size_t v = 0; v < 4; ++v) {
        CHECK(first[v] == doctest::Approx(m0[v]).epsilon(1e-12));
    }
    const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
    const auto mix = classical::portfolio_sum_distribution(dist, w);
    for (std::size_t v = 0; v < mix.size(); ++v) {
        double t = 0.0;
        for (std::uint64_t y = 0; y < 4; ++y) {
            t += w[y] * classical::portfolio_sum_distribution(dist, y)[v];
        }
        CHECK(mix[v] == doctest::Approx(t).epsilon(1e-12));
    }
    const auto pv = classical::portfolio_value(dist, first, 0.9, 0.05);
    double mean = 0.0;
    for (std::size_t v = 0; v < 4; ++v) {
        mean += first[v] * dist.grid(0).value(v);
    }
    CHECK(pv.expected_return == doctest::Approx(mean).epsilon(1e-12));
    CHECK(pv.var == doctest::Approx(dist.grid(0).value(classical::var_index(first, 0.05))));
    CHECK(pv.objective == doctest::Approx(pv.expected_return - 0.9 * pv.var));
}

TEST_CASE("distributions") {
    const AffineGrid g{2, -1.0, 2.0};
    CHECK(g.values() == std::vector<double>{-1.0, 0.0, 1.0, 2.0});
    const auto normal = discretize_normal(0.0, 1.0, -1.0, 2.0, 2);
    CHECK(normal.probability(1) > normal.probability(3));
    CHECK(normal.probability(0) == doctest::Approx(normal.probability(2)).epsilon(1e-12));
    CHECK_THROWS(DiscretizedDistribution(g, {0.5, 0.5}));
    CHECK_THROWS(DiscretizedDistribution(g, {0.5, 0.5, 0.5, -0.5}));
    CHECK_THROWS(discretize_lognormal_multivariate({0.0, 0.0}, {{1.0, 2.0}, {2.0, 1.0}},
                                                   {{0.0, 1.0}, {0.0, 1.0}}, 2));
    CHECK_THROWS(discretize_lognormal_multivariate({0.0, 0.0}, {{1.0, 0.5}, {0.4, 1.0}},
                                                   {{0.0, 1.0}, {0.0, 1.0}}, 2));

    const auto ln = discretize_lognormal_multivariate({0.8, 1.0}, {{1.0, -1.0}, {-1.0, 10.0}},
                                                      {{0.0, 1.0}, {0.0, 1.0}}, 2);
    CHECK(ln.num_qubits() == 4);
    CHECK(ln.component(0b1101, 0) == 0b01);
    CHECK(ln.component(0b1101, 1) == 0b11);
    // Zero density wherever a coordinate is 0.
    for (BasisIndex j = 0; j < 16; ++j) {
        if (ln.component(j, 0) == 0 || ln.component(j, 1) == 0) {
            CHECK(ln.probability(j) == 0.0);
        }
    }
}
