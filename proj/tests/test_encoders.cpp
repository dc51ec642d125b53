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

// Each encoder's good-state probability against the classical sum it is
// meant to load.

#include "support.hpp"

#include "qsbo/classical.hpp"
#include "qsbo/distributions.hpp"
#include "qsbo/encoders.hpp"
#include "qsbo/optimizer.hpp"

#include <doctest.h>

using namespace qsbo;

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

DiscretizedDistribution random_distribution(unsigned n, double lower, double upper,
                                            std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(std::size_t{1} << n);
    double total = 0.0;
    for (auto &x : p) {
        x = u(rng);
        total += x;
    }
    for (auto &x : p) {
        x /= total;
    }
    return {AffineGrid{n, lower, upper}, p};
}

double sin2(double x) { return std::pow(std::sin(x), 2); }

/// Probability that every qubit of `reg` is |0>.
double register_clear(const EncodedProblem &e, const std::string &name) {
    const Register &reg = e.layout[name];
    const StateVector s = run(e.problem.a_circuit);
    return probability(s, [&](BasisIndex i) { return register_value(i, reg) == 0; });
}

}  // namespace

TEST_CASE("quadratic encoder loads sin^2(c (x - y))") {
    std::mt19937_64 rng(41);
    for (unsigned n = 1; n <= 3; ++n) {
        const auto dist = random_distribution(n, 0.0, 2.0, rng);
        for (double y : {0.0, 0.4, 1.0, 2.0}) {
            for (double c : {0.05, 0.3}) {
                double oracle = 0.0;
                for (BasisIndex i = 0; i < dist.probabilities().size(); ++i) {
                    oracle += dist.probability(i) * sin2(c * (dist.value(i) - y));
                }
                const EncodedProblem e = encode_quadratic(dist, y, c);
                CHECK(e.problem.num_qubits() == n + 1);
                CHECK(exact_amplitude(e.problem) == doctest::Approx(oracle).epsilon(1e-12));
            }
        }
    }
    const auto dist = random_distribution(2, 0.0, 2.0, rng);
    CHECK_THROWS(encode_quadratic(dist, 2.5, 0.1));
    CHECK_THROWS(encode_quadratic(dist, 1.0, 0.0));
    CHECK_THROWS(encode_quadratic(dist, 0.0, 1.0));
}

TEST_CASE("decoded quadratic objective is accurate to O(c^2)") {
    const auto dist = discretize_normal(1.0, 1.0, 0.0, 2.0, 2);
    for (double c : {0.2, 0.1, 0.05}) {
        for (double y = 0.0; y <= 2.0; y += 0.25) {
            const double est = decode_quadratic(exact_amplitude(encode_quadratic(dist, y, c).problem), c);
            const double exact = classical::quadratic_objective(dist, y);
            // sin^2(u)/c^2 = u^2/c^2 - u^4/3 + ..., |x - y| <= 2.
            CHECK(std::abs(est - exact) <= 16.0 / 3.0 * c * c);
            CHECK(est <= exact + 1e-12);
        }
    }
}

TEST_CASE("discrete quadratic encoder mixes over the decision register") {
    const auto dist = discretize_normal(1.0, 1.0, 0.0, 2.0, 2);
    const double c = 0.1;
    auto basis_oracle = [&](std::uint64_t y) {
        double t = 0.0;
        for (BasisIndex i = 0; i < 4; ++i) {
            t += dist.probability(i) * sin2(c * (dist.value(i) - static_cast<double>(y)));
        }
        return t;
    };
    for (std::uint64_t y = 0; y < 4; ++y) {
        const auto e = encode_quadratic_discrete(dist, 2, BasisDecision{y}, c);
        CHECK(e.problem.num_qubits() == 5);
        CHECK(exact_amplitude(e.problem) == doctest::Approx(basis_oracle(y)).epsilon(1e-12));
    }
    const AnsatzSpec spec{2, 1};
    const std::vector<double> theta{0.3, -1.2, 2.0, 0.7};
    const auto w = discrete_solution_distribution(theta, spec);
    double mixture = 0.0;
    for (std::uint64_t y = 0; y < 4; ++y) {
        mixture += w[y] * basis_oracle(y);
    }
    const auto e = encode_quadratic_discrete(dist, 2, VariationalDecision{spec, theta}, c);
    CHECK(exact_amplitude(e.problem) == doctest::Approx(mixture).epsilon(1e-12));
    CHECK_THROWS(encode_quadratic_discrete(dist, 2, BasisDecision{4}, c));
    CHECK_THROWS(encode_quadratic_discrete(dist, 2, VariationalDecision{{3, 1}, {}}, c));
}

TEST_CASE("linear offset encoder and its decoder") {
    std::mt19937_64 rng(42);
    const auto dist = random_distribution(3, -1.0, 4.0, rng);
    const double offset = 0.1;
    const double slope = 0.11;
    const double c = 0.05;
    double oracle = 0.0;
    double mean = 0.0;
    for (BasisIndex i = 0; i < 8; ++i) {
        const double f = offset + slope * static_cast<double>(i);
        oracle += dist.probability(i) * sin2(kQuarterPi + c * (f - 0.5));
        mean += dist.probability(i) * f;
    }
    const auto e = encode_linear_offset(dist, offset, slope, c);
    const double a = exact_amplitude(e.problem);
    CHECK(a == doctest::Approx(oracle).epsilon(1e-12));
    // sin^2(pi/4 + u) = 1/2 + sin(2u)/2, so the decode error is O(c^2).
    CHECK(std::abs(decode_linear_offset(a, c, 0.0, 1.0) - mean) < c * c);
    CHECK(decode_linear_offset(0.5, 0.1, 2.0, 6.0) == doctest::Approx(4.0));
    CHECK_THROWS(encode_linear_offset(dist, 0.5, 0.2, c));
}

TEST_CASE("sine approximation spec validation") {
    CHECK_NOTHROW(SineApproxSpec{}.validate());
    CHECK_THROWS(SineApproxSpec{0.0, 0.0, 1.0}.validate());
    CHECK_THROWS(SineApproxSpec{0.1, 1.0, 1.0}.validate());
    CHECK_THROWS(SineApproxSpec{2.0, 0.0, 1.0}.validate());
}

TEST_CASE("affine rotation applies base + scale * f") {
    RegisterLayout l;
    const Register x = l.allocate("x", 2);
    const Qubit marker = l.allocate("marker", 1)[0];
    AffineForm f;
    f.constant = 0.25;
    f.add_register(x, 0.5);
    for (std::uint64_t v = 0; v < 4; ++v) {
        Circuit c(l.width());
        c.add(gates::ry(marker, 0.0));
        if (v & 1U) {
            c.add(gates::x(x[0]));
        }
        if (v & 2U) {
            c.add(gates::x(x[1]));
        }
        append_affine_rotation(c, marker, 0.1, 0.3, f);
        const double angle = 0.1 + 0.3 * (0.25 + 0.5 * static_cast<double>(v));
        CHECK(probability(run(c), qubit_is_one(marker)) ==
              doctest::Approx(sin2(angle / 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("newsvendor encoder") {
    const NewsvendorParams params;
    const auto demand = discretize_normal(2.0, 1.0, 0.0, 7.0, 3);
    const double c = 1e-3;
    const auto [f_min, f_max] = newsvendor_bounds(3, params);
    CHECK(f_min == doctest::Approx(0.0));
    CHECK(f_max == doctest::Approx(std::max(0.2 * 7.0, 0.3 * 7.0)));

    for (std::uint64_t s = 0; s < 8; ++s) {
        CAPTURE(s);
        double oracle = 0.0;
        for (BasisIndex d = 0; d < 8; ++d) {
            const double f = newsvendor_cost(static_cast<double>(s), static_cast<double>(d), params);
            oracle += demand.probability(d) * sin2(kQuarterPi + c * ((f - f_min) / (f_max - f_min) - 0.5));
        }
        const auto e = encode_newsvendor(demand, BasisDecision{s}, params, c);
        CHECK(e.problem.num_qubits() == 8);
        const double a = exact_amplitude(e.problem);
        CHECK(a == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(decode_linear_offset(a, c, f_min, f_max) ==
              doctest::Approx(classical::newsvendor_expectation(demand, s, params)).epsilon(1e-5));
    }
    CHECK(newsvendor_cost(3, 1, params) == doctest::Approx(0.4));
    CHECK(newsvendor_cost(1, 3, params) == doctest::Approx(0.6));
    CHECK_THROWS(NewsvendorParams{0.5, 0.2}.validate());
    const auto shifted = discretize_normal(2.0, 1.0, 1.0, 8.0, 3);
    CHECK_THROWS(encode_newsvendor(shifted, BasisDecision{0}, params, c));
}

TEST_CASE("cdf encoder loads P[X <= lambda] and frees its carries") {
    std::mt19937_64 rng(43);
    for (unsigned n = 1; n <= 4; ++n) {
        const auto dist = random_distribution(n, 0.0, 1.0, rng);
        const auto c = classical::cdf(dist.probabilities());
        for (std::uint64_t lambda = 0; lambda < (std::uint64_t{1} << n); ++lambda) {
            const auto e = encode_cdf(dist, lambda);
            CHECK(exact_amplitude(e.problem) == doctest::Approx(c[lambda]).epsilon(1e-12));
            CHECK(register_clear(e, "carries") == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK_THROWS(encode_cdf(dist, std::uint64_t{1} << n));
    }
}

TEST_CASE("cvar encoder loads the restricted expectation over lambda") {
    std::mt19937_64 rng(44);
    for (unsigned n = 1; n <= 4; ++n) {
        const auto dist = random_distribution(n, 0.0, 1.0, rng);
        for (std::uint64_t lambda = 1; lambda < (std::uint64_t{1} << n); ++lambda) {
            double oracle = 0.0;
            for (std::uint64_t x = 0; x <= lambda; ++x) {
                oracle += dist.probability(x) * static_cast<double>(x) / static_cast<double>(lambda);
            }
            const auto e = encode_cvar(dist, lambda);
            CHECK(exact_amplitude(e.problem) == doctest::Approx(oracle).epsilon(1e-12));
            CHECK(register_clear(e, "flag") == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(register_clear(e, "carries") == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK_THROWS(encode_cvar(dist, 0));
    }
}

TEST_CASE("portfolio layouts follow the qubit formula") {
    for (auto [k, n] : {std::pair{1U, 2U}, {2U, 2U}, {2U, 3U}, {3U, 2U}}) {
        CAPTURE(k);
        CAPTURE(n);
        const unsigned sum = static_cast<unsigned>(
            std::ceil(std::log2(static_cast<double>(k * ((1U << n) - 1) + 1))));
        const unsigned formula = n + k + n * k + sum + 2;
        CHECK(portfolio_layout(k, n, true).width() == formula);
        CHECK(portfolio_layout(k, n, false).width() == formula - 1);
        CHECK(portfolio_layout(k, n, true)["sum"].size() == sum);
    }
}

TEST_CASE("portfolio encoders against the sum distribution") {
    const std::vector<double> mu{0.8, 1.0};
    const std::vector<std::vector<double>> sigma{{1.0, -1.0}, {-1.0, 10.0}};
    const auto dist = discretize_lognormal_multivariate(mu, sigma, {{0.0, 1.0}, {0.0, 1.0}}, 2);
    const std::uint64_t vmax = portfolio_max_sum(dist);
    CHECK(vmax == 6);
    const double c = 0.02;
    for (std::uint64_t y = 0; y < 4; ++y) {
        CAPTURE(y);
        const auto p = classical::portfolio_sum_distribution(dist, y);
        double ret = 0.0;
        for (std::uint64_t v = 0; v <= vmax; ++v) {
            ret += p[v] * sin2(kQuarterPi + c * (static_cast<double>(v) / vmax - 0.5));
        }
        const auto er = encode_portfolio_return(dist, BasisDecision{y}, c);
        CHECK(er.problem.num_qubits() == 12);
        CHECK(exact_amplitude(er.problem) == doctest::Approx(ret).epsilon(1e-12));
        CHECK(register_clear(er, "add_ancillas") == doctest::Approx(1.0).epsilon(1e-12));

        const auto cdf = classical::cdf(p);
        for (std::uint64_t lambda = 0; lambda <= vmax; ++lambda) {
            const auto ec = encode_portfolio_cdf(dist, BasisDecision{y}, lambda);
            CHECK(ec.problem.num_qubits() == 13);
            CHECK(exact_amplitude(ec.problem) == doctest::Approx(cdf[lambda]).epsilon(1e-12));
            CHECK(register_clear(ec, "add_ancillas") == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(register_clear(ec, "compare") == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
