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

#include "qsbo/amplitude_estimation.hpp"

#include "qsbo/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qsbo {

double exact_amplitude(const AEProblem &problem, Backend backend) {
    return probability(run(problem.a_circuit, backend), problem.good, backend);
}

Circuit grover_operator(const AEProblem &problem) {
    const unsigned n = problem.num_qubits();
    Circuit q(n);
    const BasisPredicate good = problem.good;
    q.add(gates::phase_flip([good](BasisIndex i) { return !good(i); }));
    q.append(problem.a_circuit.adjoint());
    q.add(gates::phase_flip([](BasisIndex i) { return i == 0; }));
    q.append(problem.a_circuit);
    return q;
}

std::vector<double> grover_power_probabilities(const AEProblem &problem, unsigned max_power) {
    const Circuit q = grover_operator(problem);
    StateVector state = run(problem.a_circuit);
    std::vector<double> out;
    out.reserve(max_power + 1);
    out.push_back(probability(state, problem.good));
    for (unsigned k = 1; k <= max_power; ++k) {
        run_inplace(q, state);
        out.push_back(probability(state, problem.good));
    }
    return out;
}

std::string to_string(EstimatorMethod method) {
    switch (method) {
    case EstimatorMethod::Canonical: return "canonical";
    case EstimatorMethod::MLE: return "mle";
    case EstimatorMethod::Exact: return "exact";
    }
    return "unknown";
}

EstimatorMethod estimator_from_string(const std::string &name) {
    if (name == "canonical") {
        return EstimatorMethod::Canonical;
    }
    if (name == "mle") {
        return EstimatorMethod::MLE;
    }
    if (name == "exact") {
        return EstimatorMethod::Exact;
    }
    throw std::invalid_argument("unknown estimator '" + name + "' (expected canonical, mle or exact)");
}

MLESchedule MLESchedule::exponential(unsigned j, std::uint64_t shots) {
    MLESchedule s;
    s.powers = {0};
    for (unsigned i = 0; i < j; ++i) {
        s.powers.push_back(std::uint64_t{1} << i);
    }
    s.shots = shots;
    return s;
}

void MLESchedule::validate() const {
    if (powers.empty()) {
        throw std::invalid_argument("MLE schedule: powers must be non-empty");
    }
    for (std::size_t i = 1; i < powers.size(); ++i) {
        if (powers[i] <= powers[i - 1]) {
            throw std::invalid_argument("MLE schedule: powers must be strictly increasing");
        }
    }
    if (powers.back() > 4096) {
        throw std::invalid_argument("MLE schedule: largest power exceeds 4096");
    }
    if (shots < 1) {
        throw std::invalid_argument("MLE schedule: shots must be >= 1");
    }
}

namespace {

std::vector<double> canonical_distribution(const AEProblem &problem, unsigned m) {
    if (m < 1 || m > 12) {
        throw std::invalid_argument("canonical_qae: m must be in [1, 12]");
    }
    const unsigned n = problem.num_qubits();
    const unsigned width = n + m;
    std::vector<Qubit> state_qubits(n);
    std::iota(state_qubits.begin(), state_qubits.end(), 0U);
    std::vector<Qubit> eval_qubits(m);
    std::iota(eval_qubits.begin(), eval_qubits.end(), n);

    Circuit q_wide(width);
    q_wide.append_mapped(grover_operator(problem), state_qubits);

    Circuit c(width);
    c.append_mapped(problem.a_circuit, state_qubits);
    for (Qubit e : eval_qubits) {
        c.add(gates::h(e));
    }
    for (unsigned j = 0; j < m; ++j) {
        const Circuit cq = q_wide.controlled({eval_qubits[j], true});
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << j); ++r) {
            c.append(cq);
        }
    }
    c.append_mapped(qft(m, true), eval_qubits);

    const StateVector out = run(c);
    std::vector<double> dist(std::size_t{1} << m, 0.0);
    const auto amps = out.amplitudes();
    for (BasisIndex i = 0; i < amps.size(); ++i) {
        dist[i >> n] += std::norm(amps[i]);
    }
    return dist;
}

double grid_estimate(std::uint64_t y, unsigned m) {
    const double s = std::sin(static_cast<double>(y) * std::numbers::pi /
                              static_cast<double>(std::uint64_t{1} << m));
    return s * s;
}

double log_likelihood(double theta, const std::vector<std::uint64_t> &powers,
                      const std::vector<double> &hits, double shots) {
    constexpr double kFloor = 1e-300;
    double total = 0.0;
    for (std::size_t k = 0; k < powers.size(); ++k) {
        const double angle = static_cast<double>(2 * powers[k] + 1) * theta;
        const double s = std::sin(angle);
        const double c = std::cos(angle);
        if (hits[k] > 0.0) {
            total += hits[k] * std::log(std::max(s * s, kFloor));
        }
        if (shots - hits[k] > 0.0) {
            total += (shots - hits[k]) * std::log(std::max(c * c, kFloor));
        }
    }
    return total;
}

/// d/dtheta of log_likelihood.
double log_likelihood_slope(double theta, const std::vector<std::uint64_t> &powers,
                            const std::vector<double> &hits, double shots) {
    double total = 0.0;
    for (std::size_t k = 0; k < powers.size(); ++k) {
        const double w = static_cast<double>(2 * powers[k] + 1);
        const double s = std::sin(w * theta);
        const double c = std::cos(w * theta);
        total += 2.0 * w * (hits[k] * c / s - (shots - hits[k]) * s / c);
    }
    return total;
}

std::uint64_t mle_queries(const MLESchedule &schedule) {
    std::uint64_t q = 0;
    for (auto p : schedule.powers) {
        q += schedule.shots * (p + 1);
    }
    return q;
}

template <class HitFn>
EstimationResult run_mle(const AEProblem &problem, const MLESchedule &schedule, HitFn &&hit_fn) {
    schedule.validate();
    const Circuit q = grover_operator(problem);
    StateVector state = run(problem.a_circuit);
    std::uint64_t applied = 0;

    EstimationResult r;
    r.method = EstimatorMethod::MLE;
    r.powers = schedule.powers;
    r.shots = schedule.shots;
    for (auto power : schedule.powers) {
        for (; applied < power; ++applied) {
            run_inplace(q, state);
        }
        r.hits.push_back(hit_fn(probability(state, problem.good)));
    }
    r.estimate = mle_maximize(r.powers, r.hits, r.shots);
    r.queries = mle_queries(schedule);
    return r;
}

}  // namespace

EstimationResult canonical_qae(const AEProblem &problem, unsigned m) {
    EstimationResult r;
    r.method = EstimatorMethod::Canonical;
    r.outcome_distribution = canonical_distribution(problem, m);
    const auto best = std::max_element(r.outcome_distribution.begin(), r.outcome_distribution.end());
    r.estimate = grid_estimate(static_cast<std::uint64_t>(best - r.outcome_distribution.begin()), m);
    r.queries = std::uint64_t{1} << m;
    return r;
}

EstimationResult canonical_qae_sampled(const AEProblem &problem, unsigned m, ShotSampler &sampler) {
    EstimationResult r;
    r.method = EstimatorMethod::Canonical;
    r.outcome_distribution = canonical_distribution(problem, m);
    const std::uint64_t y = sampler.discrete(r.outcome_distribution);
    r.sampled_outcome = y;
    r.estimate = grid_estimate(y, m);
    r.queries = std::uint64_t{1} << m;
    return r;
}

EstimationResult mle_qae(const AEProblem &problem, const MLESchedule &schedule,
                         ShotSampler &sampler) {
    return run_mle(problem, schedule, [&](double p) {
        return static_cast<double>(sampler.binomial(schedule.shots, p));
    });
}

EstimationResult mle_qae_expected(const AEProblem &problem, const MLESchedule &schedule) {
    return run_mle(problem, schedule,
                   [&](double p) { return static_cast<double>(schedule.shots) * p; });
}

double mle_maximize(const std::vector<std::uint64_t> &powers, const std::vector<double> &hits,
                    std::uint64_t shots) {
    if (powers.empty() || powers.size() != hits.size() || shots == 0) {
        throw std::invalid_argument("mle_maximize: inconsistent observations");
    }
    const auto n = static_cast<double>(shots);
    if (std::any_of(hits.begin(), hits.end(), [&](double h) { return !(h >= 0.0 && h <= n); })) {
        throw std::invalid_argument("mle_maximize: hits must lie in [0, shots]");
    }
    constexpr double kEdge = 1e-12;
    if (std::all_of(hits.begin(), hits.end(), [&](double h) { return h >= n - kEdge; })) {
        return 1.0;
    }
    if (std::all_of(hits.begin(), hits.end(), [](double h) { return h <= kEdge; })) {
        return 0.0;
    }

    constexpr int kGrid = 10000;
    const double upper = std::numbers::pi / 2.0;
    const double step = upper / (kGrid - 1);
    int best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        const double ll = log_likelihood(i * step, powers, hits, n);
        if (ll > best_ll) {
            best_ll = ll;
            best = i;
        }
    }

    double lo = std::max(0.0, (best - 1) * step);
    double hi = std::min(upper, (best + 1) * step);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = log_likelihood(x1, powers, hits, n);
    double f2 = log_likelihood(x2, powers, hits, n);
    while (hi - lo > 1e-10) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = log_likelihood(x1, powers, hits, n);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = log_likelihood(x2, powers, hits, n);
        }
    }
    double theta = 0.5 * (lo + hi);
    if (log_likelihood(theta, powers, hits, n) < best_ll) {
        theta = best * step;
    }
    // Golden section stalls near sqrt(eps) on the flat top; finish on the slope.
    double a = std::max(0.0, theta - step);
    double b = std::min(upper, theta + step);
    const double ga = log_likelihood_slope(a, powers, hits, n);
    const double gb = log_likelihood_slope(b, powers, hits, n);
    if (std::isfinite(ga) && std::isfinite(gb) && ga > 0.0 && gb < 0.0) {
        for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
            const double mid = 0.5 * (a + b);
            const double g = log_likelihood_slope(mid, powers, hits, n);
            if (g > 0.0) {
                a = mid;
            } else {
                b = mid;
            }
        }
        const double polished = 0.5 * (a + b);
        if (log_likelihood(polished, powers, hits, n) >= log_likelihood(theta, powers, hits, n)) {
            theta = polished;
        }
    }
    const double s = std::sin(theta);
    return std::clamp(s * s, 0.0, 1.0);
}

EstimationResult median_repeat(const Estimator &estimator, unsigned repetitions,
                               ShotSampler &sampler) {
    if (repetitions < 1 || repetitions % 2 == 0) {
        throw std::invalid_argument("median_repeat: repetitions must be odd and >= 1");
    }
    std::vector<EstimationResult> runs;
    runs.reserve(repetitions);
    std::uint64_t queries = 0;
    for (unsigned r = 0; r < repetitions; ++r) {
        ShotSampler child = sampler.split(r);
        runs.push_back(estimator(child));
        queries += runs.back().queries;
    }
    std::vector<std::size_t> order(repetitions);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return runs[a].estimate < runs[b].estimate;
    });
    EstimationResult out = runs[order[repetitions / 2]];
    out.queries = queries;
    return out;
}

EstimationResult estimate(const AEProblem &problem, const EstimatorConfig &config,
                          std::uint64_t seed) {
    if (config.repetitions < 1 || config.repetitions % 2 == 0) {
        throw std::invalid_argument("estimate: repetitions must be odd and >= 1");
    }
    ShotSampler sampler(seed);
    switch (config.method) {
    case EstimatorMethod::Exact: {
        EstimationResult r;
        r.method = EstimatorMethod::Exact;
        r.estimate = exact_amplitude(problem);
        r.queries = 1;
        return r;
    }
    case EstimatorMethod::Canonical:
        if (config.sampled) {
            return median_repeat(
                [&](ShotSampler &s) { return canonical_qae_sampled(problem, config.m, s); },
                config.repetitions, sampler);
        } else {
            EstimationResult r = canonical_qae(problem, config.m);
            r.queries *= config.repetitions;
            return r;
        }
    case EstimatorMethod::MLE:
        if (config.expected_hits) {
            EstimationResult r = mle_qae_expected(problem, config.schedule);
            r.queries *= config.repetitions;
            return r;
        }
        return median_repeat([&](ShotSampler &s) { return mle_qae(problem, config.schedule, s); },
                             config.repetitions, sampler);
    }
    throw std::invalid_argument("estimate: unknown method");
}

}  // namespace qsbo
