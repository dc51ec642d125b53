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

#include "qsbo/applications.hpp"

#include "qsbo/classical.hpp"
#include "qsbo/encoders.hpp"
#include "qsbo/optimizer.hpp"
#include "qsbo/risk_measures.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qsbo {

using nlohmann::json;

const ResultSeries *ResultRecord::find_series(const std::string &name) const {
    for (const auto &s : series) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

namespace {

constexpr double kThetaBound = 2.0 * std::numbers::pi;

QubitBudget budget_from(const EncodedProblem &e) {
    QubitBudget b;
    unsigned sum = 0;
    for (const auto &[name, reg] : e.layout.entries()) {
        b.roles.emplace_back(name, static_cast<unsigned>(reg.size()));
        sum += static_cast<unsigned>(reg.size());
    }
    b.total = e.problem.num_qubits();
    if (sum != b.total) {
        throw std::logic_error("qubit budget: roles do not add up to the circuit width");
    }
    return b;
}

DiscretizedDistribution uniform_distribution(unsigned dims, unsigned n, double lower, double upper) {
    std::vector<AffineGrid> grids(dims, AffineGrid{n, lower, upper});
    const std::size_t size = std::size_t{1} << (dims * n);
    return {std::move(grids), std::vector<double>(size, 1.0 / static_cast<double>(size))};
}

/// Runs body(i) for i in [0, count) across OpenMP threads, rethrowing the
/// first exception in index order.
template <class Body>
void parallel_for(std::size_t count, Body &&body) {
    std::vector<std::exception_ptr> errors(count);
    const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < total; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

OptimizerConfig optimizer_config(const ExperimentConfig &config, std::vector<double> lower,
                                 std::vector<double> upper, double init_low, double init_high) {
    OptimizerConfig o;
    o.initial = config.optimizer.initial;
    o.lower = std::move(lower);
    o.upper = std::move(upper);
    o.rho_begin = config.optimizer.rho_begin;
    o.rho_end = config.optimizer.rho_end;
    o.max_evaluations = config.optimizer.max_evaluations;
    o.restarts = config.optimizer.restarts;
    o.seed = config.seed;
    o.init_low = init_low;
    o.init_high = init_high;
    return o;
}

void record_multistart(ResultRecord &rec, const MultiStartResult &ms, const RowOracle &oracle) {
    ResultSeries trace{"trace", {}, oracle};
    for (const auto &run : ms.runs) {
        for (const auto &t : run.trace) {
            trace.rows.push_back({t.params, t.value, oracle(t.params), t.queries});
            rec.total_queries += t.queries;
        }
    }
    rec.trace_length = trace.rows.size();
    const auto &best = ms.incumbent();
    rec.incumbent_params = best.best_params;
    rec.incumbent_value = best.best_value;
    rec.incumbent_exact = oracle(best.best_params);
    rec.status = to_string(best.status);
    rec.series.push_back(std::move(trace));
}

/// A discrete decision problem driven through the trial state.
struct DiscreteProblem {
    AnsatzSpec spec;
    Sense sense = Sense::Minimize;
    std::function<ObjectiveValue(const DecisionInput &, std::uint64_t seed)> evaluate;
    std::function<double(std::uint64_t basis)> exact_basis;
    std::function<double(std::span<const double> theta)> exact_theta;
};

void run_discrete(const ExperimentConfig &config, const DiscreteProblem &p, ResultRecord &rec) {
    const std::size_t candidates = std::size_t{1} << p.spec.k;
    ResultSeries table{"candidates", std::vector<ResultRow>(candidates),
                       [f = p.exact_basis](std::span<const double> b) {
                           return f(static_cast<std::uint64_t>(std::llround(b[0])));
                       }};
    parallel_for(candidates, [&](std::size_t b) {
        const ObjectiveValue v = p.evaluate(BasisDecision{b}, mix_seed(config.seed, b));
        table.rows[b] = {{static_cast<double>(b)}, v.value, p.exact_basis(b), v.queries};
    });
    for (const auto &row : table.rows) {
        rec.total_queries += row.queries;
    }
    rec.series.push_back(table);

    if (config.mode == RunMode::Sweep) {
        std::size_t best = 0;
        for (std::size_t b = 1; b < candidates; ++b) {
            const double a = table.rows[b].estimate;
            const double c = table.rows[best].estimate;
            if (p.sense == Sense::Maximize ? a > c : a < c) {
                best = b;
            }
        }
        rec.incumbent_params = table.rows[best].param;
        rec.incumbent_value = table.rows[best].estimate;
        rec.incumbent_exact = table.rows[best].exact;
        rec.solution = std::pair<std::uint64_t, double>{best, 1.0};
        rec.solution_distribution[best] = 1.0;
        rec.status = "sweep";
        return;
    }

    const std::size_t dim = p.spec.num_parameters();
    const OptimizerConfig oc =
        optimizer_config(config, std::vector<double>(dim, -kThetaBound),
                         std::vector<double>(dim, kThetaBound), -std::numbers::pi, std::numbers::pi);
    const ObjectiveEvaluator evaluator{
        [&](std::span<const double> theta, std::uint64_t seed) {
            return p.evaluate(VariationalDecision{p.spec, {theta.begin(), theta.end()}}, seed);
        },
        p.sense};
    const MultiStartResult ms = optimize_multistart(evaluator, oc, dim);
    record_multistart(rec, ms, p.exact_theta);

    const auto dist = discrete_solution_distribution(rec.incumbent_params, p.spec);
    for (std::size_t b = 0; b < dist.size(); ++b) {
        rec.solution_distribution[b] = dist[b];
    }
    rec.solution = extract_solution(ms.incumbent(), p.spec);
}

double mixture(std::span<const double> theta, const AnsatzSpec &spec,
               const std::function<double(std::uint64_t)> &f) {
    const auto dist = discrete_solution_distribution(theta, spec);
    double total = 0.0;
    for (std::size_t b = 0; b < dist.size(); ++b) {
        total += dist[b] * f(b);
    }
    return total;
}

ResultRecord base_record(const ExperimentConfig &config) {
    config.validate();
    ResultRecord rec;
    rec.application = config.application;
    rec.seed = config.seed;
    rec.config_echo = config_to_json(config);
    return rec;
}

ResultRecord run_quadratic_continuous(const ExperimentConfig &config) {
    ResultRecord rec = base_record(config);
    const auto &q = config.quadratic;
    const auto dist = discretize_normal(q.mu, q.sigma, q.lower, q.upper, q.n);
    const RowOracle oracle = [dist](std::span<const double> y) {
        return classical::quadratic_objective(dist, y[0]);
    };
    const double c_plain = config.mode == RunMode::Optimize ? q.c_optimize : q.c;
    auto evaluate = [&](const EstimatorConfig &est, double y, std::uint64_t seed) {
        const double c = est.method == EstimatorMethod::Canonical ? q.c_canonical : c_plain;
        const EstimationResult r = estimate(encode_quadratic(dist, y, c).problem, est, seed);
        return ObjectiveValue{decode_quadratic(r.estimate, c), r.queries};
    };
    rec.qubit_budget = budget_from(encode_quadratic(dist, q.lower, q.c));
    rec.circuit_widths["a_operator"] = rec.qubit_budget.total;

    if (config.mode == RunMode::Sweep) {
        std::vector<std::pair<std::string, EstimatorConfig>> estimators;
        EstimatorConfig canonical = config.estimator;
        canonical.method = EstimatorMethod::Canonical;
        EstimatorConfig mle = config.estimator;
        mle.method = EstimatorMethod::MLE;
        estimators.emplace_back("canonical", canonical);
        estimators.emplace_back("mle", mle);
        if (config.estimator.method == EstimatorMethod::Exact) {
            estimators.emplace_back("exact", config.estimator);
        }
        const std::size_t points = q.grid_points;
        for (const auto &[name, est] : estimators) {
            ResultSeries s{name, std::vector<ResultRow>(points), oracle};
            parallel_for(points, [&, &est = est](std::size_t i) {
                const double y = q.lower + (q.upper - q.lower) * static_cast<double>(i) /
                                               static_cast<double>(points - 1);
                const ObjectiveValue v = evaluate(est, y, mix_seed(config.seed, i));
                const std::vector<double> param{y};
                s.rows[i] = {param, v.value, oracle(param), v.queries};
            });
            for (const auto &row : s.rows) {
                rec.total_queries += row.queries;
            }
            rec.series.push_back(std::move(s));
        }
        const ResultSeries *primary = rec.find_series(to_string(config.estimator.method));
        std::size_t best = 0;
        for (std::size_t i = 1; i < primary->rows.size(); ++i) {
            if (primary->rows[i].estimate < primary->rows[best].estimate) {
                best = i;
            }
        }
        rec.incumbent_params = primary->rows[best].param;
        rec.incumbent_value = primary->rows[best].estimate;
        rec.incumbent_exact = primary->rows[best].exact;
        rec.status = "sweep";
        return rec;
    }

    const OptimizerConfig oc = optimizer_config(config, {q.lower}, {q.upper}, q.lower, q.upper);
    const ObjectiveEvaluator evaluator{
        [&](std::span<const double> y, std::uint64_t seed) {
            return evaluate(config.estimator, y[0], seed);
        },
        Sense::Minimize};
    record_multistart(rec, optimize_multistart(evaluator, oc, 1), oracle);
    return rec;
}

ResultRecord run_quadratic_discrete(const ExperimentConfig &config) {
    ResultRecord rec = base_record(config);
    const auto &q = config.quadratic;
    const auto dist = discretize_normal(q.mu, q.sigma, q.lower, q.upper, q.n);
    const double c = config.estimator.method == EstimatorMethod::Canonical ? q.c_canonical : q.c;
    rec.qubit_budget = budget_from(encode_quadratic_discrete(dist, q.k, BasisDecision{0}, c));
    rec.circuit_widths["a_operator"] = rec.qubit_budget.total;

    DiscreteProblem p;
    p.spec = {q.k, q.reps};
    p.sense = Sense::Minimize;
    p.evaluate = [&](const DecisionInput &y, std::uint64_t seed) {
        const EstimationResult r =
            estimate(encode_quadratic_discrete(dist, q.k, y, c).problem, config.estimator, seed);
        return ObjectiveValue{decode_quadratic(r.estimate, c), r.queries};
    };
    p.exact_basis = [dist](std::uint64_t y) {
        return classical::quadratic_objective(dist, static_cast<double>(y));
    };
    p.exact_theta = [spec = p.spec, f = p.exact_basis](std::span<const double> theta) {
        return mixture(theta, spec, f);
    };
    run_discrete(config, p, rec);
    return rec;
}

}  // namespace

QubitBudget report_qubit_budget(Application app, unsigned k, unsigned n) {
    switch (app) {
    case Application::QuadraticContinuous:
        return budget_from(encode_quadratic(uniform_distribution(1, n, 0.0, 1.0), 0.0, 0.1));
    case Application::QuadraticDiscrete:
        return budget_from(encode_quadratic_discrete(uniform_distribution(1, n, 0.0, 1.0), k,
                                                     BasisDecision{0}, 1e-3));
    case Application::Newsvendor:
        return budget_from(encode_newsvendor(
            uniform_distribution(1, n, 0.0, static_cast<double>((1U << n) - 1)), BasisDecision{0},
            NewsvendorParams{}, 1e-3));
    case Application::Portfolio:
        return budget_from(
            encode_portfolio_cdf(uniform_distribution(k, n, 0.0, 1.0), BasisDecision{0}, 0));
    }
    throw std::invalid_argument("report_qubit_budget: unsupported application");
}

ResultRecord run_quadratic(const ExperimentConfig &config) {
    if (config.application == Application::QuadraticDiscrete) {
        return run_quadratic_discrete(config);
    }
    if (config.application != Application::QuadraticContinuous) {
        throw std::invalid_argument("run_quadratic: not a quadratic configuration");
    }
    return run_quadratic_continuous(config);
}

ResultRecord run_newsvendor(const ExperimentConfig &config) {
    if (config.application != Application::Newsvendor) {
        throw std::invalid_argument("run_newsvendor: not a newsvendor configuration");
    }
    ResultRecord rec = base_record(config);
    const auto &nv = config.newsvendor;
    const double top = static_cast<double>((1U << nv.n) - 1);
    const auto demand = discretize_normal(nv.mu, nv.sigma, 0.0, top, nv.n);
    const NewsvendorParams params{nv.p_buy, nv.p_sell};
    const auto [f_min, f_max] = newsvendor_bounds(nv.n, params);
    rec.qubit_budget = budget_from(encode_newsvendor(demand, BasisDecision{0}, params, nv.c));
    rec.circuit_widths["a_operator"] = rec.qubit_budget.total;

    DiscreteProblem p;
    p.spec = {nv.n, nv.reps};
    p.sense = Sense::Minimize;
    p.evaluate = [&, f_min = f_min, f_max = f_max](const DecisionInput &s, std::uint64_t seed) {
        const EstimationResult r =
            estimate(encode_newsvendor(demand, s, params, nv.c).problem, config.estimator, seed);
        return ObjectiveValue{decode_linear_offset(r.estimate, nv.c, f_min, f_max), r.queries};
    };
    p.exact_basis = [demand, params](std::uint64_t s) {
        return classical::newsvendor_expectation(demand, s, params);
    };
    p.exact_theta = [spec = p.spec, f = p.exact_basis](std::span<const double> theta) {
        return mixture(theta, spec, f);
    };
    run_discrete(config, p, rec);
    return rec;
}

ResultRecord run_portfolio(const ExperimentConfig &config) {
    if (config.application != Application::Portfolio) {
        throw std::invalid_argument("run_portfolio: not a portfolio configuration");
    }
    ResultRecord rec = base_record(config);
    const auto &pf = config.portfolio;
    const auto k = static_cast<unsigned>(pf.mu.size());
    std::vector<std::pair<double, double>> bounds(k, {pf.lower, pf.upper});
    DiscretizedDistribution dist = [&] {
        try {
            return discretize_lognormal_multivariate(pf.mu, pf.sigma, bounds, pf.n);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("portfolio.sigma: ") + e.what());
        }
    }();
    const std::uint64_t vmax = portfolio_max_sum(dist);
    const double step = dist.grid(0).step();

    const auto var_circuit = encode_portfolio_cdf(dist, BasisDecision{0}, 0);
    const auto exp_circuit = encode_portfolio_return(dist, BasisDecision{0}, pf.c);
    rec.qubit_budget = budget_from(var_circuit);
    rec.circuit_widths["var"] = var_circuit.problem.num_qubits();
    rec.circuit_widths["expectation"] = exp_circuit.problem.num_qubits();

    DiscreteProblem p;
    p.spec = {k, pf.reps};
    p.sense = Sense::Maximize;
    p.evaluate = [&](const DecisionInput &y, std::uint64_t seed) {
        const EstimationResult r =
            estimate(encode_portfolio_return(dist, y, pf.c).problem, config.estimator, seed);
        const double ret = step * decode_linear_offset(r.estimate, pf.c, 0.0,
                                                       static_cast<double>(vmax));
        const VaRResult var = value_at_risk(
            [&](std::uint64_t lambda) { return encode_portfolio_cdf(dist, y, lambda).problem; },
            vmax + 1, pf.alpha, config.var_estimator, mix_seed(seed, 1));
        return ObjectiveValue{ret - pf.q * step * static_cast<double>(var.index),
                              r.queries + var.queries};
    };
    p.exact_basis = [dist, q = pf.q, alpha = pf.alpha](std::uint64_t y) {
        return classical::portfolio_value(dist, classical::portfolio_sum_distribution(dist, y), q,
                                          alpha)
            .objective;
    };
    p.exact_theta = [dist, spec = p.spec, q = pf.q, alpha = pf.alpha](std::span<const double> theta) {
        const auto w = discrete_solution_distribution(theta, spec);
        return classical::portfolio_value(dist, classical::portfolio_sum_distribution(dist, w), q,
                                          alpha)
            .objective;
    };
    run_discrete(config, p, rec);
    return rec;
}

ResultRecord run_experiment(const ExperimentConfig &config) {
    switch (config.application) {
    case Application::QuadraticContinuous:
    case Application::QuadraticDiscrete:
        return run_quadratic(config);
    case Application::Newsvendor:
        return run_newsvendor(config);
    case Application::Portfolio:
        return run_portfolio(config);
    }
    throw std::invalid_argument("run_experiment: unknown application");
}

std::vector<std::string> verify_record(const ResultRecord &record) {
    std::vector<std::string> problems;
    for (const auto &s : record.series) {
        if (!s.oracle) {
            problems.push_back("series '" + s.name + "' has no oracle");
            continue;
        }
        for (std::size_t i = 0; i < s.rows.size(); ++i) {
            const double again = s.oracle(s.rows[i].param);
            if (!(std::abs(again - s.rows[i].exact) <= 1e-12)) {
                problems.push_back("series '" + s.name + "' row " + std::to_string(i) +
                                   ": exact column " + format_number(s.rows[i].exact) +
                                   " differs from oracle " + format_number(again));
            }
        }
    }
    unsigned sum = 0;
    for (const auto &[role, count] : record.qubit_budget.roles) {
        sum += count;
    }
    if (sum != record.qubit_budget.total) {
        problems.push_back("qubit budget roles add up to " + std::to_string(sum) + ", total is " +
                           std::to_string(record.qubit_budget.total));
    }
    return problems;
}

std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

json summary_json(const ResultRecord &record) {
    json budget = json::object();
    for (const auto &[role, count] : record.qubit_budget.roles) {
        budget[role] = count;
    }
    budget["total"] = record.qubit_budget.total;
    json dist = json::object();
    for (const auto &[basis, prob] : record.solution_distribution) {
        dist[std::to_string(basis)] = prob;
    }
    json out = {
        {"application", to_string(record.application)},
        {"config_echo", record.config_echo},
        {"incumbent", {{"params", record.incumbent_params}, {"value", record.incumbent_value}}},
        {"incumbent_exact", record.incumbent_exact},
        {"status", record.status},
        {"solution_distribution", dist},
        {"qubit_budget", budget},
        {"circuit_widths", record.circuit_widths},
        {"trace_length", record.trace_length},
        {"total_queries", record.total_queries},
        {"seed", record.seed},
    };
    if (record.solution) {
        out["solution"] = {{"value", record.solution->first},
                           {"probability", record.solution->second}};
    }
    return out;
}

void write_csv(const ResultSeries &series, std::ostream &out) {
    out << "param,estimate,exact,queries\n";
    for (const auto &row : series.rows) {
        for (std::size_t i = 0; i < row.param.size(); ++i) {
            out << (i ? ";" : "") << format_number(row.param[i]);
        }
        out << ',' << format_number(row.estimate) << ',' << format_number(row.exact) << ','
            << row.queries << '\n';
    }
}

std::vector<std::string> write_outputs(const ResultRecord &record, const std::string &stem) {
    std::vector<std::string> paths;
    auto open = [&](const std::string &path) {
        std::ofstream f(path);
        if (!f) {
            throw std::runtime_error("cannot write '" + path + "'");
        }
        paths.push_back(path);
        return f;
    };
    for (const auto &s : record.series) {
        auto f = open(stem + "." + s.name + ".csv");
        write_csv(s, f);
    }
    auto f = open(stem + ".json");
    f << summary_json(record).dump(2) << '\n';
    return paths;
}

}  // namespace qsbo
