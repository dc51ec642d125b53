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
#include "qsbo/distributions.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

using namespace qsbo;

namespace {

unsigned role(const QubitBudget &b, const std::string &name) {
    for (const auto &[r, count] : b.roles) {
        if (r == name) {
            return count;
        }
    }
    return 0;
}

std::string csv(const ResultSeries &s) {
    std::ostringstream os;
    write_csv(s, os);
    return os.str();
}

ExperimentConfig quick(Application app) {
    ExperimentConfig c = default_config(app);
    c.optimizer.restarts = 1;
    c.optimizer.max_evaluations = 40;
    c.optimizer.rho_end = 1e-2;
    return c;
}

}  // namespace

TEST_CASE("qubit budgets match the constructed circuits") {
    CHECK(report_qubit_budget(Application::QuadraticContinuous, 0, 2).total == 3);
    CHECK(report_qubit_budget(Application::Newsvendor, 3, 3).total == 8);
    const auto pf = report_qubit_budget(Application::Portfolio, 2, 2);
    CHECK(pf.total == 13);
    CHECK(role(pf, "y") == 2);
    CHECK(role(pf, "x") == 4);
    CHECK(role(pf, "marker") == 1);
    CHECK(role(pf, "sum") == 3);
    CHECK(role(pf, "compare") == 1);
    CHECK(role(pf, "add_ancillas") == 2);
    CHECK(report_qubit_budget(Application::Portfolio, 1, 2).total == 9);
    CHECK(report_qubit_budget(Application::Portfolio, 2, 3).total == 17);
    CHECK(report_qubit_budget(Application::QuadraticDiscrete, 2, 2).total == 5);
}

TEST_CASE("canonical sweep is a step function, exact column is the oracle") {
    ExperimentConfig c = default_config(Application::QuadraticContinuous);
    c.estimator.method = EstimatorMethod::MLE;
    c.estimator.expected_hits = true;
    const ResultRecord r = run_quadratic(c);
    const ResultSeries *canonical = r.find_series("canonical");
    const ResultSeries *mle = r.find_series("mle");
    REQUIRE(canonical != nullptr);
    REQUIRE(mle != nullptr);
    CHECK(canonical->rows.size() == 41);
    std::set<double> distinct;
    const auto dist = discretize_normal(1.0, 1.0, 0.0, 2.0, 2);
    for (const auto &row : canonical->rows) {
        distinct.insert(row.estimate);
        CHECK(row.exact == classical::quadratic_objective(dist, row.param[0]));
        CHECK(row.queries == 32);
    }
    CHECK(distinct.size() <= 17);
    for (const auto &row : mle->rows) {
        CHECK(std::abs(row.estimate - row.exact) < 0.02);
    }
    CHECK(verify_record(r).empty());
    CHECK(r.qubit_budget.total == 3);
}

TEST_CASE("records are reproducible and survive a config round trip") {
    ExperimentConfig c = quick(Application::Newsvendor);
    c.estimator.expected_hits = false;
    const ResultRecord a = run_experiment(c);
    const ResultRecord b = run_experiment(config_from_json(config_to_json(c)));
    REQUIRE(a.series.size() == b.series.size());
    for (std::size_t i = 0; i < a.series.size(); ++i) {
        CHECK(csv(a.series[i]) == csv(b.series[i]));
    }
    CHECK(summary_json(a).dump() == summary_json(b).dump());
}

TEST_CASE("verify_record catches a tampered exact column") {
    ResultRecord r = run_experiment(quick(Application::Newsvendor));
    CHECK(verify_record(r).empty());
    r.series.front().rows[3].exact += 1e-9;
    const auto problems = verify_record(r);
    REQUIRE(problems.size() == 1);
    CHECK(problems.front().find("row 3") != std::string::npos);
}

TEST_CASE("csv and summary schema") {
    const ResultRecord r = run_experiment(quick(Application::Newsvendor));
    const std::string text = csv(*r.find_series("candidates"));
    CHECK(text.rfind("param,estimate,exact,queries\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 9);
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");

    const auto j = summary_json(r);
    for (const char *key : {"application", "config_echo", "incumbent", "solution_distribution",
                            "qubit_budget", "trace_length", "total_queries", "seed"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["incumbent"].contains("params"));
    CHECK(j["incumbent"].contains("value"));
    CHECK(j["qubit_budget"]["total"] == 8);
    CHECK(j["solution_distribution"].size() == 8);
    CHECK(j["trace_length"] == r.find_series("trace")->rows.size());

    ResultSeries vec{"v", {{{0.5, -1.0}, 1.0, 2.0, 3}}, nullptr};
    CHECK(csv(vec) == "param,estimate,exact,queries\n0.5;-1,1,2,3\n");
}

TEST_CASE("write_outputs writes one csv per series and a json summary") {
    const ResultRecord r = run_experiment(quick(Application::Newsvendor));
    const auto paths = write_outputs(r, "qsbo_test_out");
    CHECK(paths.size() == r.series.size() + 1);
    for (const auto &p : paths) {
        std::ifstream f(p);
        CHECK(f.good());
        std::remove(p.c_str());
    }
}

TEST_CASE("portfolio candidates use the classical objective") {
    ExperimentConfig c = default_config(Application::Portfolio);
    c.mode = RunMode::Sweep;
    const ResultRecord r = run_portfolio(c);
    const ResultSeries *cand = r.find_series("candidates");
    REQUIRE(cand != nullptr);
    REQUIRE(cand->rows.size() == 4);
    for (const auto &row : cand->rows) {
        CHECK(std::abs(row.estimate - row.exact) < 1e-3);
    }
    CHECK(r.circuit_widths.at("var") == 13);
    CHECK(r.circuit_widths.at("expectation") == 12);
    CHECK(verify_record(r).empty());
}

TEST_CASE("runners reject foreign configs") {
    CHECK_THROWS(run_newsvendor(default_config(Application::Portfolio)));
    CHECK_THROWS(run_portfolio(default_config(Application::Newsvendor)));
    CHECK_THROWS(run_quadratic(default_config(Application::Newsvendor)));
}
