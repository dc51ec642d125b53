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
 * @file applications.hpp
 * End-to-end experiments (quadratic toy, newsvendor, portfolio) and their
 * CSV/JSON result records.
 */
#pragma once

#include "qsbo/config.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsbo {

struct ResultRow {
    std::vector<double> param;
    double estimate = 0.0;
    double exact = 0.0;
    std::uint64_t queries = 0;
};

/// Classical objective used to fill and later re-check the exact column.
using RowOracle = std::function<double(std::span<const double>)>;

struct ResultSeries {
    std::string name;
    std::vector<ResultRow> rows;
    RowOracle oracle;
};

struct QubitBudget {
    std::vector<std::pair<std::string, unsigned>> roles;
    unsigned total = 0;
};

struct ResultRecord {
    Application application = Application::Portfolio;
    std::uint64_t seed = 0;
    nlohmann::json config_echo;
    std::vector<ResultSeries> series;

    std::vector<double> incumbent_params;
    double incumbent_value = 0.0;
    double incumbent_exact = 0.0;
    std::string status;

    /// Discrete decisions only: basis value -> sampling probability.
    std::map<std::uint64_t, double> solution_distribution;
    std::optional<std::pair<std::uint64_t, double>> solution;

    QubitBudget qubit_budget;
    std::map<std::string, unsigned> circuit_widths;
    std::size_t trace_length = 0;
    std::uint64_t total_queries = 0;

    [[nodiscard]] const ResultSeries *find_series(const std::string &name) const;
};

/**
 * Per-role qubit counts read off the circuit the application builds for
 * (k, n). For the portfolio this is the VaR circuit, the widest one.
 * k is ignored by the quadratic-continuous and newsvendor applications.
 */
[[nodiscard]] QubitBudget report_qubit_budget(Application app, unsigned k, unsigned n);

[[nodiscard]] ResultRecord run_quadratic(const ExperimentConfig &config);
[[nodiscard]] ResultRecord run_newsvendor(const ExperimentConfig &config);
[[nodiscard]] ResultRecord run_portfolio(const ExperimentConfig &config);
/// Dispatches on config.application.
[[nodiscard]] ResultRecord run_experiment(const ExperimentConfig &config);

/**
 * Recomputes every exact column with the series oracle (tolerance 1e-12)
 * and checks the qubit budget adds up. Returns one message per problem.
 */
[[nodiscard]] std::vector<std::string> verify_record(const ResultRecord &record);

[[nodiscard]] nlohmann::json summary_json(const ResultRecord &record);

/// 12 significant digits.
[[nodiscard]] std::string format_number(double v);

/// Header `param,estimate,exact,queries`; vector params joined with ';'.
void write_csv(const ResultSeries &series, std::ostream &out);

/// Writes <stem>.<series>.csv for every series and <stem>.json. Returns
/// the paths written.
std::vector<std::string> write_outputs(const ResultRecord &record, const std::string &stem);

}  // namespace qsbo
