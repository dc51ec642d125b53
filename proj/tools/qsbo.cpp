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

// qsbo: run the simulation-based optimization experiments.
//
//   qsbo run <application> [--config FILE] [--estimator canonical|mle|exact]
//            [--m INT] [--shots INT] [--seed INT] [--out STEM]
//            [--sweep|--optimize] [--var-shots]
//   qsbo budget <application> [--k INT] [--n INT]
//
// Exit status: 0 ok, 1 runtime failure, 2 bad configuration, 3 oracle
// mismatch in the result record.

#include "qsbo/applications.hpp"
#include "qsbo/config.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitOracle = 3;

struct RunOptions {
    std::string application;
    std::string config_path;
    std::optional<std::string> estimator;
    std::optional<unsigned> m;
    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool sweep = false;
    bool optimize = false;
    bool var_shots = false;
};

qsbo::ExperimentConfig build_config(const RunOptions &opt) {
    using namespace qsbo;
    const Application app = application_from_string(opt.application);
    ExperimentConfig config = opt.config_path.empty()
                                  ? default_config(app)
                                  : config_from_json(load_json_file(opt.config_path), app);
    if (config.application != app) {
        throw ConfigError("application: config file is for '" + to_string(config.application) +
                          "', command line asked for '" + to_string(app) + "'");
    }
    if (opt.estimator) {
        try {
            config.estimator.method = estimator_from_string(*opt.estimator);
        } catch (const std::exception &e) {
            throw ConfigError(std::string("estimator.method: ") + e.what());
        }
    }
    if (opt.m) {
        config.estimator.m = *opt.m;
    }
    if (opt.shots) {
        config.estimator.schedule.shots = *opt.shots;
        config.estimator.expected_hits = false;
    }
    if (opt.seed) {
        config.seed = *opt.seed;
    }
    if (opt.out) {
        config.output = *opt.out;
    }
    if (opt.sweep) {
        config.mode = RunMode::Sweep;
    }
    if (opt.optimize) {
        config.mode = RunMode::Optimize;
    }
    if (opt.var_shots) {
        config.var_estimator = config.estimator;
        config.var_estimator.method = EstimatorMethod::MLE;
        config.var_estimator.expected_hits = false;
        config.var_estimator.repetitions = 5;
    }
    config.validate();
    return config;
}

int run(const RunOptions &opt) {
    const qsbo::ExperimentConfig config = build_config(opt);
    const qsbo::ResultRecord record = qsbo::run_experiment(config);
    for (const auto &path : qsbo::write_outputs(record, config.output)) {
        std::cout << "wrote " << path << '\n';
    }
    std::cout << "incumbent value " << qsbo::format_number(record.incumbent_value) << " (exact "
              << qsbo::format_number(record.incumbent_exact) << "), status " << record.status
              << ", queries " << record.total_queries << '\n';
    if (record.solution) {
        std::cout << "solution " << record.solution->first << " with probability "
                  << qsbo::format_number(record.solution->second) << '\n';
    }
    const auto problems = qsbo::verify_record(record);
    for (const auto &p : problems) {
        std::cerr << "oracle mismatch: " << p << '\n';
    }
    return problems.empty() ? 0 : kExitOracle;
}

int budget(const std::string &name, std::optional<unsigned> k, std::optional<unsigned> n) {
    using namespace qsbo;
    const Application app = application_from_string(name);
    const ExperimentConfig d = default_config(app);
    unsigned dk = d.quadratic.k;
    unsigned dn = d.quadratic.n;
    if (app == Application::Newsvendor) {
        dk = d.newsvendor.n;
        dn = d.newsvendor.n;
    } else if (app == Application::Portfolio) {
        dk = static_cast<unsigned>(d.portfolio.mu.size());
        dn = d.portfolio.n;
    }
    const QubitBudget b = report_qubit_budget(app, k.value_or(dk), n.value_or(dn));
    for (const auto &[role, count] : b.roles) {
        std::cout << role << ' ' << count << '\n';
    }
    std::cout << "total " << b.total << '\n';
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulation-based optimization with amplitude estimation"};
    app.require_subcommand(1);

    RunOptions opt;
    auto *run_cmd = app.add_subcommand("run", "Run an experiment and write CSV/JSON results");
    run_cmd->add_option("application", opt.application,
                        "quadratic-continuous, quadratic-discrete, newsvendor or portfolio")
        ->required();
    run_cmd->add_option("--config", opt.config_path, "JSON experiment file");
    run_cmd->add_option("--estimator", opt.estimator, "canonical, mle or exact");
    run_cmd->add_option("--m", opt.m, "Evaluation qubits for canonical estimation");
    run_cmd->add_option("--shots", opt.shots, "Shots per Grover power (switches MLE to sampling)");
    run_cmd->add_option("--seed", opt.seed, "Top-level seed");
    run_cmd->add_option("--out", opt.out, "Output path stem");
    auto *sweep = run_cmd->add_flag("--sweep", opt.sweep, "Evaluate on a grid or all candidates");
    auto *optimize = run_cmd->add_flag("--optimize", opt.optimize, "Run the optimizer");
    sweep->excludes(optimize);
    run_cmd->add_flag("--var-shots", opt.var_shots,
                      "Shot-based VaR probes, median of 5 repetitions");

    std::string budget_app;
    std::optional<unsigned> k;
    std::optional<unsigned> n;
    auto *budget_cmd = app.add_subcommand("budget", "Print per-role qubit counts");
    budget_cmd->add_option("application", budget_app)->required();
    budget_cmd->add_option("--k", k, "Assets or decision qubits (default: application default)");
    budget_cmd->add_option("--n", n,
                           "Qubits per distribution dimension (default: application default)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            return run(opt);
        }
        return budget(budget_app, k, n);
    } catch (const qsbo::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
