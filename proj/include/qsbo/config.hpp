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
 * @file config.hpp
 * Experiment configuration: JSON (de)serialization over embedded
 * per-application defaults, with field-level validation errors.
 */
#pragma once

#include "qsbo/amplitude_estimation.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsbo {

/// Invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Application { QuadraticContinuous, QuadraticDiscrete, Newsvendor, Portfolio };

[[nodiscard]] std::string to_string(Application app);
/// Accepts "quadratic" as an alias of "quadratic-continuous".
[[nodiscard]] Application application_from_string(const std::string &name);

enum class RunMode { Sweep, Optimize };

struct OptimizerSettings {
    double rho_begin = 0.5;
    double rho_end = 1e-4;
    unsigned max_evaluations = 500;
    unsigned restarts = 3;
    std::vector<double> initial;
};

struct QuadraticSettings {
    double mu = 1.0;
    double sigma = 1.0;
    double lower = 0.0;
    double upper = 2.0;
    unsigned n = 2;
    /// Scaling for the MLE and exact estimators in sweep mode.
    double c = 0.05;
    /// Scaling for the MLE and exact estimators in optimize mode. The
    /// sine bias is symmetric about the mean, so a larger c keeps the
    /// argmin and lowers the decoded shot noise.
    double c_optimize = 0.3;
    /// Scaling for the canonical estimator.
    double c_canonical = 0.5;
    unsigned grid_points = 41;
    /// Discrete variant: y register width and ansatz repetitions.
    unsigned k = 2;
    unsigned reps = 2;
};

struct NewsvendorSettings {
    double mu = 2.0;
    double sigma = 1.0;
    unsigned n = 3;
    double p_buy = 0.2;
    double p_sell = 0.5;
    double c = 1e-3;
    unsigned reps = 2;
};

struct PortfolioSettings {
    std::vector<double> mu{0.8, 1.0};
    std::vector<std::vector<double>> sigma{{1.0, -1.0}, {-1.0, 10.0}};
    double lower = 0.0;
    double upper = 1.0;
    unsigned n = 2;
    double q = 0.9;
    double alpha = 0.05;
    double c = 0.02;
    unsigned reps = 2;
};

struct ExperimentConfig {
    Application application = Application::Portfolio;
    RunMode mode = RunMode::Optimize;
    std::uint64_t seed = 42;
    std::string output = "qsbo_result";
    EstimatorConfig estimator;
    /// Estimator for VaR bisection probes.
    EstimatorConfig var_estimator;
    OptimizerSettings optimizer;
    QuadraticSettings quadratic;
    NewsvendorSettings newsvendor;
    PortfolioSettings portfolio;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

/// Embedded defaults for `app`.
[[nodiscard]] ExperimentConfig default_config(Application app);

/**
 * Overlays `doc` on the defaults of the application named in `doc` (or
 * `fallback` when absent). Unknown keys and ill-typed values throw
 * ConfigError.
 */
[[nodiscard]] ExperimentConfig config_from_json(const nlohmann::json &doc,
                                                std::optional<Application> fallback = {});

/// Full serialization; config_from_json(config_to_json(c)) reproduces c.
[[nodiscard]] nlohmann::json config_to_json(const ExperimentConfig &config);

/// Reads and parses a JSON file; I/O and syntax errors become ConfigError.
[[nodiscard]] nlohmann::json load_json_file(const std::string &path);

}  // namespace qsbo
