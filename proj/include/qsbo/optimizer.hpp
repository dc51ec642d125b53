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
 * @file optimizer.hpp
 * Derivative-free linear-model trust-region optimizer (COBYLA style) with
 * box constraints, evaluation tracing and seeded restarts.
 */
#pragma once

#include "qsbo/circuits.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsbo {

enum class Sense { Minimize, Maximize };

struct ObjectiveValue {
    double value = 0.0;
    std::uint64_t queries = 0;
};

/**
 * Objective callback. `seed` is derived from the run seed and the exact
 * parameter bits, so a stochastic objective stays deterministic per
 * (parameters, seed). Must be safe to call concurrently when restarts run
 * in parallel.
 */
using Objective = std::function<ObjectiveValue(std::span<const double> params, std::uint64_t seed)>;

struct ObjectiveEvaluator {
    Objective objective;
    Sense sense = Sense::Minimize;
};

struct OptimizerConfig {
    /// Start of restart 0. Empty means a random start as for later restarts.
    std::vector<double> initial;
    std::vector<double> lower;
    std::vector<double> upper;
    double rho_begin = 0.5;
    double rho_end = 1e-4;
    unsigned max_evaluations = 500;
    unsigned restarts = 1;
    std::uint64_t seed = 0;
    /// Random starts are uniform in [init_low, init_high], clipped to bounds.
    double init_low = -3.141592653589793;
    double init_high = 3.141592653589793;

    /// Throws std::invalid_argument on inconsistent settings.
    void validate(std::size_t dimension) const;
};

struct TraceEntry {
    std::vector<double> params;
    double value = 0.0;
    std::uint64_t queries = 0;
};

enum class RunStatus { Converged, MaxEvaluations };

[[nodiscard]] std::string to_string(RunStatus status);

struct OptimizationRun {
    std::vector<TraceEntry> trace;
    std::vector<double> best_params;
    double best_value = 0.0;
    RunStatus status = RunStatus::Converged;
    /// The requested start lay outside the bounds and was projected.
    bool projected_start = false;
    std::uint64_t seed = 0;
    unsigned restart = 0;

    [[nodiscard]] std::uint64_t total_queries() const noexcept;
};

/// One trust-region run from `start` with the given run seed.
OptimizationRun optimize(const ObjectiveEvaluator &evaluator, const OptimizerConfig &config,
                         std::span<const double> start, std::uint64_t run_seed);

/// One run from config.initial with config.seed.
OptimizationRun optimize(const ObjectiveEvaluator &evaluator, const OptimizerConfig &config);

struct MultiStartResult {
    std::vector<OptimizationRun> runs;
    std::size_t best = 0;

    [[nodiscard]] const OptimizationRun &incumbent() const { return runs.at(best); }
};

/**
 * config.restarts independent runs; run r uses seed mix_seed(config.seed, r)
 * and, except for r = 0 with a given initial point, a random start. Runs
 * may execute concurrently; results do not depend on scheduling.
 */
MultiStartResult optimize_multistart(const ObjectiveEvaluator &evaluator,
                                     const OptimizerConfig &config, std::size_t dimension);

/// |<i|V(theta)|0>|^2 for every basis value i.
[[nodiscard]] std::vector<double> discrete_solution_distribution(std::span<const double> theta,
                                                                 const AnsatzSpec &spec);

/// Most probable basis value at the incumbent (ties to the smaller value).
[[nodiscard]] std::pair<std::uint64_t, double> extract_solution(const OptimizationRun &run,
                                                                const AnsatzSpec &spec);

}  // namespace qsbo
