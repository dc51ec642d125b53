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

#include "qsbo/optimizer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace qsbo {

void OptimizerConfig::validate(std::size_t dimension) const {
    if (dimension == 0) {
        throw std::invalid_argument("optimizer: dimension must be >= 1");
    }
    if (!initial.empty() && initial.size() != dimension) {
        throw std::invalid_argument("optimizer: initial point has " + std::to_string(initial.size()) +
                                    " entries, expected " + std::to_string(dimension));
    }
    if (lower.size() != dimension || upper.size() != dimension) {
        throw std::invalid_argument("optimizer: bounds must have one entry per coordinate");
    }
    for (std::size_t i = 0; i < dimension; ++i) {
        if (!(lower[i] < upper[i])) {
            throw std::invalid_argument("optimizer: lower bound must be below upper bound");
        }
    }
    if (!(rho_begin > 0.0) || !(rho_end > 0.0) || !(rho_end < rho_begin)) {
        throw std::invalid_argument("optimizer: need 0 < rho_end < rho_begin");
    }
    if (max_evaluations < dimension + 2) {
        throw std::invalid_argument("optimizer: max_evaluations must be >= dimension + 2");
    }
    if (restarts < 1) {
        throw std::invalid_argument("optimizer: restarts must be >= 1");
    }
    if (!(init_low < init_high)) {
        throw std::invalid_argument("optimizer: init_low must be below init_high");
    }
}

std::string to_string(RunStatus status) {
    return status == RunStatus::Converged ? "converged" : "max_evaluations";
}

std::uint64_t OptimizationRun::total_queries() const noexcept {
    std::uint64_t q = 0;
    for (const auto &t : trace) {
        q += t.queries;
    }
    return q;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::uint64_t parameter_seed(std::uint64_t run_seed, const VectorXd &x) {
    std::uint64_t h = run_seed;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        h = mix_seed(h ^ std::bit_cast<std::uint64_t>(x(i)), static_cast<std::uint64_t>(i));
    }
    return h;
}

class TrustRegion {
  public:
    TrustRegion(const ObjectiveEvaluator &evaluator, const OptimizerConfig &config,
                std::uint64_t run_seed)
        : evaluator_(evaluator), config_(config), run_seed_(run_seed),
          d_(static_cast<Eigen::Index>(config.lower.size())),
          lower_(Eigen::Map<const VectorXd>(config.lower.data(), d_)),
          upper_(Eigen::Map<const VectorXd>(config.upper.data(), d_)) {}

    OptimizationRun run(std::span<const double> start) {
        VectorXd x0 = Eigen::Map<const VectorXd>(start.data(), d_);
        const VectorXd projected = clamp(x0);
        out_.projected_start = projected != x0;
        out_.seed = run_seed_;
        x0 = projected;
        rho_ = config_.rho_begin;

        v_.assign(d_ + 1, x0);
        f_.assign(d_ + 1, 0.0);
        if (!evaluate(x0, f_[0])) {
            return finish(RunStatus::MaxEvaluations);
        }
        for (Eigen::Index j = 0; j < d_; ++j) {
            if (!place_axis_vertex(j)) {
                return finish(RunStatus::MaxEvaluations);
            }
        }

        while (true) {
            promote_best();
            MatrixXd edges(d_, d_);
            VectorXd df(d_);
            for (Eigen::Index j = 0; j < d_; ++j) {
                edges.row(j) = (v_[j + 1] - v_[0]).transpose();
                df(j) = f_[j + 1] - f_[0];
            }
            const Eigen::FullPivLU<MatrixXd> lu(edges);
            if (!lu.isInvertible()) {
                bool ok = true;
                for (Eigen::Index j = 0; j < d_ && ok; ++j) {
                    ok = place_axis_vertex(j);
                }
                if (!ok) {
                    return finish(RunStatus::MaxEvaluations);
                }
                continue;
            }
            const MatrixXd inv = lu.inverse();
            const VectorXd g = lu.solve(df);

            // Vertex most in need of repair, if any.
            Eigen::Index repair = -1;
            double worst_dist = 2.0 * rho_;
            for (Eigen::Index j = 0; j < d_; ++j) {
                const double dist = (v_[j + 1] - v_[0]).norm();
                if (dist > worst_dist) {
                    worst_dist = dist;
                    repair = j;
                }
            }
            if (repair < 0) {
                double worst_sigma = 0.2 * rho_;
                for (Eigen::Index j = 0; j < d_; ++j) {
                    const double sigma = 1.0 / inv.col(j).norm();
                    if (sigma < worst_sigma) {
                        worst_sigma = sigma;
                        repair = j;
                    }
                }
            }

            const VectorXd s = step(g, v_[0]);
            if (s.norm() >= 0.5 * rho_) {
                const VectorXd x_new = clamp(v_[0] + s);
                double f_new = 0.0;
                if (!evaluate(x_new, f_new)) {
                    return finish(RunStatus::MaxEvaluations);
                }
                const VectorXd rel = inv.transpose() * (x_new - v_[0]);
                Eigen::Index slot = 0;
                rel.cwiseAbs().maxCoeff(&slot);
                if (f_new < f_[0]) {
                    v_[slot + 1] = x_new;
                    f_[slot + 1] = f_new;
                    continue;
                }
                Eigen::Index worst = 0;
                VectorXd others = Eigen::Map<const VectorXd>(f_.data() + 1, d_);
                others.maxCoeff(&worst);
                if (f_new < f_[worst + 1] && std::abs(rel(worst)) > 0.1) {
                    v_[worst + 1] = x_new;
                    f_[worst + 1] = f_new;
                    continue;
                }
            }
            if (repair >= 0) {
                if (!repair_vertex(repair, inv.col(repair))) {
                    return finish(RunStatus::MaxEvaluations);
                }
                continue;
            }
            if (rho_ <= config_.rho_end) {
                return finish(RunStatus::Converged);
            }
            rho_ = 0.5 * rho_;
            if (rho_ <= 1.5 * config_.rho_end) {
                rho_ = config_.rho_end;
            }
        }
    }

  private:
    VectorXd clamp(const VectorXd &x) const { return x.cwiseMax(lower_).cwiseMin(upper_); }

    /// Returns false once the evaluation budget is exhausted.
    bool evaluate(const VectorXd &x, double &internal) {
        if (out_.trace.size() >= config_.max_evaluations) {
            return false;
        }
        std::vector<double> p(x.data(), x.data() + x.size());
        const ObjectiveValue r = evaluator_.objective(p, parameter_seed(run_seed_, x));
        internal = evaluator_.sense == Sense::Maximize ? -r.value : r.value;
        out_.trace.push_back({std::move(p), r.value, r.queries});
        return true;
    }

    bool place_axis_vertex(Eigen::Index j) {
        VectorXd x = v_[0];
        x(j) += rho_;
        if (x(j) > upper_(j)) {
            x(j) = v_[0](j) - rho_;
        }
        x = clamp(x);
        v_[j + 1] = x;
        return evaluate(x, f_[j + 1]);
    }

    bool repair_vertex(Eigen::Index j, const VectorXd &direction) {
        const VectorXd unit = direction / direction.norm();
        VectorXd x = clamp(v_[0] + rho_ * unit);
        if ((x - v_[0]).norm() < 0.5 * rho_) {
            x = clamp(v_[0] - rho_ * unit);
        }
        v_[j + 1] = x;
        return evaluate(x, f_[j + 1]);
    }

    void promote_best() {
        std::size_t best = 0;
        for (std::size_t i = 1; i < f_.size(); ++i) {
            if (f_[i] < f_[best]) {
                best = i;
            }
        }
        std::swap(v_[0], v_[best]);
        std::swap(f_[0], f_[best]);
    }

    /// argmin g.s over |s| <= rho intersected with the box around x0.
    VectorXd step(const VectorXd &g, const VectorXd &x0) const {
        const VectorXd lo = lower_ - x0;
        const VectorXd hi = upper_ - x0;
        const double gnorm = g.norm();
        if (!(gnorm > 0.0) || !std::isfinite(gnorm)) {
            return VectorXd::Zero(d_);
        }
        auto at = [&](double mu) { return (-g / mu).cwiseMax(lo).cwiseMin(hi).eval(); };
        double mu_hi = gnorm / rho_;
        double mu_lo = 0.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (mu_lo + mu_hi);
            if (mid <= 0.0) {
                break;
            }
            if (at(mid).norm() > rho_) {
                mu_lo = mid;
            } else {
                mu_hi = mid;
            }
        }
        return at(mu_hi);
    }

    OptimizationRun finish(RunStatus status) {
        out_.status = status;
        const bool maximize = evaluator_.sense == Sense::Maximize;
        std::size_t best = 0;
        for (std::size_t i = 1; i < out_.trace.size(); ++i) {
            const double a = out_.trace[i].value;
            const double b = out_.trace[best].value;
            if (maximize ? a > b : a < b) {
                best = i;
            }
        }
        out_.best_params = out_.trace.at(best).params;
        out_.best_value = out_.trace.at(best).value;
        return std::move(out_);
    }

    const ObjectiveEvaluator &evaluator_;
    const OptimizerConfig &config_;
    std::uint64_t run_seed_;
    Eigen::Index d_;
    VectorXd lower_;
    VectorXd upper_;
    double rho_ = 0.0;
    std::vector<VectorXd> v_;
    std::vector<double> f_;
    OptimizationRun out_;
};

std::vector<double> random_start(const OptimizerConfig &config, std::size_t dim,
                                 std::uint64_t seed) {
    ShotSampler sampler(seed);
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double lo = std::max(config.init_low, config.lower[i]);
        const double hi = std::min(config.init_high, config.upper[i]);
        x[i] = lo < hi ? lo + (hi - lo) * sampler.uniform() : config.lower[i];
    }
    return x;
}

}  // namespace

OptimizationRun optimize(const ObjectiveEvaluator &evaluator, const OptimizerConfig &config,
                         std::span<const double> start, std::uint64_t run_seed) {
    config.validate(start.size());
    if (!evaluator.objective) {
        throw std::invalid_argument("optimizer: objective is empty");
    }
    return TrustRegion(evaluator, config, run_seed).run(start);
}

OptimizationRun optimize(const ObjectiveEvaluator &evaluator, const OptimizerConfig &config) {
    if (config.initial.empty()) {
        throw std::invalid_argument("optimizer: initial point required");
    }
    return optimize(evaluator, config, config.initial, config.seed);
}

MultiStartResult optimize_multistart(const ObjectiveEvaluator &evaluator,
                                     const OptimizerConfig &config, std::size_t dimension) {
    config.validate(dimension);
    MultiStartResult out;
    out.runs.resize(config.restarts);
    std::vector<std::exception_ptr> errors(config.restarts);
    const auto restarts = static_cast<std::int64_t>(config.restarts);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t r = 0; r < restarts; ++r) {
        try {
            const std::uint64_t run_seed = mix_seed(config.seed, static_cast<std::uint64_t>(r));
            const std::vector<double> start =
                (r == 0 && !config.initial.empty())
                    ? config.initial
                    : random_start(config, dimension, mix_seed(run_seed, 0x5EED));
            OptimizationRun run = optimize(evaluator, config, start, run_seed);
            run.restart = static_cast<unsigned>(r);
            out.runs[r] = std::move(run);
        } catch (...) {
            errors[r] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    const bool maximize = evaluator.sense == Sense::Maximize;
    for (std::size_t r = 1; r < out.runs.size(); ++r) {
        const double a = out.runs[r].best_value;
        const double b = out.runs[out.best].best_value;
        if (maximize ? a > b : a < b) {
            out.best = r;
        }
    }
    return out;
}

std::vector<double> discrete_solution_distribution(std::span<const double> theta,
                                                   const AnsatzSpec &spec) {
    return probabilities(run(trial_state(spec, theta)));
}

std::pair<std::uint64_t, double> extract_solution(const OptimizationRun &run,
                                                  const AnsatzSpec &spec) {
    const auto dist = discrete_solution_distribution(run.best_params, spec);
    std::size_t best = 0;
    for (std::size_t i = 1; i < dist.size(); ++i) {
        if (dist[i] > dist[best]) {
            best = i;
        }
    }
    return {best, dist[best]};
}

}  // namespace qsbo
