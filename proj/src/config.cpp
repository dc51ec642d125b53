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

#include "qsbo/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>

namespace qsbo {

using nlohmann::json;

std::string to_string(Application app) {
    switch (app) {
    case Application::QuadraticContinuous: return "quadratic-continuous";
    case Application::QuadraticDiscrete: return "quadratic-discrete";
    case Application::Newsvendor: return "newsvendor";
    case Application::Portfolio: return "portfolio";
    }
    return "unknown";
}

Application application_from_string(const std::string &name) {
    if (name == "quadratic-continuous" || name == "quadratic") {
        return Application::QuadraticContinuous;
    }
    if (name == "quadratic-discrete") {
        return Application::QuadraticDiscrete;
    }
    if (name == "newsvendor") {
        return Application::Newsvendor;
    }
    if (name == "portfolio") {
        return Application::Portfolio;
    }
    throw ConfigError("application: unknown application '" + name +
                      "' (expected quadratic-continuous, quadratic-discrete, newsvendor or portfolio)");
}

ExperimentConfig default_config(Application app) {
    ExperimentConfig c;
    c.application = app;
    c.output = "qsbo_" + to_string(app);
    c.var_estimator.method = EstimatorMethod::Exact;
    switch (app) {
    case Application::QuadraticContinuous:
        c.mode = RunMode::Sweep;
        c.estimator.method = EstimatorMethod::MLE;
        c.estimator.schedule = MLESchedule::exponential(7, 1024);
        c.optimizer.rho_begin = 0.5;
        c.optimizer.restarts = 3;
        break;
    case Application::QuadraticDiscrete:
    case Application::Newsvendor:
    case Application::Portfolio:
        c.mode = RunMode::Optimize;
        c.estimator.method = EstimatorMethod::MLE;
        c.estimator.schedule = MLESchedule::exponential(3, 1024);
        c.estimator.expected_hits = true;
        c.optimizer.rho_begin = 1.0;
        c.optimizer.restarts = 5;
        break;
    }
    if (app == Application::Portfolio) {
        c.optimizer.max_evaluations = 300;
    }
    return c;
}

namespace {

[[noreturn]] void fail(const std::string &field, const std::string &what) {
    throw ConfigError(field + ": " + what);
}

void check_keys(const json &obj, const std::string &path, std::initializer_list<const char *> keys) {
    if (!obj.is_object()) {
        fail(path.empty() ? "<root>" : path, "expected an object");
    }
    for (const auto &item : obj.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char *k) { return item.key() == k; })) {
            fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
        }
    }
}

std::string join(const std::string &path, const char *key) {
    return path.empty() ? std::string(key) : path + "." + key;
}

template <class T>
void read(const json &obj, const std::string &path, const char *key, T &out) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        return;
    }
    try {
        if constexpr (std::is_same_v<T, unsigned> || std::is_same_v<T, std::uint64_t>) {
            if (!it->is_number_integer() || it->template get<std::int64_t>() < 0) {
                fail(join(path, key), "expected a non-negative integer");
            }
        } else if constexpr (std::is_same_v<T, double>) {
            if (!it->is_number()) {
                fail(join(path, key), "expected a number");
            }
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!it->is_boolean()) {
                fail(join(path, key), "expected true or false");
            }
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!it->is_string()) {
                fail(join(path, key), "expected a string");
            }
        }
        out = it->template get<T>();
    } catch (const json::exception &e) {
        fail(join(path, key), std::string("ill-typed value (") + e.what() + ")");
    }
}

void read_estimator(const json &obj, const std::string &path, EstimatorConfig &est) {
    check_keys(obj, path,
               {"method", "m", "powers", "shots", "expected_hits", "sampled", "repetitions"});
    std::string method = to_string(est.method);
    read(obj, path, "method", method);
    try {
        est.method = estimator_from_string(method);
    } catch (const std::invalid_argument &e) {
        fail(join(path, "method"), e.what());
    }
    read(obj, path, "m", est.m);
    read(obj, path, "powers", est.schedule.powers);
    read(obj, path, "shots", est.schedule.shots);
    read(obj, path, "expected_hits", est.expected_hits);
    read(obj, path, "sampled", est.sampled);
    read(obj, path, "repetitions", est.repetitions);
}

json estimator_json(const EstimatorConfig &est) {
    return {{"method", to_string(est.method)},
            {"m", est.m},
            {"powers", est.schedule.powers},
            {"shots", est.schedule.shots},
            {"expected_hits", est.expected_hits},
            {"sampled", est.sampled},
            {"repetitions", est.repetitions}};
}

void validate_estimator(const EstimatorConfig &est, const std::string &path) {
    if (est.m < 1 || est.m > 12) {
        fail(join(path, "m"), "must be in [1, 12]");
    }
    if (est.schedule.shots < 1) {
        fail(join(path, "shots"), "must be >= 1");
    }
    try {
        est.schedule.validate();
    } catch (const std::invalid_argument &e) {
        fail(join(path, "powers"), e.what());
    }
    if (est.repetitions < 1 || est.repetitions % 2 == 0) {
        fail(join(path, "repetitions"), "must be odd and >= 1");
    }
}

void require(bool ok, const std::string &field, const std::string &what) {
    if (!ok) {
        fail(field, what);
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    validate_estimator(estimator, "estimator");
    validate_estimator(var_estimator, "var_estimator");
    require(!output.empty(), "output", "must not be empty");

    const auto &o = optimizer;
    require(o.rho_begin > 0.0, "optimizer.rho_begin", "must be positive");
    require(o.rho_end > 0.0 && o.rho_end < o.rho_begin, "optimizer.rho_end",
            "must be positive and below rho_begin");
    require(o.max_evaluations >= 3, "optimizer.max_evaluations", "must be >= 3");
    require(o.restarts >= 1 && o.restarts <= 64, "optimizer.restarts", "must be in [1, 64]");

    const double half_pi = std::numbers::pi / 2.0;
    const auto &q = quadratic;
    require(q.sigma > 0.0, "quadratic.sigma", "must be positive");
    require(q.lower < q.upper, "quadratic.upper", "must exceed quadratic.lower");
    require(q.n >= 1 && q.n <= 8, "quadratic.n", "must be in [1, 8]");
    require(q.c > 0.0 && q.c * (q.upper - q.lower) <= half_pi, "quadratic.c",
            "must be positive with c * (upper - lower) <= pi/2");
    require(q.c_optimize > 0.0 && q.c_optimize * (q.upper - q.lower) <= half_pi,
            "quadratic.c_optimize", "must be positive with c * (upper - lower) <= pi/2");
    require(q.c_canonical > 0.0 && q.c_canonical * (q.upper - q.lower) <= half_pi,
            "quadratic.c_canonical", "must be positive with c * (upper - lower) <= pi/2");
    require(q.grid_points >= 2 && q.grid_points <= 10001, "quadratic.grid_points",
            "must be in [2, 10001]");
    require(q.k >= 1 && q.k <= 6, "quadratic.k", "must be in [1, 6]");
    require(q.reps <= 10, "quadratic.reps", "must be <= 10");
    if (application == Application::QuadraticDiscrete) {
        const double y_max = static_cast<double>((1U << q.k) - 1);
        const double span = std::max({std::abs(q.lower), std::abs(q.upper),
                                      std::abs(q.lower - y_max), std::abs(q.upper - y_max)});
        require(q.c * span <= half_pi, "quadratic.c",
                "c * max|x - y| must be <= pi/2 over the discrete y range");
    }

    const auto &nv = newsvendor;
    require(nv.sigma > 0.0, "newsvendor.sigma", "must be positive");
    require(nv.n >= 1 && nv.n <= 6, "newsvendor.n", "must be in [1, 6]");
    require(nv.p_buy > 0.0, "newsvendor.p_buy", "must be positive");
    require(nv.p_sell > nv.p_buy, "newsvendor.p_sell", "must exceed p_buy");
    require(nv.c > 0.0 && nv.c <= std::numbers::pi / 4.0, "newsvendor.c", "must be in (0, pi/4]");
    require(nv.reps <= 10, "newsvendor.reps", "must be <= 10");

    const auto &p = portfolio;
    const std::size_t k = p.mu.size();
    require(k >= 1 && k <= 4, "portfolio.mu", "must have 1 to 4 entries");
    require(p.sigma.size() == k, "portfolio.sigma", "must be a k x k matrix");
    for (const auto &row : p.sigma) {
        require(row.size() == k, "portfolio.sigma", "must be a k x k matrix");
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            require(std::abs(p.sigma[i][j] - p.sigma[j][i]) <= 1e-12, "portfolio.sigma",
                    "must be symmetric");
        }
    }
    require(p.lower == 0.0, "portfolio.lower", "must be 0");
    require(p.upper > p.lower, "portfolio.upper", "must exceed portfolio.lower");
    require(p.n >= 1 && p.n <= 4, "portfolio.n", "must be in [1, 4]");
    require(p.q >= 0.0, "portfolio.q", "must be non-negative");
    require(p.alpha > 0.0 && p.alpha < 1.0, "portfolio.alpha", "must be in (0, 1)");
    require(p.c > 0.0 && p.c <= std::numbers::pi / 4.0, "portfolio.c", "must be in (0, pi/4]");
    require(p.reps <= 10, "portfolio.reps", "must be <= 10");
}

ExperimentConfig config_from_json(const json &doc, std::optional<Application> fallback) {
    check_keys(doc, "",
               {"application", "mode", "seed", "output", "estimator", "var_estimator", "optimizer",
                "quadratic", "newsvendor", "portfolio"});
    Application app = fallback.value_or(Application::Portfolio);
    if (doc.contains("application")) {
        std::string name;
        read(doc, "", "application", name);
        app = application_from_string(name);
    } else if (!fallback) {
        fail("application", "missing");
    }
    ExperimentConfig c = default_config(app);

    if (doc.contains("mode")) {
        std::string mode;
        read(doc, "", "mode", mode);
        if (mode == "sweep") {
            c.mode = RunMode::Sweep;
        } else if (mode == "optimize") {
            c.mode = RunMode::Optimize;
        } else {
            fail("mode", "expected 'sweep' or 'optimize'");
        }
    }
    read(doc, "", "seed", c.seed);
    read(doc, "", "output", c.output);
    if (doc.contains("estimator")) {
        read_estimator(doc["estimator"], "estimator", c.estimator);
    }
    if (doc.contains("var_estimator")) {
        read_estimator(doc["var_estimator"], "var_estimator", c.var_estimator);
    }
    if (doc.contains("optimizer")) {
        const auto &o = doc["optimizer"];
        check_keys(o, "optimizer", {"rho_begin", "rho_end", "max_evaluations", "restarts", "initial"});
        read(o, "optimizer", "rho_begin", c.optimizer.rho_begin);
        read(o, "optimizer", "rho_end", c.optimizer.rho_end);
        read(o, "optimizer", "max_evaluations", c.optimizer.max_evaluations);
        read(o, "optimizer", "restarts", c.optimizer.restarts);
        read(o, "optimizer", "initial", c.optimizer.initial);
    }
    if (doc.contains("quadratic")) {
        const auto &q = doc["quadratic"];
        const std::string p = "quadratic";
        check_keys(q, p, {"mu", "sigma", "lower", "upper", "n", "c", "c_optimize", "c_canonical",
                          "grid_points", "k", "reps"});
        read(q, p, "mu", c.quadratic.mu);
        read(q, p, "sigma", c.quadratic.sigma);
        read(q, p, "lower", c.quadratic.lower);
        read(q, p, "upper", c.quadratic.upper);
        read(q, p, "n", c.quadratic.n);
        read(q, p, "c", c.quadratic.c);
        read(q, p, "c_optimize", c.quadratic.c_optimize);
        read(q, p, "c_canonical", c.quadratic.c_canonical);
        read(q, p, "grid_points", c.quadratic.grid_points);
        read(q, p, "k", c.quadratic.k);
        read(q, p, "reps", c.quadratic.reps);
    }
    if (doc.contains("newsvendor")) {
        const auto &nv = doc["newsvendor"];
        const std::string p = "newsvendor";
        check_keys(nv, p, {"mu", "sigma", "n", "p_buy", "p_sell", "c", "reps"});
        read(nv, p, "mu", c.newsvendor.mu);
        read(nv, p, "sigma", c.newsvendor.sigma);
        read(nv, p, "n", c.newsvendor.n);
        read(nv, p, "p_buy", c.newsvendor.p_buy);
        read(nv, p, "p_sell", c.newsvendor.p_sell);
        read(nv, p, "c", c.newsvendor.c);
        read(nv, p, "reps", c.newsvendor.reps);
    }
    if (doc.contains("portfolio")) {
        const auto &pf = doc["portfolio"];
        const std::string p = "portfolio";
        check_keys(pf, p, {"mu", "sigma", "lower", "upper", "n", "q", "alpha", "c", "reps"});
        read(pf, p, "mu", c.portfolio.mu);
        read(pf, p, "sigma", c.portfolio.sigma);
        read(pf, p, "lower", c.portfolio.lower);
        read(pf, p, "upper", c.portfolio.upper);
        read(pf, p, "n", c.portfolio.n);
        read(pf, p, "q", c.portfolio.q);
        read(pf, p, "alpha", c.portfolio.alpha);
        read(pf, p, "c", c.portfolio.c);
        read(pf, p, "reps", c.portfolio.reps);
    }
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig &c) {
    const auto &q = c.quadratic;
    const auto &nv = c.newsvendor;
    const auto &pf = c.portfolio;
    return {
        {"application", to_string(c.application)},
        {"mode", c.mode == RunMode::Sweep ? "sweep" : "optimize"},
        {"seed", c.seed},
        {"output", c.output},
        {"estimator", estimator_json(c.estimator)},
        {"var_estimator", estimator_json(c.var_estimator)},
        {"optimizer",
         {{"rho_begin", c.optimizer.rho_begin},
          {"rho_end", c.optimizer.rho_end},
          {"max_evaluations", c.optimizer.max_evaluations},
          {"restarts", c.optimizer.restarts},
          {"initial", c.optimizer.initial}}},
        {"quadratic",
         {{"mu", q.mu},
          {"sigma", q.sigma},
          {"lower", q.lower},
          {"upper", q.upper},
          {"n", q.n},
          {"c", q.c},
          {"c_optimize", q.c_optimize},
          {"c_canonical", q.c_canonical},
          {"grid_points", q.grid_points},
          {"k", q.k},
          {"reps", q.reps}}},
        {"newsvendor",
         {{"mu", nv.mu},
          {"sigma", nv.sigma},
          {"n", nv.n},
          {"p_buy", nv.p_buy},
          {"p_sell", nv.p_sell},
          {"c", nv.c},
          {"reps", nv.reps}}},
        {"portfolio",
         {{"mu", pf.mu},
          {"sigma", pf.sigma},
          {"lower", pf.lower},
          {"upper", pf.upper},
          {"n", pf.n},
          {"q", pf.q},
          {"alpha", pf.alpha},
          {"c", pf.c},
          {"reps", pf.reps}}},
    };
}

json load_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("config: '" + path + "' is not valid JSON (" + e.what() + ")");
    }
}

}  // namespace qsbo
