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

#include "qsbo/encoders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsbo {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kSlack = 1e-12;

void check_scaling(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("scaling c must be positive and finite");
    }
}

BasisPredicate marker_predicate(Qubit marker) { return qubit_is_one(marker); }

EncodedProblem finish(Circuit circuit, RegisterLayout layout, Qubit marker) {
    if (circuit.num_qubits() != layout.width()) {
        throw std::logic_error("encoder: circuit width differs from layout width");
    }
    return {AEProblem{std::move(circuit), marker_predicate(marker)}, std::move(layout), marker};
}

void load_distribution(Circuit &circuit, const DiscretizedDistribution &dist, const Register &reg) {
    circuit.append_mapped(prepare_probabilities(dist.probabilities()), reg);
}

void check_identity_grid(const DiscretizedDistribution &demand) {
    const auto &g = demand.grid();
    if (demand.dimensions() != 1 || g.lower != 0.0 ||
        g.upper != static_cast<double>(g.size() - 1)) {
        throw std::invalid_argument(
            "newsvendor: demand grid must be one-dimensional and map index i to value i");
    }
}

}  // namespace

void SineApproxSpec::validate() const {
    check_scaling(c);
    if (c > std::numbers::pi / 4.0) {
        throw std::invalid_argument("sine approximation: c must be at most pi/4");
    }
    if (!(f_min < f_max)) {
        throw std::invalid_argument("sine approximation: f_min must be below f_max");
    }
}

void load_decision(Circuit &circuit, const Register &reg, const DecisionInput &decision) {
    if (const auto *basis = std::get_if<BasisDecision>(&decision)) {
        if (reg.size() < 64 && basis->value >= (std::uint64_t{1} << reg.size())) {
            throw std::out_of_range("decision value " + std::to_string(basis->value) +
                                    " does not fit in " + std::to_string(reg.size()) + " qubits");
        }
        for (std::size_t i = 0; i < reg.size(); ++i) {
            if ((basis->value >> i) & 1U) {
                circuit.add(gates::x(reg[i]));
            }
        }
        return;
    }
    const auto &var = std::get<VariationalDecision>(decision);
    if (var.spec.k != reg.size()) {
        throw std::invalid_argument("trial state width " + std::to_string(var.spec.k) +
                                    " differs from register width " + std::to_string(reg.size()));
    }
    circuit.append_mapped(trial_state(var.spec, var.theta), reg);
}

void AffineForm::add_register(const Register &reg, double weight) {
    for (std::size_t i = 0; i < reg.size(); ++i) {
        terms.emplace_back(reg[i], weight * static_cast<double>(std::uint64_t{1} << i));
    }
}

void append_affine_rotation(Circuit &circuit, Qubit marker, double base, double scale,
                            const AffineForm &f, const std::vector<Control> &extra) {
    const double constant = base + scale * f.constant;
    if (constant != 0.0) {
        circuit.add(gates::mcry(extra, marker, constant));
    }
    for (const auto &[q, coeff] : f.terms) {
        if (coeff == 0.0) {
            continue;
        }
        std::vector<Control> controls = extra;
        controls.push_back({q, true});
        circuit.add(gates::mcry(std::move(controls), marker, scale * coeff));
    }
}

EncodedProblem encode_quadratic(const DiscretizedDistribution &dist, double y, double c) {
    check_scaling(c);
    if (dist.dimensions() != 1) {
        throw std::invalid_argument("encode_quadratic: distribution must be one-dimensional");
    }
    const auto &g = dist.grid();
    if (y < g.lower - kSlack || y > g.upper + kSlack) {
        throw std::out_of_range("encode_quadratic: y outside [lower, upper]");
    }
    if (c * std::max(std::abs(g.lower - y), std::abs(g.upper - y)) > kHalfPi + kSlack) {
        throw std::invalid_argument("encode_quadratic: c * max|x - y| exceeds pi/2");
    }
    RegisterLayout layout;
    const Register x = layout.allocate("x", g.n);
    const Qubit marker = layout.allocate("marker", 1).front();
    Circuit circuit(layout.width());
    load_distribution(circuit, dist, x);
    AffineForm f;
    f.constant = g.lower - y;
    f.add_register(x, g.step());
    append_affine_rotation(circuit, marker, 0.0, 2.0 * c, f);
    return finish(std::move(circuit), std::move(layout), marker);
}

EncodedProblem encode_quadratic_discrete(const DiscretizedDistribution &dist, unsigned k,
                                         const DecisionInput &y, double c) {
    check_scaling(c);
    if (dist.dimensions() != 1) {
        throw std::invalid_argument("encode_quadratic_discrete: distribution must be one-dimensional");
    }
    if (k < 1 || k > 16) {
        throw std::invalid_argument("encode_quadratic_discrete: k must be in [1, 16]");
    }
    const auto &g = dist.grid();
    const double y_max = static_cast<double>((std::uint64_t{1} << k) - 1);
    const double span = std::max({std::abs(g.lower), std::abs(g.upper), std::abs(g.lower - y_max),
                                  std::abs(g.upper - y_max)});
    if (c * span > kHalfPi + kSlack) {
        throw std::invalid_argument("encode_quadratic_discrete: c * max|x - y| exceeds pi/2");
    }
    RegisterLayout layout;
    const Register x = layout.allocate("x", g.n);
    const Register yr = layout.allocate("y", k);
    const Qubit marker = layout.allocate("marker", 1).front();
    Circuit circuit(layout.width());
    load_distribution(circuit, dist, x);
    load_decision(circuit, yr, y);
    AffineForm f;
    f.constant = g.lower;
    f.add_register(x, g.step());
    f.add_register(yr, -1.0);
    append_affine_rotation(circuit, marker, 0.0, 2.0 * c, f);
    return finish(std::move(circuit), std::move(layout), marker);
}

double decode_quadratic(double a, double c) {
    check_scaling(c);
    return a / (c * c);
}

EncodedProblem encode_linear_offset(const DiscretizedDistribution &dist, double offset,
                                    double slope, double c) {
    check_scaling(c);
    if (dist.dimensions() != 1) {
        throw std::invalid_argument("encode_linear_offset: distribution must be one-dimensional");
    }
    const auto &g = dist.grid();
    const double last = offset + slope * static_cast<double>(g.size() - 1);
    if (std::min(offset, last) < -kSlack || std::max(offset, last) > 1.0 + kSlack) {
        throw std::invalid_argument("encode_linear_offset: normalized objective leaves [0, 1]");
    }
    RegisterLayout layout;
    const Register x = layout.allocate("x", g.n);
    const Qubit marker = layout.allocate("marker", 1).front();
    Circuit circuit(layout.width());
    load_distribution(circuit, dist, x);
    AffineForm f;
    f.constant = offset;
    f.add_register(x, slope);
    append_affine_rotation(circuit, marker, kHalfPi - c, 2.0 * c, f);
    return finish(std::move(circuit), std::move(layout), marker);
}

double decode_linear_offset(double a, double c, double f_min, double f_max) {
    check_scaling(c);
    const double fhat = (a - 0.5) / c + 0.5;
    return f_min + (f_max - f_min) * fhat;
}

void NewsvendorParams::validate() const {
    if (!(p_buy > 0.0) || !(p_sell > 0.0)) {
        throw std::invalid_argument("newsvendor: prices must be positive");
    }
    if (!(p_sell > p_buy)) {
        throw std::invalid_argument("newsvendor: selling price must exceed buying price");
    }
}

double newsvendor_cost(double s, double d, const NewsvendorParams &params) {
    if (d < s) {
        return params.p_buy * (s - d);
    }
    return (params.p_sell - params.p_buy) * (d - s);
}

std::pair<double, double> newsvendor_bounds(unsigned n, const NewsvendorParams &params) {
    const std::uint64_t size = std::uint64_t{1} << n;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::uint64_t s = 0; s < size; ++s) {
        for (std::uint64_t d = 0; d < size; ++d) {
            const double f = newsvendor_cost(static_cast<double>(s), static_cast<double>(d), params);
            lo = std::min(lo, f);
            hi = std::max(hi, f);
        }
    }
    return {lo, hi};
}

EncodedProblem encode_newsvendor(const DiscretizedDistribution &demand, const DecisionInput &stock,
                                 const NewsvendorParams &params, double c) {
    check_scaling(c);
    params.validate();
    check_identity_grid(demand);
    const unsigned n = demand.grid().n;
    const auto [f_min, f_max] = newsvendor_bounds(n, params);
    const double range = f_max - f_min;

    RegisterLayout layout;
    const Register d = layout.allocate("demand", n);
    const Register s = layout.allocate("stock", n);
    const Qubit compare = layout.allocate("compare", 1).front();
    const Qubit marker = layout.allocate("marker", 1).front();
    Circuit circuit(layout.width());
    load_distribution(circuit, demand, d);
    load_decision(circuit, s, stock);

    const Qubit borrowed[] = {marker};
    compare_geq(circuit, d, s, compare, borrowed);

    AffineForm over;
    over.constant = -f_min / range;
    over.add_register(s, params.p_buy / range);
    over.add_register(d, -params.p_buy / range);
    append_affine_rotation(circuit, marker, kHalfPi - c, 2.0 * c, over);

    AffineForm diff;
    diff.add_register(d, params.p_sell / range);
    diff.add_register(s, -params.p_sell / range);
    append_affine_rotation(circuit, marker, 0.0, 2.0 * c, diff, {{compare, true}});
    return finish(std::move(circuit), std::move(layout), marker);
}

EncodedProblem encode_cdf(const DiscretizedDistribution &dist, std::uint64_t lambda) {
    if (dist.dimensions() != 1) {
        throw std::invalid_argument("encode_cdf: distribution must be one-dimensional");
    }
    const unsigned n = dist.grid().n;
    if (lambda >= dist.grid().size()) {
        throw std::out_of_range("encode_cdf: lambda out of range");
    }
    RegisterLayout layout;
    const Register x = layout.allocate("x", n);
    const Qubit marker = layout.allocate("marker", 1).front();
    const Register carries = layout.allocate("carries", compare_leq_const_ancillas(n));
    Circuit circuit(layout.width());
    load_distribution(circuit, dist, x);
    compare_leq_const(circuit, x, lambda, marker, carries);
    return finish(std::move(circuit), std::move(layout), marker);
}

EncodedProblem encode_cvar(const DiscretizedDistribution &dist, std::uint64_t lambda) {
    if (dist.dimensions() != 1) {
        throw std::invalid_argument("encode_cvar: distribution must be one-dimensional");
    }
    const unsigned n = dist.grid().n;
    if (lambda < 1 || lambda >= dist.grid().size()) {
        throw std::out_of_range("encode_cvar: lambda must be in [1, 2^n)");
    }
    RegisterLayout layout;
    const Register x = layout.allocate("x", n);
    const Qubit flag = layout.allocate("flag", 1).front();
    const Register carries = layout.allocate("carries", compare_leq_const_ancillas(n));
    const Qubit marker = layout.allocate("marker", 1).front();
    Circuit circuit(layout.width());
    load_distribution(circuit, dist, x);

    Circuit flag_circuit(layout.width());
    compare_leq_const(flag_circuit, x, lambda, flag, carries);
    circuit.append(flag_circuit);
    for (std::uint64_t v = 1; v <= lambda; ++v) {
        std::vector<Control> controls{{flag, true}};
        for (std::size_t i = 0; i < x.size(); ++i) {
            controls.push_back({x[i], ((v >> i) & 1U) != 0});
        }
        const double angle =
            2.0 * std::asin(std::sqrt(static_cast<double>(v) / static_cast<double>(lambda)));
        circuit.add(gates::mcry(std::move(controls), marker, angle));
    }
    circuit.append(flag_circuit.adjoint());
    return finish(std::move(circuit), std::move(layout), marker);
}

RegisterLayout portfolio_layout(unsigned k, unsigned n, bool var_circuit) {
    const unsigned s = sum_register_width(k, n);
    RegisterLayout layout;
    layout.allocate("y", k);
    layout.allocate("x", n * k);
    layout.allocate("marker", 1);
    layout.allocate("sum", s);
    if (var_circuit) {
        layout.allocate("compare", 1);
    }
    layout.allocate("add_ancillas", n);

    if (weighted_sum_ancillas(k, n) > n) {
        throw std::invalid_argument("width accounting violation: weighted sum needs " +
                                    std::to_string(weighted_sum_ancillas(k, n)) +
                                    " ancillas, layout provides " + std::to_string(n));
    }
    if (var_circuit && compare_leq_const_ancillas(s) > n + 1) {
        throw std::invalid_argument("width accounting violation: comparator needs " +
                                    std::to_string(compare_leq_const_ancillas(s)) +
                                    " carries, layout provides " + std::to_string(n + 1));
    }
    return layout;
}

std::uint64_t portfolio_max_sum(const DiscretizedDistribution &dist) {
    return static_cast<std::uint64_t>(dist.dimensions()) *
           ((std::uint64_t{1} << dist.qubits_per_dimension()) - 1);
}

namespace {

void check_portfolio_distribution(const DiscretizedDistribution &dist) {
    const auto &g0 = dist.grid(0);
    for (std::size_t d = 0; d < dist.dimensions(); ++d) {
        const auto &g = dist.grid(d);
        if (g.lower != 0.0 || g.upper != g0.upper) {
            throw std::invalid_argument(
                "portfolio: every dimension must share bounds with lower bound 0");
        }
    }
}

struct PortfolioCircuit {
    RegisterLayout layout;
    Circuit circuit;
};

PortfolioCircuit portfolio_prefix(const DiscretizedDistribution &dist, const DecisionInput &y,
                                  bool var_circuit) {
    check_portfolio_distribution(dist);
    const auto k = static_cast<unsigned>(dist.dimensions());
    const unsigned n = dist.qubits_per_dimension();
    RegisterLayout layout = portfolio_layout(k, n, var_circuit);
    Circuit circuit(layout.width());
    load_decision(circuit, layout["y"], y);
    const Register &x = layout["x"];
    load_distribution(circuit, dist, x);
    std::vector<Register> xs;
    for (unsigned d = 0; d < k; ++d) {
        xs.emplace_back(x.begin() + d * n, x.begin() + (d + 1) * n);
    }
    weighted_sum(circuit, layout["y"], xs, layout["sum"], layout["add_ancillas"]);
    return {std::move(layout), std::move(circuit)};
}

}  // namespace

EncodedProblem encode_portfolio_return(const DiscretizedDistribution &dist,
                                       const DecisionInput &y, double c) {
    check_scaling(c);
    auto [layout, circuit] = portfolio_prefix(dist, y, false);
    const Qubit marker = layout.single("marker");
    AffineForm f;
    f.add_register(layout["sum"], 1.0 / static_cast<double>(portfolio_max_sum(dist)));
    append_affine_rotation(circuit, marker, kHalfPi - c, 2.0 * c, f);
    return finish(std::move(circuit), std::move(layout), marker);
}

EncodedProblem encode_portfolio_cdf(const DiscretizedDistribution &dist, const DecisionInput &y,
                                    std::uint64_t lambda) {
    auto [layout, circuit] = portfolio_prefix(dist, y, true);
    const Qubit marker = layout.single("marker");
    const Register &sum = layout["sum"];
    if (lambda >= (std::uint64_t{1} << sum.size())) {
        throw std::out_of_range("encode_portfolio_cdf: lambda out of range");
    }
    Register carries{layout.single("compare")};
    for (Qubit q : layout["add_ancillas"]) {
        carries.push_back(q);
    }
    compare_leq_const(circuit, sum, lambda, marker, carries);
    return finish(std::move(circuit), std::move(layout), marker);
}

}  // namespace qsbo
