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
 * @file encoders.hpp
 * Builders of AEProblems whose good-state probability encodes an
 * expectation, a CDF value or a restricted expectation. The good state is
 * always "marker qubit is |1>".
 */
#pragma once

#include "qsbo/amplitude_estimation.hpp"
#include "qsbo/arithmetic.hpp"
#include "qsbo/circuits.hpp"
#include "qsbo/distributions.hpp"

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace qsbo {

/// An AEProblem together with the named registers it was built on.
struct EncodedProblem {
    AEProblem problem;
    RegisterLayout layout;
    Qubit marker = 0;
};

enum class SineFlavor { QuadraticDirect, LinearOffset };

struct SineApproxSpec {
    double c = 0.05;
    double f_min = 0.0;
    double f_max = 1.0;
    SineFlavor flavor = SineFlavor::LinearOffset;

    void validate() const;
};

/// A decision register prepared in a fixed basis state.
struct BasisDecision {
    std::uint64_t value = 0;
};

/// A decision register prepared by the RY/CX trial state.
struct VariationalDecision {
    AnsatzSpec spec;
    std::vector<double> theta;
};

using DecisionInput = std::variant<BasisDecision, VariationalDecision>;

/// Prepares `reg` according to `decision`.
void load_decision(Circuit &circuit, const Register &reg, const DecisionInput &decision);

/// constant + sum_j coefficient_j * bit_j over arbitrary qubits.
struct AffineForm {
    double constant = 0.0;
    std::vector<std::pair<Qubit, double>> terms;

    /// Adds weight * (integer value of reg).
    void add_register(const Register &reg, double weight);
};

/**
 * RY(base + scale * f) on `marker`: one RY for the constant part and one
 * controlled RY per term, all additionally conditioned on `extra`.
 */
void append_affine_rotation(Circuit &circuit, Qubit marker, double base, double scale,
                            const AffineForm &f, const std::vector<Control> &extra = {});

/**
 * Marker amplitude sin(c (phi(x) - y)): a = sum_x p_x sin^2(c (phi(x) - y)).
 * Requires y in [lower, upper] and c * max|phi(x) - y| <= pi/2.
 */
EncodedProblem encode_quadratic(const DiscretizedDistribution &dist, double y, double c);

/**
 * Same encoding with y held as an integer on its own register:
 * a = sum_{x, y} P[y] p_x sin^2(c (phi(x) - y)).
 */
EncodedProblem encode_quadratic_discrete(const DiscretizedDistribution &dist, unsigned k,
                                         const DecisionInput &y, double c);

/// a / c^2
[[nodiscard]] double decode_quadratic(double a, double c);

/**
 * Marker half-angle pi/4 + c (fhat(x) - 1/2) with fhat(x) = offset +
 * slope * x over the integer index x of a one-dimensional distribution.
 * fhat must stay inside [0, 1].
 */
EncodedProblem encode_linear_offset(const DiscretizedDistribution &dist, double offset,
                                    double slope, double c);

/// f_min + (f_max - f_min) * ((a - 1/2) / c + 1/2)
[[nodiscard]] double decode_linear_offset(double a, double c, double f_min, double f_max);

struct NewsvendorParams {
    double p_buy = 0.2;
    double p_sell = 0.5;

    void validate() const;
};

/// Overage p_buy (s - d) when d < s, otherwise (p_sell - p_buy)(d - s).
[[nodiscard]] double newsvendor_cost(double s, double d, const NewsvendorParams &params);

/// (f_min, f_max) of newsvendor_cost over every (s, d) index pair.
[[nodiscard]] std::pair<double, double> newsvendor_bounds(unsigned n,
                                                          const NewsvendorParams &params);

/**
 * Layout: demand (n), stock (n), compare (1), marker (1). The comparison
 * [d >= s] runs first and borrows the still-idle marker as its ancilla;
 * the overage form is rotated onto the marker and the difference to the
 * opportunity form is added under control of the compare qubit. The
 * demand grid must map index i to the value i.
 */
EncodedProblem encode_newsvendor(const DiscretizedDistribution &demand, const DecisionInput &stock,
                                 const NewsvendorParams &params, double c);

/// a = P[x <= lambda]. Layout: x (n), marker (1), carries (n - 1).
EncodedProblem encode_cdf(const DiscretizedDistribution &dist, std::uint64_t lambda);

/**
 * a = sum_{x <= lambda} p_x x / lambda, for lambda >= 1. The flag
 * [x <= lambda] is computed, conditions one exact rotation per admissible
 * x, and is uncomputed. Layout: x (n), flag (1), carries (n - 1), marker.
 */
EncodedProblem encode_cvar(const DiscretizedDistribution &dist, std::uint64_t lambda);

/// Qubit roles for the portfolio circuits, in allocation order.
RegisterLayout portfolio_layout(unsigned k, unsigned n, bool var_circuit);

/**
 * Portfolio circuits over a k-dimensional distribution with common bounds
 * and lower bound 0, so that y^T X = step * (sum of selected indices).
 * The return encoder rotates fhat = v / v_max of the sum register v; the
 * CDF encoder writes [v <= lambda] straight into the marker.
 */
EncodedProblem encode_portfolio_return(const DiscretizedDistribution &dist,
                                       const DecisionInput &y, double c);
EncodedProblem encode_portfolio_cdf(const DiscretizedDistribution &dist, const DecisionInput &y,
                                    std::uint64_t lambda);

/// Largest attainable sum-register value k (2^n - 1).
[[nodiscard]] std::uint64_t portfolio_max_sum(const DiscretizedDistribution &dist);

}  // namespace qsbo
