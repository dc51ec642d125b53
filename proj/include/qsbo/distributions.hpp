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

#pragma once

#include "qsbo/statevector.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace qsbo {

/// phi(i) = lower + (upper - lower) * i / (2^n - 1) for i in [0, 2^n).
struct AffineGrid {
    unsigned n = 1;
    double lower = 0.0;
    double upper = 1.0;

    [[nodiscard]] std::size_t size() const noexcept { return std::size_t{1} << n; }
    [[nodiscard]] double step() const noexcept {
        return (upper - lower) / static_cast<double>(size() - 1);
    }
    [[nodiscard]] double value(BasisIndex i) const noexcept {
        return lower + step() * static_cast<double>(i);
    }
    [[nodiscard]] std::vector<double> values() const;
};

/**
 * Probabilities on a product of affine grids. The joint index concatenates
 * the per-dimension indices little-endian: dimension d occupies bits
 * [d*n, (d+1)*n) where every dimension has the same n.
 */
class DiscretizedDistribution {
  public:
    /// Validates non-negativity, normalization (1e-10) and size.
    DiscretizedDistribution(std::vector<AffineGrid> dims, std::vector<double> probabilities);
    /// Single-dimension shorthand.
    DiscretizedDistribution(AffineGrid grid, std::vector<double> probabilities);

    [[nodiscard]] unsigned num_qubits() const noexcept;
    [[nodiscard]] unsigned qubits_per_dimension() const noexcept { return dims_.front().n; }
    [[nodiscard]] std::size_t dimensions() const noexcept { return dims_.size(); }
    [[nodiscard]] const AffineGrid &grid(std::size_t d = 0) const { return dims_.at(d); }
    [[nodiscard]] const std::vector<double> &probabilities() const noexcept { return probs_; }
    [[nodiscard]] double probability(BasisIndex joint) const { return probs_.at(joint); }

    /// Index of dimension d inside a joint index.
    [[nodiscard]] BasisIndex component(BasisIndex joint, std::size_t d) const noexcept;
    /// phi applied to dimension d of a joint index.
    [[nodiscard]] double value(BasisIndex joint, std::size_t d = 0) const;

    /// Marginal probabilities of dimension d.
    [[nodiscard]] std::vector<double> marginal(std::size_t d) const;

  private:
    std::vector<AffineGrid> dims_;
    std::vector<double> probs_;
};

/// Gaussian density evaluated on the grid points, then renormalized.
DiscretizedDistribution discretize_normal(double mu, double sigma, double lower, double upper,
                                          unsigned n);

/**
 * Multivariate log-normal density on the product grid (density taken as 0
 * at any non-positive grid value), renormalized. `bounds[d]` is (lower,
 * upper) of dimension d; every dimension uses `n` qubits.
 */
DiscretizedDistribution discretize_lognormal_multivariate(
    const std::vector<double> &mu, const std::vector<std::vector<double>> &sigma,
    const std::vector<std::pair<double, double>> &bounds, unsigned n);

}  // namespace qsbo
