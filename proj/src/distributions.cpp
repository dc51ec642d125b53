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

#include "qsbo/distributions.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qsbo {

std::vector<double> AffineGrid::values() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = value(i);
    }
    return out;
}

namespace {

void check_grid(const AffineGrid &g) {
    if (g.n < 1 || g.n > 12) {
        throw std::invalid_argument("grid: qubits per dimension must be in [1, 12]");
    }
    if (!(g.lower < g.upper)) {
        throw std::invalid_argument("grid: lower bound must be below upper bound");
    }
}

std::vector<double> normalized(std::vector<double> w) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw std::invalid_argument("distribution: density vanishes on every grid point");
    }
    for (auto &v : w) {
        v /= total;
    }
    return w;
}

}  // namespace

DiscretizedDistribution::DiscretizedDistribution(std::vector<AffineGrid> dims,
                                                 std::vector<double> probabilities)
    : dims_(std::move(dims)), probs_(std::move(probabilities)) {
    if (dims_.empty()) {
        throw std::invalid_argument("distribution: at least one dimension required");
    }
    for (const auto &g : dims_) {
        check_grid(g);
        if (g.n != dims_.front().n) {
            throw std::invalid_argument("distribution: all dimensions must share n");
        }
    }
    if (num_qubits() > 24) {
        throw std::invalid_argument("distribution: too many qubits");
    }
    if (probs_.size() != (std::size_t{1} << num_qubits())) {
        throw std::invalid_argument("distribution: expected " +
                                    std::to_string(std::size_t{1} << num_qubits()) +
                                    " probabilities, got " + std::to_string(probs_.size()));
    }
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument("distribution: negative or NaN probability");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kStateTolerance) {
        throw std::invalid_argument("distribution: probabilities do not sum to 1");
    }
}

DiscretizedDistribution::DiscretizedDistribution(AffineGrid grid, std::vector<double> probabilities)
    : DiscretizedDistribution(std::vector<AffineGrid>{grid}, std::move(probabilities)) {}

unsigned DiscretizedDistribution::num_qubits() const noexcept {
    return static_cast<unsigned>(dims_.size()) * dims_.front().n;
}

BasisIndex DiscretizedDistribution::component(BasisIndex joint, std::size_t d) const noexcept {
    const unsigned n = dims_.front().n;
    return (joint >> (d * n)) & ((BasisIndex{1} << n) - 1);
}

double DiscretizedDistribution::value(BasisIndex joint, std::size_t d) const {
    return dims_.at(d).value(component(joint, d));
}

std::vector<double> DiscretizedDistribution::marginal(std::size_t d) const {
    std::vector<double> out(dims_.at(d).size(), 0.0);
    for (BasisIndex j = 0; j < probs_.size(); ++j) {
        out[component(j, d)] += probs_[j];
    }
    return out;
}

DiscretizedDistribution discretize_normal(double mu, double sigma, double lower, double upper,
                                          unsigned n) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("discretize_normal: sigma must be positive");
    }
    const AffineGrid grid{n, lower, upper};
    check_grid(grid);
    std::vector<double> w(grid.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double z = (grid.value(i) - mu) / sigma;
        w[i] = std::exp(-0.5 * z * z);
    }
    return {grid, normalized(std::move(w))};
}

DiscretizedDistribution discretize_lognormal_multivariate(
    const std::vector<double> &mu, const std::vector<std::vector<double>> &sigma,
    const std::vector<std::pair<double, double>> &bounds, unsigned n) {
    const std::size_t k = mu.size();
    if (k == 0 || sigma.size() != k || bounds.size() != k) {
        throw std::invalid_argument("discretize_lognormal_multivariate: dimension mismatch");
    }
    Eigen::MatrixXd cov(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        if (sigma[i].size() != k) {
            throw std::invalid_argument("discretize_lognormal_multivariate: covariance must be square");
        }
        for (std::size_t j = 0; j < k; ++j) {
            cov(i, j) = sigma[i][j];
        }
    }
    if (!cov.isApprox(cov.transpose(), 1e-12)) {
        throw std::invalid_argument("discretize_lognormal_multivariate: covariance not symmetric");
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument(
            "discretize_lognormal_multivariate: covariance not positive definite");
    }

    std::vector<AffineGrid> dims;
    for (const auto &[lo, hi] : bounds) {
        dims.push_back({n, lo, hi});
        check_grid(dims.back());
    }
    const std::size_t total = std::size_t{1} << (n * k);
    std::vector<double> w(total, 0.0);
    Eigen::VectorXd z(k);
    for (std::size_t j = 0; j < total; ++j) {
        double jacobian = 1.0;
        bool positive = true;
        for (std::size_t d = 0; d < k; ++d) {
            const double x = dims[d].value((j >> (d * n)) & ((std::size_t{1} << n) - 1));
            if (x <= 0.0) {
                positive = false;
                break;
            }
            z(d) = std::log(x) - mu[d];
            jacobian *= x;
        }
        if (!positive) {
            continue;
        }
        const double q = z.dot(llt.solve(z));
        w[j] = std::exp(-0.5 * q) / jacobian;
    }
    return {std::move(dims), normalized(std::move(w))};
}

}  // namespace qsbo
