// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace mubsim {

// Convex combination coefficients: nonnegative, summing to one within
// tol. Also used for the three direction weights in the qubit
// counterexample machinery.
class MixtureWeights {
  public:
    explicit MixtureWeights(std::vector<double> weights, double tol = 1e-12)
        : weights_(std::move(weights)) {
        if (weights_.empty()) {
            throw InvalidWeights("weight vector is empty");
        }
        double sum = 0.0;
        for (double w : weights_) {
            if (!(w >= 0.0)) {
                throw InvalidWeights("weight " + std::to_string(w) + " is negative");
            }
            sum += w;
        }
        if (std::abs(sum - 1.0) > tol) {
            throw InvalidWeights("weights sum to " + std::to_string(sum) +
                                 ", off by more than " + std::to_string(tol));
        }
    }

    static MixtureWeights uniform(std::size_t count) {
        if (count == 0) {
            throw InvalidWeights("weight vector is empty");
        }
        return MixtureWeights(
            std::vector<double>(count, 1.0 / static_cast<double>(count)));
    }

    std::size_t size() const { return weights_.size(); }

    double operator[](std::size_t i) const { return weights_[i]; }

    double at(std::size_t i) const {
        if (i >= weights_.size()) {
            throw IndexOutOfRange("weight " + std::to_string(i) + " of " +
                                  std::to_string(weights_.size()));
        }
        return weights_[i];
    }

    const std::vector<double> &values() const { return weights_; }

    // True when every weight equals 1/count within tol.
    bool is_unbiased(double tol = 1e-12) const {
        const double target = 1.0 / static_cast<double>(weights_.size());
        for (double w : weights_) {
            if (std::abs(w - target) > tol) {
                return false;
            }
        }
        return true;
    }

    // max_i |w_i - 1/count|.
    double bias() const {
        const double target = 1.0 / static_cast<double>(weights_.size());
        double worst = 0.0;
        for (double w : weights_) {
            worst = std::max(worst, std::abs(w - target));
        }
        return worst;
    }

  private:
    std::vector<double> weights_;
};

} // namespace mubsim
