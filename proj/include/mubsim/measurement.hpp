// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "complex_matrix.hpp"
#include "density_matrix.hpp"
#include "errors.hpp"
#include "mixture_weights.hpp"

namespace mubsim {

// Born-rule outcome probabilities of one complete projective
// measurement: probs[j] = <j|rho|j>, nonnegative, summing to one.
struct OutcomeDistribution {
    std::size_t basis_index = 0;
    std::vector<double> probs;
};

// probs[j] = <j|rho|j>. Values in [-1e-12, 0) are clamped to zero and
// the vector renormalized; anything more negative, any imaginary part
// above 1e-12, or a total off one by more than 1e-12 is an error in
// the inputs rather than rounding, and throws.
inline OutcomeDistribution born_probabilities(const DensityMatrix &rho,
                                              const OrthonormalBasis &basis,
                                              std::size_t basis_index = 0) {
    if (rho.dim() != basis.dim()) {
        throw DimMismatch("state dim " + std::to_string(rho.dim()) + " vs basis dim " +
                          std::to_string(basis.dim()));
    }
    const std::size_t n = rho.dim();
    std::vector<double> probs(n);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const Ket &v = basis.vector(j);
        Complex p(0.0, 0.0);
        for (std::size_t a = 0; a < n; ++a) {
            Complex row(0.0, 0.0);
            for (std::size_t b = 0; b < n; ++b) {
                row += rho(a, b) * v[b];
            }
            p += std::conj(v[a]) * row;
        }
        if (std::abs(p.imag()) > 1e-12) {
            throw InvalidState("outcome " + std::to_string(j) + " has imaginary probability " +
                               std::to_string(p.imag()));
        }
        double value = p.real();
        if (value < 0.0) {
            if (value < -1e-12) {
                throw InvalidState("outcome " + std::to_string(j) + " has probability " +
                                   std::to_string(value));
            }
            value = 0.0;
        }
        probs[j] = value;
        total += value;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidState("probabilities sum to " + std::to_string(total));
    }
    for (auto &p : probs) {
        p /= total;
    }
    return OutcomeDistribution{basis_index, std::move(probs)};
}

// A dephased state tagged with the basis that produced it.
struct EnsembleState {
    std::size_t basis_index = 0;
    DensityMatrix rho;
};

// Non-selective measurement: rho -> sum_j <j|rho|j> |j><j|.
inline EnsembleState dephase(const DensityMatrix &rho, const OrthonormalBasis &basis,
                             std::size_t basis_index = 0) {
    const OutcomeDistribution dist = born_probabilities(rho, basis, basis_index);
    const std::size_t n = rho.dim();
    ComplexMatrix m(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double p = dist.probs[j];
        if (p == 0.0) {
            continue;
        }
        const Ket &v = basis.vector(j);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                m(a, b) += p * (v[a] * std::conj(v[b]));
            }
        }
    }
    return EnsembleState{basis_index, DensityMatrix(std::move(m))};
}

// Convex mixture sum_a w_a rho_a.
inline DensityMatrix mix(const std::vector<EnsembleState> &states,
                         const MixtureWeights &weights) {
    if (states.empty()) {
        throw InvalidArgument("nothing to mix");
    }
    if (weights.size() != states.size()) {
        throw WeightCountMismatch("got " + std::to_string(weights.size()) + " weights for " +
                                  std::to_string(states.size()) + " states");
    }
    const std::size_t n = states[0].rho.dim();
    ComplexMatrix m(n);
    for (std::size_t a = 0; a < states.size(); ++a) {
        if (states[a].rho.dim() != n) {
            throw DimMismatch("mixing states of dims " + std::to_string(n) + " and " +
                              std::to_string(states[a].rho.dim()));
        }
        const double w = weights[a];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) += w * states[a].rho(i, j);
            }
        }
    }
    return DensityMatrix(std::move(m));
}

// Measure in every basis (weights[a] selecting basis a), keep no
// record of the outcome: the weighted mixture of the dephased states.
inline DensityMatrix post_measurement_state(const DensityMatrix &rho,
                                            const std::vector<OrthonormalBasis> &bases,
                                            const MixtureWeights &weights) {
    if (bases.empty()) {
        throw InvalidArgument("no bases to measure in");
    }
    std::vector<EnsembleState> dephased;
    dephased.reserve(bases.size());
    for (std::size_t a = 0; a < bases.size(); ++a) {
        dephased.push_back(dephase(rho, bases[a], a));
    }
    return mix(dephased, weights);
}

} // namespace mubsim
