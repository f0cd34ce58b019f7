// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "basis.hpp"
#include "density_matrix.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace mubsim {

enum class StateKind { pure, mixed };

// Haar-uniform unit vector: normalized vector of iid complex normals.
inline Ket random_ket(std::size_t dim, Rng &rng) {
    Ket ket(dim);
    for (auto &c : ket) {
        c = rng.complex_normal();
    }
    const double norm = ket_norm(ket);
    for (auto &c : ket) {
        c /= norm;
    }
    return ket;
}

inline DensityMatrix random_pure_density(std::size_t dim, Rng &rng) {
    return DensityMatrix::pure(random_ket(dim, rng));
}

// Hilbert-Schmidt-uniform mixed state: G G^dagger / tr(G G^dagger)
// for a Ginibre matrix G of iid complex normals.
inline DensityMatrix random_mixed_density(std::size_t dim, Rng &rng) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            g(i, j) = rng.complex_normal();
        }
    }
    ComplexMatrix m(dim);
    double trace = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t k = 0; k < dim; ++k) {
                sum += g(i, k) * std::conj(g(j, k));
            }
            m(i, j) = sum;
            if (i == j) {
                trace += sum.real();
            }
        }
    }
    m *= 1.0 / trace;
    return DensityMatrix(std::move(m));
}

inline DensityMatrix random_density(std::size_t dim, StateKind kind, std::uint64_t seed) {
    if (dim < 2) {
        throw InvalidDim("random states need dim >= 2, got " + std::to_string(dim));
    }
    Rng rng(seed);
    return kind == StateKind::pure ? random_pure_density(dim, rng)
                                   : random_mixed_density(dim, rng);
}

} // namespace mubsim
