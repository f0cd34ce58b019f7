// SPDX-License-Identifier: Apache-2.0
#pragma once

// Test-side reference implementations, kept deliberately independent
// of the library's solver: a plain real symmetric Jacobi (angle via
// atan2, full-matrix updates, no Hermitian shortcuts) applied to the
// real 2Nx2N embedding [[X, -Y], [Y, X]] of a complex Hermitian
// matrix X + iY. Every eigenvalue of the complex matrix shows up
// twice in the embedding's spectrum.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "mubsim/complex_matrix.hpp"

namespace oracle {

// Eigenvalues of a real symmetric matrix (row-major), sorted
// descending. Textbook cyclic Jacobi.
inline std::vector<double> real_symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    auto at = [&](std::size_t i, std::size_t j) -> double & { return a[i * n + j]; };

    double scale = 0.0;
    for (const double v : a) {
        scale += v * v;
    }
    scale = std::sqrt(scale);
    const double stop = 1e-14 * std::max(scale, 1e-300);

    for (std::size_t sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += 2.0 * at(p, q) * at(p, q);
            }
        }
        if (std::sqrt(off) <= stop) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (at(p, q) == 0.0) {
                    continue;
                }
                const double theta = 0.5 * std::atan2(2.0 * at(p, q), at(q, q) - at(p, p));
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                for (std::size_t i = 0; i < n; ++i) {
                    const double t1 = at(i, p);
                    const double t2 = at(i, q);
                    at(i, p) = c * t1 - s * t2;
                    at(i, q) = s * t1 + c * t2;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double t1 = at(p, i);
                    const double t2 = at(q, i);
                    at(p, i) = c * t1 - s * t2;
                    at(q, i) = s * t1 + c * t2;
                }
            }
        }
    }

    std::vector<double> eigenvalues(n);
    for (std::size_t i = 0; i < n; ++i) {
        eigenvalues[i] = at(i, i);
    }
    std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<double>());
    return eigenvalues;
}

// Eigenvalues of a complex Hermitian matrix via the doubled real
// embedding, sorted descending, with the duplicates collapsed.
inline std::vector<double> hermitian_eigenvalues(const mubsim::ComplexMatrix &m) {
    const std::size_t n = m.dim();
    std::vector<double> embedded(4 * n * n, 0.0);
    auto put = [&](std::size_t i, std::size_t j, double v) { embedded[i * 2 * n + j] = v; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = m(i, j).real();
            const double y = m(i, j).imag();
            put(i, j, x);
            put(i, j + n, -y);
            put(i + n, j, y);
            put(i + n, j + n, x);
        }
    }
    const std::vector<double> doubled = real_symmetric_eigenvalues(std::move(embedded), 2 * n);
    std::vector<double> eigenvalues(n);
    for (std::size_t k = 0; k < n; ++k) {
        eigenvalues[k] = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
    }
    return eigenvalues;
}

} // namespace oracle
