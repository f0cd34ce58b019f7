// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "complex_matrix.hpp"
#include "errors.hpp"

namespace mubsim {

// Eigendecomposition of a Hermitian matrix. Eigenvalues are real and
// sorted descending; eigenvectors[j] pairs with eigenvalues[j] and the
// vectors form an orthonormal basis.
struct Spectrum {
    std::vector<double> eigenvalues;
    OrthonormalBasis eigenvectors;

    std::size_t dim() const { return eigenvectors.dim(); }

    // Sum_j lambda_j |v_j><v_j|.
    ComplexMatrix reconstruct() const {
        const std::size_t n = dim();
        ComplexMatrix m(n);
        for (std::size_t j = 0; j < n; ++j) {
            const Ket &v = eigenvectors.vector(j);
            const double lambda = eigenvalues[j];
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    m(a, b) += lambda * (v[a] * std::conj(v[b]));
                }
            }
        }
        return m;
    }
};

namespace detail {

// One cyclic sweep of complex Jacobi rotations.
//
// For pivot (p, q) with a_pq = r e^{i phi}, the unitary
//   U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
// first cancels the pivot's phase, then applies the classic real
// rotation with tau = (a_qq - a_pp) / (2r),
// t = sign(tau)/(|tau| + sqrt(1 + tau^2)), c = 1/sqrt(1+t^2), s = t c.
// U^dagger A U zeroes the (p, q) entry exactly and keeps A Hermitian.
inline void jacobi_sweep(ComplexMatrix &a, ComplexMatrix &v) {
    const std::size_t n = a.dim();
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const Complex apq = a(p, q);
            const double r = std::abs(apq);
            if (r == 0.0) {
                continue;
            }
            const Complex phase = apq / r; // e^{i phi}
            const Complex phase_conj = std::conj(phase);

            const double alpha = a(p, p).real();
            const double beta = a(q, q).real();
            const double tau = (beta - alpha) / (2.0 * r);
            double t;
            if (tau >= 0.0) {
                t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
            } else {
                t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
            }
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;

            // Rows/columns outside the pivot pair.
            for (std::size_t i = 0; i < n; ++i) {
                if (i == p || i == q) {
                    continue;
                }
                const Complex aip = a(i, p);
                const Complex aiq = a(i, q);
                const Complex new_ip = c * aip - s * (phase_conj * aiq);
                const Complex new_iq = s * aip + c * (phase_conj * aiq);
                a(i, p) = new_ip;
                a(p, i) = std::conj(new_ip);
                a(i, q) = new_iq;
                a(q, i) = std::conj(new_iq);
            }

            // Pivot block. Both diagonal entries stay real.
            const double new_pp = c * c * alpha - 2.0 * c * s * r + s * s * beta;
            const double new_qq = s * s * alpha + 2.0 * c * s * r + c * c * beta;
            a(p, p) = Complex(new_pp, 0.0);
            a(q, q) = Complex(new_qq, 0.0);
            a(p, q) = Complex(0.0, 0.0);
            a(q, p) = Complex(0.0, 0.0);

            // Accumulate eigenvectors: V <- V U.
            for (std::size_t i = 0; i < n; ++i) {
                const Complex vip = v(i, p);
                const Complex viq = v(i, q);
                v(i, p) = c * vip - s * (phase_conj * viq);
                v(i, q) = s * vip + c * (phase_conj * viq);
            }
        }
    }
}

inline double off_diagonal_norm(const ComplexMatrix &a) {
    const std::size_t n = a.dim();
    double sum = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            sum += std::norm(a(p, q));
        }
    }
    return std::sqrt(2.0 * sum);
}

// Rotate each vector's global phase so its largest-magnitude component
// is real and positive. Makes eigenvectors reproducible across runs.
inline void fix_phase(Ket &v) {
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double mag = std::norm(v[k]);
        if (mag > best_mag) {
            best_mag = mag;
            best = k;
        }
    }
    const double mag = std::abs(v[best]);
    if (mag == 0.0) {
        return;
    }
    const Complex rot = std::conj(v[best]) / mag;
    for (auto &c : v) {
        c *= rot;
    }
    v[best] = Complex(std::abs(v[best]), 0.0);
}

} // namespace detail

// Full eigendecomposition of a Hermitian matrix by cyclic complex
// Jacobi rotations. Quadratically convergent; the returned spectrum
// satisfies reconstruct() == input to ~1e-14 * ||input||.
inline Spectrum hermitian_eig(const ComplexMatrix &m, double hermitian_tol = 1e-10,
                              std::size_t max_sweeps = 64) {
    const std::size_t n = m.dim();
    if (n == 0) {
        throw InvalidDim("cannot decompose an empty matrix");
    }
    const double defect = m.hermiticity_defect();
    if (defect > hermitian_tol) {
        throw NotHermitian("hermiticity defect " + std::to_string(defect) +
                           " exceeds tolerance " + std::to_string(hermitian_tol));
    }

    // Work on the exactly Hermitian part (m + m^dagger) / 2.
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = Complex(m(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(frobenius_norm(a), 1e-300);
    const double threshold = 1e-15 * scale;
    bool converged = false;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        if (detail::off_diagonal_norm(a) <= threshold) {
            converged = true;
            break;
        }
        detail::jacobi_sweep(a, v);
    }
    if (!converged && detail::off_diagonal_norm(a) > threshold) {
        throw NoConvergence("off-diagonal norm " + std::to_string(detail::off_diagonal_norm(a)) +
                            " above threshold after " + std::to_string(max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    std::vector<double> eigenvalues(n);
    std::vector<Ket> vectors(n, Ket(n));
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        eigenvalues[j] = a(src, src).real();
        for (std::size_t i = 0; i < n; ++i) {
            vectors[j][i] = v(i, src);
        }
        detail::fix_phase(vectors[j]);
    }

    // Rotations are unitary, so a loose tolerance here only guards
    // against pathological accumulation.
    return Spectrum{std::move(eigenvalues), OrthonormalBasis(std::move(vectors), 1e-10)};
}

inline double min_eigenvalue(const ComplexMatrix &m, double hermitian_tol = 1e-10) {
    return hermitian_eig(m, hermitian_tol).eigenvalues.back();
}

} // namespace mubsim
