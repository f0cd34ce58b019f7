// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "complex_matrix.hpp"
#include "eig.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace mubsim {

inline bool is_prime(std::size_t n) {
    if (n < 2) {
        return false;
    }
    for (std::size_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

// Result of checking a candidate family of bases: the largest
// deviation from |<v|w>|^2 = 1/N across distinct basis pairs (and from
// orthonormality within each basis), plus which pair was worst.
struct MubVerification {
    bool is_mub = false;
    double max_deviation = 0.0;
    std::size_t worst_a = 0;
    std::size_t worst_b = 0;
};

// Checks pairwise unbiasedness of two or more equal-dimension bases.
// A within-basis orthonormality defect is reported with worst_a ==
// worst_b.
inline MubVerification verify_mub(const std::vector<OrthonormalBasis> &bases,
                                  double tol = 1e-10) {
    if (bases.size() < 2) {
        throw InvalidArgument("unbiasedness needs at least two bases");
    }
    const std::size_t n = bases[0].dim();
    for (const auto &b : bases) {
        if (b.dim() != n) {
            throw DimMismatch("bases of dims " + std::to_string(n) + " and " +
                              std::to_string(b.dim()) + " mixed in one set");
        }
    }

    MubVerification report;
    const double target = 1.0 / static_cast<double>(n);
    for (std::size_t a = 0; a < bases.size(); ++a) {
        const double self = orthonormality_defect(bases[a].vectors());
        if (self > report.max_deviation) {
            report.max_deviation = self;
            report.worst_a = a;
            report.worst_b = a;
        }
        for (std::size_t b = a + 1; b < bases.size(); ++b) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    const double overlap2 =
                        std::norm(inner_product(bases[a].vector(i), bases[b].vector(j)));
                    const double dev = std::abs(overlap2 - target);
                    if (dev > report.max_deviation) {
                        report.max_deviation = dev;
                        report.worst_a = a;
                        report.worst_b = b;
                    }
                }
            }
        }
    }
    report.is_mub = report.max_deviation <= tol;
    return report;
}

// A complete family of N+1 pairwise mutually unbiased bases of C^N,
// validated on construction. basis(0) is the reference basis used for
// overlap coordinates.
class MubSet {
  public:
    explicit MubSet(std::vector<OrthonormalBasis> bases, double tol = 1e-10)
        : bases_(std::move(bases)) {
        if (bases_.empty()) {
            throw WrongBasisCount("basis set is empty");
        }
        const std::size_t n = bases_[0].dim();
        if (bases_.size() != n + 1) {
            throw WrongBasisCount("dim " + std::to_string(n) + " needs " +
                                  std::to_string(n + 1) + " bases, got " +
                                  std::to_string(bases_.size()));
        }
        const MubVerification check = verify_mub(bases_, tol);
        if (!check.is_mub) {
            throw NotUnbiased("bases " + std::to_string(check.worst_a) + "," +
                              std::to_string(check.worst_b) + " deviate by " +
                              std::to_string(check.max_deviation));
        }
    }

    std::size_t dim() const { return bases_[0].dim(); }

    std::size_t count() const { return bases_.size(); }

    const OrthonormalBasis &basis(std::size_t a) const {
        if (a >= bases_.size()) {
            throw IndexOutOfRange("basis " + std::to_string(a) + " of " +
                                  std::to_string(bases_.size()));
        }
        return bases_[a];
    }

    const std::vector<OrthonormalBasis> &bases() const { return bases_; }

  private:
    std::vector<OrthonormalBasis> bases_;
};

namespace detail {

inline OrthonormalBasis qubit_x_basis() {
    const double s = 1.0 / std::numbers::sqrt2;
    return OrthonormalBasis({{Complex(s, 0.0), Complex(s, 0.0)},
                             {Complex(s, 0.0), Complex(-s, 0.0)}});
}

inline OrthonormalBasis qubit_y_basis() {
    const double s = 1.0 / std::numbers::sqrt2;
    return OrthonormalBasis({{Complex(s, 0.0), Complex(0.0, s)},
                             {Complex(s, 0.0), Complex(0.0, -s)}});
}

// Basis alpha in {1..N}, vector j, component k:
//   exp(2 pi i (alpha k^2 + j k) / N) / sqrt(N).
// For odd prime N the quadratic Gauss sums make distinct alpha bases
// mutually unbiased and every one unbiased to the computational basis.
inline OrthonormalBasis odd_prime_basis(std::size_t n, std::size_t alpha) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<Ket> vectors(n, Ket(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t exponent = (alpha * k * k + j * k) % n;
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>(exponent) / static_cast<double>(n);
            vectors[j][k] = std::polar(scale, angle);
        }
    }
    return OrthonormalBasis(std::move(vectors));
}

} // namespace detail

// Complete MUB family for prime dims 2..13. dim=2 uses the three Pauli
// eigenbases; odd primes use the quadratic-phase construction.
inline MubSet generate_mub(std::size_t dim) {
    if (dim < 2 || dim > 13) {
        throw UnsupportedDim("dim " + std::to_string(dim) + " outside supported range [2, 13]");
    }
    if (!is_prime(dim)) {
        throw NotPrime("dim " + std::to_string(dim) + " is not prime");
    }
    std::vector<OrthonormalBasis> bases;
    bases.reserve(dim + 1);
    bases.push_back(OrthonormalBasis::computational(dim));
    if (dim == 2) {
        bases.push_back(detail::qubit_x_basis());
        bases.push_back(detail::qubit_y_basis());
    } else {
        for (std::size_t alpha = 1; alpha <= dim; ++alpha) {
            bases.push_back(detail::odd_prime_basis(dim, alpha));
        }
    }
    return MubSet(std::move(bases));
}

// Rotates a basis by exp(i * angle * H) for a seeded random Hermitian
// H of unit Frobenius norm. angle = 0 returns the basis unchanged (up
// to rounding); small angles give small unbiasedness violations.
inline OrthonormalBasis perturb_basis(const OrthonormalBasis &basis, double angle,
                                      std::uint64_t seed) {
    const std::size_t n = basis.dim();
    Rng rng(seed);
    ComplexMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = Complex(rng.normal(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex c = rng.complex_normal();
            h(i, j) = c;
            h(j, i) = std::conj(c);
        }
    }
    const double norm = frobenius_norm(h);
    if (norm > 0.0) {
        h *= 1.0 / norm;
    }

    const Spectrum spectrum = hermitian_eig(h);
    // U = sum_j exp(i * angle * lambda_j) |v_j><v_j|.
    ComplexMatrix u(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex phase = std::polar(1.0, angle * spectrum.eigenvalues[j]);
        const Ket &v = spectrum.eigenvectors.vector(j);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                u(a, b) += phase * (v[a] * std::conj(v[b]));
            }
        }
    }

    std::vector<Ket> rotated(n, Ket(n));
    for (std::size_t j = 0; j < n; ++j) {
        const Ket &v = basis.vector(j);
        for (std::size_t a = 0; a < n; ++a) {
            Complex sum(0.0, 0.0);
            for (std::size_t b = 0; b < n; ++b) {
                sum += u(a, b) * v[b];
            }
            rotated[j][a] = sum;
        }
    }
    return OrthonormalBasis(std::move(rotated));
}

} // namespace mubsim
