// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "complex_matrix.hpp"
#include "errors.hpp"
#include "mixture_weights.hpp"
#include "mub.hpp"

namespace mubsim {

// Fourth-order kernel of the measure-and-mix map, written in the
// coordinates of basis 0. With C^(a)_{ij} = <j^(0)|i^(a)>,
//
//   d_{kl,pq} = sum_{a,i} w_a C^(a)_{ik} conj(C^(a)_{il})
//                         conj(C^(a)_{ip}) C^(a)_{iq},
//
// so that rho'_{kl} = sum_{pq} d_{kl,pq} rho_{pq} holds for every
// matrix rho, Hermitian or not: the inner pair contracts to the outcome
// probability <i^(a)|rho|i^(a)> and the outer pair rebuilds the
// projector. The family reproduces the affine state relation exactly
// when
//   d_{kl,pq} = (lambda/N) delta_kl delta_pq
//             + (1-lambda) delta_kp delta_lq
// with lambda = N/(N+1); fitted_lambda and residual measure the best
// fit along that one-parameter template.
class DesignTensor {
  public:
    DesignTensor(std::size_t dim, std::vector<Complex> entries, double fitted_lambda,
                 double residual)
        : dim_(dim), entries_(std::move(entries)), fitted_lambda_(fitted_lambda),
          residual_(residual) {
        const std::size_t expected = dim_ * dim_ * dim_ * dim_;
        if (entries_.size() != expected) {
            throw DimMismatch("tensor for dim " + std::to_string(dim_) + " needs " +
                              std::to_string(expected) + " entries, got " +
                              std::to_string(entries_.size()));
        }
    }

    std::size_t dim() const { return dim_; }

    static std::size_t index(std::size_t dim, std::size_t k, std::size_t l, std::size_t p,
                             std::size_t q) {
        return ((k * dim + l) * dim + p) * dim + q;
    }

    const Complex &entry(std::size_t k, std::size_t l, std::size_t p, std::size_t q) const {
        if (k >= dim_ || l >= dim_ || p >= dim_ || q >= dim_) {
            throw IndexOutOfRange("tensor index outside dim " + std::to_string(dim_));
        }
        return entries_[index(dim_, k, l, p, q)];
    }

    const std::vector<Complex> &entries() const { return entries_; }

    double fitted_lambda() const { return fitted_lambda_; }

    // Frobenius distance to the template evaluated at fitted_lambda.
    double residual() const { return residual_; }

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
    double fitted_lambda_ = 0.0;
    double residual_ = 0.0;
};

inline DesignTensor design_tensor(const std::vector<OrthonormalBasis> &bases,
                                  const MixtureWeights &weights) {
    if (bases.empty()) {
        throw WrongBasisCount("basis set is empty");
    }
    const std::size_t n = bases[0].dim();
    for (const auto &b : bases) {
        if (b.dim() != n) {
            throw DimMismatch("bases of dims " + std::to_string(n) + " and " +
                              std::to_string(b.dim()) + " mixed in one set");
        }
    }
    if (bases.size() != n + 1) {
        throw WrongBasisCount("dim " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                              " bases, got " + std::to_string(bases.size()));
    }
    if (weights.size() != bases.size()) {
        throw WeightCountMismatch("got " + std::to_string(weights.size()) + " weights for " +
                                  std::to_string(bases.size()) + " bases");
    }

    std::vector<Complex> entries(n * n * n * n, Complex(0.0, 0.0));
    std::vector<Complex> overlap_products(n * n);
    for (std::size_t a = 0; a < bases.size(); ++a) {
        const double w = weights[a];
        for (std::size_t i = 0; i < n; ++i) {
            // overlaps[k] = C^(a)_{ik} = <k^(0)|i^(a)>
            Ket overlaps(n);
            for (std::size_t k = 0; k < n; ++k) {
                overlaps[k] = inner_product(bases[0].vector(k), bases[a].vector(i));
            }
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t l = 0; l < n; ++l) {
                    overlap_products[k * n + l] = overlaps[k] * std::conj(overlaps[l]);
                }
            }
            // d_{kl,pq} += w * u_{kl} conj(u_{pq}); grouping this way
            // keeps d_{lk,qp} = conj(d_{kl,pq}) exact in floating point.
            for (std::size_t kl = 0; kl < n * n; ++kl) {
                const Complex left = w * overlap_products[kl];
                if (left == Complex(0.0, 0.0)) {
                    continue;
                }
                Complex *row = entries.data() + kl * n * n;
                for (std::size_t pq = 0; pq < n * n; ++pq) {
                    row[pq] += left * std::conj(overlap_products[pq]);
                }
            }
        }
    }

    // Least squares along the affine template
    //   T(lambda) = B + lambda (A/N - B),
    // A = delta_kl delta_pq, B = delta_kp delta_lq.
    const double inv_n = 1.0 / static_cast<double>(n);
    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t q = 0; q < n; ++q) {
                    const double a = (k == l && p == q) ? 1.0 : 0.0;
                    const double b = (k == p && l == q) ? 1.0 : 0.0;
                    const double g = a * inv_n - b;
                    if (g == 0.0) {
                        continue;
                    }
                    const Complex d = entries[DesignTensor::index(n, k, l, p, q)];
                    numerator += g * (d.real() - b);
                    denominator += g * g;
                }
            }
        }
    }
    const double lambda = numerator / denominator;

    double residual_sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t q = 0; q < n; ++q) {
                    const double a = (k == l && p == q) ? 1.0 : 0.0;
                    const double b = (k == p && l == q) ? 1.0 : 0.0;
                    const double target = lambda * inv_n * a + (1.0 - lambda) * b;
                    const Complex d = entries[DesignTensor::index(n, k, l, p, q)];
                    residual_sq += std::norm(d - Complex(target, 0.0));
                }
            }
        }
    }

    return DesignTensor(n, std::move(entries), lambda, std::sqrt(residual_sq));
}

inline DesignTensor design_tensor(const MubSet &mub, const MixtureWeights &weights) {
    return design_tensor(mub.bases(), weights);
}

// The family is measurement-complete for the affine relation iff the
// tensor sits on the template within tol.
inline bool criterion_holds(const DesignTensor &tensor, double tol = 1e-10) {
    return tensor.residual() <= tol;
}

} // namespace mubsim
