// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "complex_matrix.hpp"
#include "errors.hpp"

namespace mubsim {

using Ket = std::vector<Complex>;

// <a|b> = sum_k conj(a_k) b_k.
inline Complex inner_product(const Ket &a, const Ket &b) {
    if (a.size() != b.size()) {
        throw DimMismatch("ket dims " + std::to_string(a.size()) + " and " +
                          std::to_string(b.size()) + " differ");
    }
    Complex sum(0.0, 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        sum += std::conj(a[k]) * b[k];
    }
    return sum;
}

inline double ket_norm(const Ket &a) {
    double sum = 0.0;
    for (const auto &c : a) {
        sum += std::norm(c);
    }
    return std::sqrt(sum);
}

// Largest deviation of the Gram matrix from the identity,
// max_{i<=j} |<v_i|v_j> - delta_ij|.
inline double orthonormality_defect(const std::vector<Ket> &vectors) {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i; j < vectors.size(); ++j) {
            Complex overlap = inner_product(vectors[i], vectors[j]);
            if (i == j) {
                overlap -= Complex(1.0, 0.0);
            }
            worst = std::max(worst, std::abs(overlap));
        }
    }
    return worst;
}

// A complete orthonormal basis of C^dim: exactly dim unit vectors,
// pairwise orthogonal within tol.
class OrthonormalBasis {
  public:
    explicit OrthonormalBasis(std::vector<Ket> vectors, double tol = 1e-12)
        : vectors_(std::move(vectors)) {
        if (vectors_.empty()) {
            throw InvalidDim("basis needs at least one vector");
        }
        dim_ = vectors_.size();
        for (const auto &v : vectors_) {
            if (v.size() != dim_) {
                throw DimMismatch("basis of C^" + std::to_string(dim_) + " holds a vector of dim " +
                                  std::to_string(v.size()));
            }
        }
        const double defect = orthonormality_defect(vectors_);
        if (defect > tol) {
            throw NotOrthonormal("orthonormality defect " + std::to_string(defect) +
                                 " exceeds tolerance " + std::to_string(tol));
        }
    }

    static OrthonormalBasis computational(std::size_t dim) {
        if (dim == 0) {
            throw InvalidDim("basis needs at least one vector");
        }
        std::vector<Ket> vectors(dim, Ket(dim, Complex(0.0, 0.0)));
        for (std::size_t j = 0; j < dim; ++j) {
            vectors[j][j] = Complex(1.0, 0.0);
        }
        return OrthonormalBasis(std::move(vectors));
    }

    std::size_t dim() const { return dim_; }

    const Ket &vector(std::size_t j) const {
        check_index(j);
        return vectors_[j];
    }

    const std::vector<Ket> &vectors() const { return vectors_; }

    // Rank-one projector |j><j|.
    ComplexMatrix projector(std::size_t j) const {
        check_index(j);
        const Ket &v = vectors_[j];
        ComplexMatrix p(dim_);
        for (std::size_t a = 0; a < dim_; ++a) {
            for (std::size_t b = 0; b < dim_; ++b) {
                p(a, b) = v[a] * std::conj(v[b]);
            }
        }
        return p;
    }

    // Unitary whose j-th column is the j-th basis vector.
    ComplexMatrix to_matrix() const {
        ComplexMatrix u(dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            for (std::size_t a = 0; a < dim_; ++a) {
                u(a, j) = vectors_[j][a];
            }
        }
        return u;
    }

  private:
    void check_index(std::size_t j) const {
        if (j >= dim_) {
            throw IndexOutOfRange("basis vector " + std::to_string(j) + " of " +
                                  std::to_string(dim_));
        }
    }

    std::size_t dim_ = 0;
    std::vector<Ket> vectors_;
};

} // namespace mubsim
