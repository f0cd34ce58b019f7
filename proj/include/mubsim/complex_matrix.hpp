// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace mubsim {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major storage.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, Complex(0.0, 0.0)) {}

    ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (entries_.size() != dim_ * dim_) {
            throw DimMismatch("entry count " + std::to_string(entries_.size()) +
                              " does not fill a " + std::to_string(dim_) + "x" +
                              std::to_string(dim_) + " matrix");
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = Complex(1.0, 0.0);
        }
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex &operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }

    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    Complex &at(std::size_t row, std::size_t col) {
        check_index(row, col);
        return entries_[row * dim_ + col];
    }

    const Complex &at(std::size_t row, std::size_t col) const {
        check_index(row, col);
        return entries_[row * dim_ + col];
    }

    const std::vector<Complex> &entries() const { return entries_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix result(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                result(j, i) = std::conj((*this)(i, j));
            }
        }
        return result;
    }

    Complex trace() const {
        Complex sum(0.0, 0.0);
        for (std::size_t i = 0; i < dim_; ++i) {
            sum += (*this)(i, i);
        }
        return sum;
    }

    // Frobenius norm of M - M^dagger; zero iff Hermitian.
    double hermiticity_defect() const {
        double sum = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                sum += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
            }
        }
        return std::sqrt(sum);
    }

    bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

    ComplexMatrix &operator+=(const ComplexMatrix &other) {
        check_same_dim(other);
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            entries_[k] += other.entries_[k];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &other) {
        check_same_dim(other);
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            entries_[k] -= other.entries_[k];
        }
        return *this;
    }

    ComplexMatrix &operator*=(Complex scale) {
        for (auto &e : entries_) {
            e *= scale;
        }
        return *this;
    }

    ComplexMatrix &operator*=(double scale) {
        for (auto &e : entries_) {
            e *= scale;
        }
        return *this;
    }

  private:
    void check_index(std::size_t row, std::size_t col) const {
        if (row >= dim_ || col >= dim_) {
            throw IndexOutOfRange("index (" + std::to_string(row) + "," + std::to_string(col) +
                                  ") outside " + std::to_string(dim_) + "x" +
                                  std::to_string(dim_) + " matrix");
        }
    }

    void check_same_dim(const ComplexMatrix &other) const {
        if (other.dim_ != dim_) {
            throw DimMismatch("matrix dims " + std::to_string(dim_) + " and " +
                              std::to_string(other.dim_) + " differ");
        }
    }

    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

inline ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    lhs += rhs;
    return lhs;
}

inline ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) {
    lhs -= rhs;
    return lhs;
}

inline ComplexMatrix operator*(ComplexMatrix m, double scale) {
    m *= scale;
    return m;
}

inline ComplexMatrix operator*(double scale, ComplexMatrix m) {
    m *= scale;
    return m;
}

inline ComplexMatrix operator*(ComplexMatrix m, Complex scale) {
    m *= scale;
    return m;
}

inline ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
    m *= scale;
    return m;
}

// Matrix product.
inline ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
    if (lhs.dim() != rhs.dim()) {
        throw DimMismatch("matrix dims " + std::to_string(lhs.dim()) + " and " +
                          std::to_string(rhs.dim()) + " differ");
    }
    const std::size_t n = lhs.dim();
    ComplexMatrix result(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                result(i, j) += a * rhs(k, j);
            }
        }
    }
    return result;
}

inline double frobenius_norm(const ComplexMatrix &m) {
    double sum = 0.0;
    for (const auto &e : m.entries()) {
        sum += std::norm(e);
    }
    return std::sqrt(sum);
}

inline double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimMismatch("matrix dims " + std::to_string(a.dim()) + " and " +
                          std::to_string(b.dim()) + " differ");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        sum += std::norm(a.entries()[k] - b.entries()[k]);
    }
    return std::sqrt(sum);
}

// Frobenius inner product <a, b> = tr(a^dagger b).
inline Complex frobenius_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw DimMismatch("matrix dims " + std::to_string(a.dim()) + " and " +
                          std::to_string(b.dim()) + " differ");
    }
    Complex sum(0.0, 0.0);
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        sum += std::conj(a.entries()[k]) * b.entries()[k];
    }
    return sum;
}

} // namespace mubsim
