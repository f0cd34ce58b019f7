// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "basis.hpp"
#include "complex_matrix.hpp"
#include "eig.hpp"
#include "errors.hpp"

namespace mubsim {

struct DensityMatrixTolerances {
    double hermitian = 1e-12;
    double trace = 1e-12;
    double positivity = 1e-10;
};

// A validated quantum state: Hermitian, unit trace, positive
// semidefinite (all within the given tolerances, checked on
// construction). Immutable once built.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix matrix, const DensityMatrixTolerances &tol = {})
        : matrix_(std::move(matrix)) {
        if (matrix_.dim() == 0) {
            throw InvalidDim("density matrix needs dim >= 1");
        }
        const double hdefect = matrix_.hermiticity_defect();
        if (hdefect > tol.hermitian) {
            throw InvalidState("hermiticity defect " + std::to_string(hdefect) +
                               " exceeds tolerance " + std::to_string(tol.hermitian));
        }
        const Complex tr = matrix_.trace();
        const double trace_defect = std::abs(tr - Complex(1.0, 0.0));
        if (trace_defect > tol.trace) {
            throw InvalidState("trace defect " + std::to_string(trace_defect) +
                               " exceeds tolerance " + std::to_string(tol.trace));
        }
        min_eigenvalue_ = mubsim::min_eigenvalue(matrix_, std::max(tol.hermitian, 1e-12));
        if (min_eigenvalue_ < -tol.positivity) {
            throw InvalidState("eigenvalue " + std::to_string(min_eigenvalue_) +
                               " below positivity tolerance -" + std::to_string(tol.positivity));
        }
    }

    // |ket><ket| after normalization. Rejects (near-)zero vectors.
    static DensityMatrix pure(const Ket &ket) {
        const std::size_t n = ket.size();
        const double norm = ket_norm(ket);
        if (n == 0 || norm < 1e-12) {
            throw InvalidState("pure state needs a nonzero ket");
        }
        ComplexMatrix m(n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                m(a, b) = (ket[a] / norm) * std::conj(ket[b] / norm);
            }
        }
        return DensityMatrix(std::move(m));
    }

    static DensityMatrix maximally_mixed(std::size_t dim) {
        if (dim == 0) {
            throw InvalidDim("density matrix needs dim >= 1");
        }
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = Complex(1.0 / static_cast<double>(dim), 0.0);
        }
        return DensityMatrix(std::move(m));
    }

    const ComplexMatrix &matrix() const { return matrix_; }

    std::size_t dim() const { return matrix_.dim(); }

    const Complex &operator()(std::size_t row, std::size_t col) const {
        return matrix_(row, col);
    }

    // tr(rho^2); 1 for pure states, 1/dim for the maximally mixed one.
    double purity() const {
        double sum = 0.0;
        for (const auto &e : matrix_.entries()) {
            sum += std::norm(e);
        }
        return sum;
    }

    // Smallest eigenvalue found during construction-time validation.
    double min_eigenvalue() const { return min_eigenvalue_; }

  private:
    ComplexMatrix matrix_;
    double min_eigenvalue_ = 0.0;
};

// Re tr(a b); equals state fidelity when either argument is pure.
inline double overlap(const DensityMatrix &a, const DensityMatrix &b) {
    return frobenius_inner(a.matrix(), b.matrix()).real();
}

inline double frobenius_distance(const DensityMatrix &a, const DensityMatrix &b) {
    return frobenius_distance(a.matrix(), b.matrix());
}

} // namespace mubsim
