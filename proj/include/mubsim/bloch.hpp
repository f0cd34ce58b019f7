// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "complex_matrix.hpp"
#include "density_matrix.hpp"
#include "errors.hpp"
#include "mixture_weights.hpp"

namespace mubsim {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return Vec3{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3 &a) {
    const double n = norm(a);
    if (n < 1e-12) {
        throw InvalidArgument("cannot normalize a zero direction");
    }
    return Vec3{a.x / n, a.y / n, a.z / n};
}

// Spin-1/2 component along n: (n . sigma) / 2 for unit n.
inline ComplexMatrix spin_component(const Vec3 &n) {
    ComplexMatrix m(2);
    m(0, 0) = Complex(0.5 * n.z, 0.0);
    m(1, 1) = Complex(-0.5 * n.z, 0.0);
    m(0, 1) = Complex(0.5 * n.x, -0.5 * n.y);
    m(1, 0) = Complex(0.5 * n.x, 0.5 * n.y);
    return m;
}

inline double spin_expectation(const DensityMatrix &rho, const Vec3 &n) {
    if (rho.dim() != 2) {
        throw DimMismatch("spin expectations need a qubit state, got dim " +
                          std::to_string(rho.dim()));
    }
    return frobenius_inner(spin_component(n), rho.matrix()).real();
}

// (<sigma_x>, <sigma_y>, <sigma_z>) = 2 (<S_x>, <S_y>, <S_z>).
inline Vec3 bloch_vector(const DensityMatrix &rho) {
    Vec3 e{spin_expectation(rho, Vec3{1.0, 0.0, 0.0}),
           spin_expectation(rho, Vec3{0.0, 1.0, 0.0}),
           spin_expectation(rho, Vec3{0.0, 0.0, 1.0})};
    return Vec3{2.0 * e.x, 2.0 * e.y, 2.0 * e.z};
}

// (I + r . sigma) / 2; needs |r| <= 1 for positivity.
inline DensityMatrix density_from_bloch(const Vec3 &r) {
    ComplexMatrix m(2);
    m(0, 0) = Complex(0.5 * (1.0 + r.z), 0.0);
    m(1, 1) = Complex(0.5 * (1.0 - r.z), 0.0);
    m(0, 1) = Complex(0.5 * r.x, -0.5 * r.y);
    m(1, 0) = Complex(0.5 * r.x, 0.5 * r.y);
    return DensityMatrix(std::move(m));
}

// Three unit directions spanning R^3, with their Gram matrix and its
// inverse. Construction rejects (near-)coplanar triples, where the
// Gram matrix stops being reliably invertible.
class DirectionTriple {
  public:
    DirectionTriple(const Vec3 &n1, const Vec3 &n2, const Vec3 &n3, double unit_tol = 1e-12,
                    double coplanar_tol = 1e-6)
        : dirs_{n1, n2, n3} {
        for (const auto &n : dirs_) {
            if (std::abs(norm(n) - 1.0) > unit_tol) {
                throw InvalidArgument("direction has norm " + std::to_string(norm(n)) +
                                      ", expected a unit vector");
            }
        }
        triple_ = dot(dirs_[0], cross(dirs_[1], dirs_[2]));
        if (std::abs(triple_) <= coplanar_tol) {
            throw CoplanarDirections("triple product " + std::to_string(triple_) +
                                     " too small; directions span < 3 dimensions");
        }
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                gram_[i][j] = dot(dirs_[i], dirs_[j]);
            }
        }
        invert_gram();
    }

    // Normalizes raw vectors first; rejects zero vectors.
    static DirectionTriple from_raw(const Vec3 &a, const Vec3 &b, const Vec3 &c) {
        return DirectionTriple(normalized(a), normalized(b), normalized(c));
    }

    const Vec3 &direction(std::size_t i) const {
        if (i >= 3) {
            throw IndexOutOfRange("direction " + std::to_string(i) + " of 3");
        }
        return dirs_[i];
    }

    double gram(std::size_t i, std::size_t j) const { return gram_[i][j]; }

    double gram_inverse(std::size_t i, std::size_t j) const { return gram_inv_[i][j]; }

    double triple_product() const { return triple_; }

  private:
    void invert_gram() {
        const auto &g = gram_;
        const double det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                           g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                           g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        if (std::abs(det) < 1e-12) {
            throw CoplanarDirections("Gram determinant " + std::to_string(det) +
                                     " too small to invert");
        }
        gram_inv_[0][0] = (g[1][1] * g[2][2] - g[1][2] * g[2][1]) / det;
        gram_inv_[0][1] = (g[0][2] * g[2][1] - g[0][1] * g[2][2]) / det;
        gram_inv_[0][2] = (g[0][1] * g[1][2] - g[0][2] * g[1][1]) / det;
        gram_inv_[1][0] = (g[1][2] * g[2][0] - g[1][0] * g[2][2]) / det;
        gram_inv_[1][1] = (g[0][0] * g[2][2] - g[0][2] * g[2][0]) / det;
        gram_inv_[1][2] = (g[0][2] * g[1][0] - g[0][0] * g[1][2]) / det;
        gram_inv_[2][0] = (g[1][0] * g[2][1] - g[1][1] * g[2][0]) / det;
        gram_inv_[2][1] = (g[0][1] * g[2][0] - g[0][0] * g[2][1]) / det;
        gram_inv_[2][2] = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) / det;

        double defect = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                double entry = 0.0;
                for (std::size_t k = 0; k < 3; ++k) {
                    entry += gram_[i][k] * gram_inv_[k][j];
                }
                defect = std::max(defect, std::abs(entry - (i == j ? 1.0 : 0.0)));
            }
        }
        if (defect > 1e-10) {
            throw CoplanarDirections("Gram inversion defect " + std::to_string(defect) +
                                     "; directions too close to coplanar");
        }
    }

    Vec3 dirs_[3];
    double gram_[3][3] = {};
    double gram_inv_[3][3] = {};
    double triple_ = 0.0;
};

// Post-measurement state for spin measurements along three arbitrary
// directions chosen with probabilities w:
//   rho' = I/2 + sum_i 2 w_i <S . n_i> S . n_i.
inline DensityMatrix nonorthogonal_post_state(const DensityMatrix &rho_ini,
                                              const DirectionTriple &dirs,
                                              const MixtureWeights &weights) {
    if (rho_ini.dim() != 2) {
        throw DimMismatch("direction measurements need a qubit state, got dim " +
                          std::to_string(rho_ini.dim()));
    }
    if (weights.size() != 3) {
        throw WeightCountMismatch("got " + std::to_string(weights.size()) +
                                  " weights for 3 directions");
    }
    ComplexMatrix m(2);
    m(0, 0) = Complex(0.5, 0.0);
    m(1, 1) = Complex(0.5, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
        const double e = spin_expectation(rho_ini, dirs.direction(i));
        m += (2.0 * weights[i] * e) * spin_component(dirs.direction(i));
    }
    return DensityMatrix(std::move(m));
}

// Largest violation of the coupled-expectation identity
//   <S . n_i>_post = sum_j w_j (n_i . n_j) <S . n_j>_ini
// across the three directions. Zero up to rounding for every state.
inline double expectation_identity_gap(const DensityMatrix &rho_ini,
                                       const DirectionTriple &dirs,
                                       const MixtureWeights &weights) {
    const DensityMatrix post = nonorthogonal_post_state(rho_ini, dirs, weights);
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double lhs = spin_expectation(post, dirs.direction(i));
        double rhs = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            rhs += weights[j] * dirs.gram(i, j) * spin_expectation(rho_ini, dirs.direction(j));
        }
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

// Least-squares fit of rho' ~ alpha rho + beta I over the trial set,
// and the worst trial's distance from that best fit. For orthonormal
// directions with uniform weights the fit is exact at (1/3, 1/3); for
// genuinely non-orthogonal directions no affine map works, and the
// worst-case residual stays bounded away from zero.
struct AffineFitReport {
    double best_alpha = 0.0;
    double best_beta = 0.0;
    double worst_case_residual = 0.0;
};

inline AffineFitReport affine_fit_counterexample(const DirectionTriple &dirs,
                                                 const MixtureWeights &weights,
                                                 const std::vector<DensityMatrix> &trial_states) {
    if (trial_states.size() < 10) {
        throw DegenerateTrialSet("affine fit needs >= 10 trial states, got " +
                                 std::to_string(trial_states.size()));
    }

    std::vector<DensityMatrix> posts;
    posts.reserve(trial_states.size());
    double sum_purity = 0.0;
    double sum_inner = 0.0;
    for (const auto &rho : trial_states) {
        posts.push_back(nonorthogonal_post_state(rho, dirs, weights));
        sum_purity += rho.purity();
        sum_inner += overlap(rho, posts.back());
    }

    // Normal equations for min sum_t || post_t - alpha rho_t - beta I ||^2:
    //   [ sum ||rho_t||^2   T ] [alpha]   [ sum <rho_t, post_t> ]
    //   [ T               2 T ] [beta ] = [ T                   ]
    // using tr(rho_t) = tr(post_t) = 1 and dim 2.
    const double t = static_cast<double>(trial_states.size());
    const double a11 = sum_purity;
    const double a12 = t;
    const double a22 = 2.0 * t;
    const double b1 = sum_inner;
    const double b2 = t;
    const double det = a11 * a22 - a12 * a12;
    if (std::abs(det) <= 1e-9 * t * t) {
        throw DegenerateTrialSet("trial states do not determine an affine fit");
    }
    AffineFitReport report;
    report.best_alpha = (a22 * b1 - a12 * b2) / det;
    report.best_beta = (a11 * b2 - a12 * b1) / det;

    const ComplexMatrix eye = ComplexMatrix::identity(2);
    for (std::size_t i = 0; i < trial_states.size(); ++i) {
        const ComplexMatrix fit =
            report.best_alpha * trial_states[i].matrix() + report.best_beta * eye;
        report.worst_case_residual =
            std::max(report.worst_case_residual, frobenius_distance(posts[i].matrix(), fit));
    }
    return report;
}

} // namespace mubsim
