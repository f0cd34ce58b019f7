// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "complex_matrix.hpp"
#include "density_matrix.hpp"
#include "eig.hpp"
#include "errors.hpp"
#include "measurement.hpp"
#include "mixture_weights.hpp"
#include "mub.hpp"
#include "random_states.hpp"
#include "rng.hpp"
#include "sampling.hpp"

namespace mubsim {

// Full uniform measurement over a complete unbiased family of C^N
// contracts every input to the same affine image:
//   rho -> (I + rho) / (N + 1),
// i.e. rho + lambda (I/N - rho) with lambda = N/(N+1).
inline double relation_lambda(std::size_t dim) {
    return static_cast<double>(dim) / static_cast<double>(dim + 1);
}

inline DensityMatrix predict_post(const DensityMatrix &rho_ini) {
    const std::size_t n = rho_ini.dim();
    ComplexMatrix m = rho_ini.matrix();
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) += Complex(1.0, 0.0);
    }
    m *= 1.0 / static_cast<double>(n + 1);
    return DensityMatrix(std::move(m));
}

// Exact algebraic inverse (N+1) rho_msmt - I. Throws when the result
// has an eigenvalue below -positivity_tol, i.e. rho_msmt is not the
// image of any state.
inline DensityMatrix recover_initial_affine(const DensityMatrix &rho_msmt,
                                            double positivity_tol = 1e-10) {
    const std::size_t n = rho_msmt.dim();
    ComplexMatrix m = rho_msmt.matrix();
    m *= static_cast<double>(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) -= Complex(1.0, 0.0);
    }
    const double min_eig = min_eigenvalue(m);
    if (min_eig < -positivity_tol) {
        throw NotInRelationImage("inverse has eigenvalue " + std::to_string(min_eig) +
                                 "; input is outside the map's image");
    }
    DensityMatrixTolerances tol;
    tol.positivity = positivity_tol;
    return DensityMatrix(std::move(m), tol);
}

// Unvalidated inverse for statistical workflows: empirical estimates
// of rho_msmt produce inverses with O(sampling error) negative parts,
// which callers inspect via the flag instead of catching throws.
struct AffineInverse {
    ComplexMatrix estimate;
    bool positive = false;
    double min_eigenvalue = 0.0;
};

inline AffineInverse recover_initial_raw(const DensityMatrix &rho_msmt,
                                         double positivity_tol = 1e-10) {
    const std::size_t n = rho_msmt.dim();
    ComplexMatrix m = rho_msmt.matrix();
    m *= static_cast<double>(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) -= Complex(1.0, 0.0);
    }
    const double min_eig = min_eigenvalue(m);
    return AffineInverse{std::move(m), min_eig >= -positivity_tol, min_eig};
}

// The image of a pure state has spectrum {2/(N+1), 1/(N+1) x (N-1)}
// and its leading eigenvector is the original state. Requires the
// leading eigenvalue isolated by more than tol and the whole spectrum
// matching that profile within tol.
inline DensityMatrix recover_pure_by_leading_eigenvector(const DensityMatrix &rho_msmt,
                                                         double tol = 1e-8) {
    const Spectrum spectrum = hermitian_eig(rho_msmt.matrix());
    const std::size_t n = rho_msmt.dim();
    if (n < 2) {
        throw InvalidDim("need dim >= 2 to isolate a leading eigenvector");
    }
    const double gap = spectrum.eigenvalues[0] - spectrum.eigenvalues[1];
    if (gap <= tol) {
        throw DegenerateLeadingEigenvalue("leading eigenvalue gap " + std::to_string(gap) +
                                          " within tolerance " + std::to_string(tol));
    }
    const double top = 2.0 / static_cast<double>(n + 1);
    const double rest = 1.0 / static_cast<double>(n + 1);
    if (std::abs(spectrum.eigenvalues[0] - top) > tol) {
        throw SpectrumMismatch("leading eigenvalue " + std::to_string(spectrum.eigenvalues[0]) +
                               " differs from " + std::to_string(top));
    }
    for (std::size_t j = 1; j < n; ++j) {
        if (std::abs(spectrum.eigenvalues[j] - rest) > tol) {
            throw SpectrumMismatch("eigenvalue " + std::to_string(spectrum.eigenvalues[j]) +
                                   " differs from " + std::to_string(rest));
        }
    }
    return DensityMatrix::pure(spectrum.eigenvectors.vector(0));
}

// Reconstruction from full measurement statistics:
//   sum_{a,j} p_j^(a) |j^(a)><j^(a)| - I.
// Exact Born probabilities return the input state; empirical
// frequencies return an estimate whose negativity, if any, is reported
// through the flag (the estimate itself is never clamped).
struct TomographyResult {
    ComplexMatrix estimate;
    bool positive = false;
    double min_eigenvalue = 0.0;
};

inline TomographyResult tomographic_reconstruct(const std::vector<OutcomeDistribution> &stats,
                                                const MubSet &mub,
                                                double positivity_tol = 1e-10) {
    if (stats.size() != mub.count()) {
        throw DimMismatch("got statistics for " + std::to_string(stats.size()) +
                          " bases, family has " + std::to_string(mub.count()));
    }
    const std::size_t n = mub.dim();
    ComplexMatrix m(n);
    for (std::size_t a = 0; a < mub.count(); ++a) {
        if (stats[a].probs.size() != n) {
            throw DimMismatch("distribution " + std::to_string(a) + " has " +
                              std::to_string(stats[a].probs.size()) + " outcomes for dim " +
                              std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double p = stats[a].probs[j];
            if (p == 0.0) {
                continue;
            }
            const Ket &v = mub.basis(a).vector(j);
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t c = 0; c < n; ++c) {
                    m(r, c) += p * (v[r] * std::conj(v[c]));
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) -= Complex(1.0, 0.0);
    }
    const double min_eig = min_eigenvalue(m);
    return TomographyResult{std::move(m), min_eig >= -positivity_tol, min_eig};
}

// Best-fit contraction strength for one state: the least-squares
// lambda in rho_msmt ~ rho_ini + lambda (I/N - rho_ini). The fit
// direction vanishes at rho_ini = I/N, where every lambda predicts the
// same image; lambda_defined marks that case.
struct RelationCheck {
    double residual = 0.0;
    double lambda_fit = 0.0;
    bool lambda_defined = false;
    bool holds = false;
};

namespace detail {

inline RelationCheck check_relation_state(const DensityMatrix &rho_ini,
                                          const DensityMatrix &rho_msmt, bool expect_lambda,
                                          double tol, double lambda_tol, double *fit_numerator,
                                          double *fit_denominator) {
    const std::size_t n = rho_ini.dim();
    // direction = I/N - rho_ini, deviation = rho_msmt - rho_ini.
    ComplexMatrix direction = rho_ini.matrix();
    direction *= -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        direction(i, i) += Complex(1.0 / static_cast<double>(n), 0.0);
    }
    const ComplexMatrix deviation = rho_msmt.matrix() - rho_ini.matrix();

    RelationCheck check;
    const double dir_norm_sq = frobenius_inner(direction, direction).real();
    check.lambda_defined = std::sqrt(dir_norm_sq) >= 1e-6;
    if (check.lambda_defined) {
        const double num = frobenius_inner(direction, deviation).real();
        check.lambda_fit = num / dir_norm_sq;
        if (fit_numerator != nullptr) {
            *fit_numerator += num;
            *fit_denominator += dir_norm_sq;
        }
        const ComplexMatrix best = deviation - check.lambda_fit * direction;
        check.residual = frobenius_norm(best);
    } else {
        check.residual = frobenius_norm(deviation);
    }

    check.holds = check.residual <= tol;
    if (expect_lambda && check.lambda_defined) {
        check.holds = check.holds &&
                      std::abs(check.lambda_fit - relation_lambda(n)) <= lambda_tol;
    }
    return check;
}

} // namespace detail

// Compare the measured image of one state against the affine template.
// holds requires residual <= tol, and additionally lambda_fit =
// N/(N+1) within lambda_tol when the weights are unbiased (biased
// weights leave no single expected lambda).
inline RelationCheck verify_relation(const DensityMatrix &rho_ini,
                                     const std::vector<OrthonormalBasis> &bases,
                                     const MixtureWeights &weights, double tol = 1e-10,
                                     double lambda_tol = 1e-9) {
    const DensityMatrix rho_msmt = post_measurement_state(rho_ini, bases, weights);
    return detail::check_relation_state(rho_ini, rho_msmt, weights.is_unbiased(), tol,
                                        lambda_tol, nullptr, nullptr);
}

// Aggregate check over a deterministic set of trial states: the N
// computational basis states, then alternating Haar-pure and
// Hilbert-Schmidt-mixed draws from substreams of seed.
struct RelationScan {
    std::size_t dim = 0;
    std::size_t trials = 0;
    double lambda_fit = 0.0;
    double max_residual = 0.0;
    bool lambda_defined = false;
    bool holds = false;
    ComplexMatrix worst_state;
};

inline RelationScan scan_relation(const std::vector<OrthonormalBasis> &bases,
                                  const MixtureWeights &weights, std::size_t trials,
                                  std::uint64_t seed, double tol = 1e-10,
                                  double lambda_tol = 1e-9) {
    if (bases.empty()) {
        throw InvalidArgument("no bases to measure in");
    }
    if (trials == 0) {
        throw InvalidArgument("need at least one trial state");
    }
    const std::size_t n = bases[0].dim();
    const bool expect_lambda = weights.is_unbiased();

    RelationScan scan;
    scan.dim = n;
    scan.trials = trials;
    scan.holds = true;

    double fit_num = 0.0;
    double fit_den = 0.0;
    bool have_worst = false;
    for (std::size_t t = 0; t < trials; ++t) {
        DensityMatrix rho_ini = [&]() {
            if (t < n) {
                Ket ket(n, Complex(0.0, 0.0));
                ket[t] = Complex(1.0, 0.0);
                return DensityMatrix::pure(ket);
            }
            Rng rng(derive_stream_seed(seed, t));
            return (t % 2 == 0) ? random_pure_density(n, rng) : random_mixed_density(n, rng);
        }();

        const DensityMatrix rho_msmt = post_measurement_state(rho_ini, bases, weights);
        const RelationCheck check = detail::check_relation_state(
            rho_ini, rho_msmt, expect_lambda, tol, lambda_tol, &fit_num, &fit_den);

        if (!have_worst || check.residual > scan.max_residual) {
            scan.max_residual = check.residual;
            scan.worst_state = rho_ini.matrix();
            have_worst = true;
        }
        scan.holds = scan.holds && check.holds;
    }

    scan.lambda_defined = fit_den > 0.0;
    if (scan.lambda_defined) {
        scan.lambda_fit = fit_num / fit_den;
        if (expect_lambda) {
            scan.holds =
                scan.holds && std::abs(scan.lambda_fit - relation_lambda(n)) <= lambda_tol;
        }
    }
    return scan;
}

} // namespace mubsim
