// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "density_matrix.hpp"
#include "errors.hpp"
#include "measurement.hpp"
#include "mixture_weights.hpp"
#include "mub.hpp"
#include "rng.hpp"

namespace mubsim {

// Outcome counts of a finite measurement run: counts[a][j] shots that
// landed on outcome j of basis a, with every row summing to
// shots_per_basis. Together with (seed, shots_per_basis) this fully
// reproduces the run.
struct SampleRecord {
    std::uint64_t seed = 0;
    std::uint64_t shots_per_basis = 0;
    std::vector<std::vector<std::uint64_t>> counts;
};

// Draw `shots` samples from a categorical distribution by inverse-CDF
// lookup. probs must be the output of born_probabilities (nonnegative,
// unit sum).
inline std::vector<std::uint64_t> sample_multinomial(const std::vector<double> &probs,
                                                     std::uint64_t shots, Rng &rng) {
    if (probs.empty()) {
        throw InvalidArgument("empty probability vector");
    }
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        cdf[k] = acc;
    }
    // Rounding can leave cdf.back() just under 1; route the sliver of
    // u values above it to the last outcome with nonzero probability.
    std::size_t last_nonzero = probs.size() - 1;
    while (last_nonzero > 0 && probs[last_nonzero] == 0.0) {
        --last_nonzero;
    }

    std::vector<std::uint64_t> counts(probs.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        std::size_t pick = last_nonzero;
        for (std::size_t k = 0; k <= last_nonzero; ++k) {
            if (u < cdf[k]) {
                pick = k;
                break;
            }
        }
        ++counts[pick];
    }
    return counts;
}

// Simulate shots_per_basis projective measurements in every basis of
// the family. Basis a draws from its own substream seeded by
// derive_stream_seed(seed, a), so records are reproducible and
// independent of evaluation order.
inline SampleRecord sample_measurements(const DensityMatrix &rho, const MubSet &mub,
                                        std::uint64_t shots_per_basis, std::uint64_t seed) {
    if (shots_per_basis == 0) {
        throw InvalidArgument("shots_per_basis must be at least 1");
    }
    if (rho.dim() != mub.dim()) {
        throw DimMismatch("state dim " + std::to_string(rho.dim()) + " vs basis dim " +
                          std::to_string(mub.dim()));
    }
    SampleRecord record;
    record.seed = seed;
    record.shots_per_basis = shots_per_basis;
    record.counts.reserve(mub.count());
    for (std::size_t a = 0; a < mub.count(); ++a) {
        const OutcomeDistribution dist = born_probabilities(rho, mub.basis(a), a);
        Rng rng(derive_stream_seed(seed, a));
        record.counts.push_back(sample_multinomial(dist.probs, shots_per_basis, rng));
    }
    return record;
}

// Per-basis relative frequencies counts[a][j] / shots_per_basis.
inline std::vector<OutcomeDistribution> frequencies(const SampleRecord &record) {
    if (record.shots_per_basis == 0) {
        throw InvalidArgument("record holds no shots");
    }
    std::vector<OutcomeDistribution> result;
    result.reserve(record.counts.size());
    for (std::size_t a = 0; a < record.counts.size(); ++a) {
        OutcomeDistribution dist;
        dist.basis_index = a;
        dist.probs.reserve(record.counts[a].size());
        for (const std::uint64_t c : record.counts[a]) {
            dist.probs.push_back(static_cast<double>(c) /
                                 static_cast<double>(record.shots_per_basis));
        }
        result.push_back(std::move(dist));
    }
    return result;
}

// Plug empirical frequencies into the mixture formula:
//   rho_hat = sum_a w_a sum_j (counts[a][j] / M) |j^(a)><j^(a)|.
// Converges to the exact post-measurement state as M grows.
inline DensityMatrix empirical_post_state(const SampleRecord &record, const MubSet &mub,
                                          const MixtureWeights &weights) {
    if (record.counts.size() != mub.count()) {
        throw DimMismatch("record covers " + std::to_string(record.counts.size()) +
                          " bases, family has " + std::to_string(mub.count()));
    }
    if (weights.size() != mub.count()) {
        throw WeightCountMismatch("got " + std::to_string(weights.size()) + " weights for " +
                                  std::to_string(mub.count()) + " bases");
    }
    if (record.shots_per_basis == 0) {
        throw InvalidArgument("record holds no shots");
    }
    const std::size_t n = mub.dim();
    ComplexMatrix m(n);
    for (std::size_t a = 0; a < mub.count(); ++a) {
        if (record.counts[a].size() != n) {
            throw DimMismatch("record row " + std::to_string(a) + " has " +
                              std::to_string(record.counts[a].size()) + " outcomes for dim " +
                              std::to_string(n));
        }
        std::uint64_t row_total = 0;
        for (const std::uint64_t c : record.counts[a]) {
            row_total += c;
        }
        if (row_total != record.shots_per_basis) {
            throw InvalidState("record row " + std::to_string(a) + " sums to " +
                               std::to_string(row_total) + ", expected " +
                               std::to_string(record.shots_per_basis));
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double f = static_cast<double>(record.counts[a][j]) /
                             static_cast<double>(record.shots_per_basis);
            if (f == 0.0) {
                continue;
            }
            const double wf = weights[a] * f;
            const Ket &v = mub.basis(a).vector(j);
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t c = 0; c < n; ++c) {
                    m(r, c) += wf * (v[r] * std::conj(v[c]));
                }
            }
        }
    }
    return DensityMatrix(std::move(m));
}

} // namespace mubsim
