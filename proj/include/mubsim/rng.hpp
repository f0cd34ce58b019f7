// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "complex_matrix.hpp"

namespace mubsim {

// SplitMix64 mixing step. Used only to derive well-separated substream
// seeds from (seed, stream) pairs; the draws themselves come from Rng.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Deterministic random source: std::mt19937_64 (whose output sequence
// is pinned by the standard) plus explicit value transforms. The
// std::*_distribution adapters are implementation-defined, so using
// them would break cross-platform reproducibility of sampled records.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log() argument.
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (cosine branch).
    double normal() {
        const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        return radius * std::cos(angle);
    }

    // Both Box-Muller branches at once: re and im are independent
    // standard normals.
    Complex complex_normal() {
        const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        return Complex(radius * std::cos(angle), radius * std::sin(angle));
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace mubsim
