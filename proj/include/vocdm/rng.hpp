#pragma once

// Seed derivation and Gaussian sampling for reproducible experiments.
//
// Every Monte Carlo trial gets its own generator seeded by mixing the base
// seed with the trial's identifying indices, so results are independent of
// how trials are partitioned across workers.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

#include "vocdm/types.hpp"

namespace vocdm {

// splitmix64 update; the canonical 64-bit seed mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Mixes each id into the base seed in order. Distinct id tuples give
// decorrelated streams.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> ids) {
    std::uint64_t state = base ^ 0x6a09e667f3bcc909ull;
    std::uint64_t out = splitmix64(state);
    for (std::uint64_t id : ids) {
        state ^= id;
        out = splitmix64(state);
    }
    return out;
}

// FNV-1a, used to fold experiment-id strings into seed derivation.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// i.i.d. circular complex Gaussian entries with unit variance
// (real and imaginary parts each N(0, 1/2)).
inline CVec complex_gaussian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    CVec v(n);
    for (int i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

}  // namespace vocdm
