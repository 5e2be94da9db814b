#pragma once

#include <cmath>
#include <cstdint>

namespace rcm {

// All randomness in the artifact flows through these helpers so that runs are
// reproducible bit-for-bit from (seed, worker count) alone. The core is the
// splitmix64 finalizer; keyed draws hash a (key, counter) pair instead of
// advancing shared state, which makes sample i independent of who computes it.

inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix_key(uint64_t a, uint64_t b) { return mix64(a ^ mix64(b)); }

inline uint64_t fnv1a64(const void* data, size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    uint64_t h = 1469598103934665603ULL;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Stateless draw: the same (key, counter) always yields the same variate,
// regardless of evaluation order or thread placement.
inline double keyed_uniform(uint64_t key, uint64_t counter) {
    return static_cast<double>(mix_key(key, counter) >> 11) * 0x1.0p-53;
}

// Exact Poisson sampling without std::poisson_distribution (whose stream is
// implementation-defined and would break cross-stdlib determinism). Inversion
// below mean 30; larger means split as the sum of two independent halves,
// which leaves the distribution exact.
inline uint32_t poisson_sample(double mean, SplitMix64& rng) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) {
        double p = std::exp(-mean);
        double cdf = p;
        double u = rng.uniform();
        uint32_t k = 0;
        while (u > cdf && k < 2000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }
    uint32_t a = poisson_sample(mean / 2.0, rng);
    uint32_t b = poisson_sample(mean / 2.0, rng);
    return a + b;
}

// Box-Muller; used only for synthetic data in tests and diagnostics.
inline double normal_sample(SplitMix64& rng) {
    double u1 = rng.uniform();
    double u2 = rng.uniform();
    if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace rcm
