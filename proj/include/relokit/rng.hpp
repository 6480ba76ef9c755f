#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "relokit/core.hpp"

namespace relokit {

// All randomness flows through this wrapper so results are bit-identical
// across platforms. std::mt19937_64 is fully specified by the standard; the
// standard *distributions* are not, so sampling is done by hand here.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi], inclusive, via rejection sampling.
    int next_int(int lo, int hi) {
        if (lo > hi)
            throw input_error("SplitRng::next_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return static_cast<int>(static_cast<std::int64_t>(lo) + static_cast<std::int64_t>(x % span));
    }

    // Knuth's product-of-uniforms sampler, chunked so exp(-lambda) cannot
    // underflow for large rates.
    int poisson(double lambda) {
        if (lambda < 0.0)
            throw input_error("SplitRng::poisson: negative rate");
        int count = 0;
        while (lambda > 500.0) {
            count += poisson_chunk(500.0);
            lambda -= 500.0;
        }
        return count + poisson_chunk(lambda);
    }

    // Draws an index from a probability mass function by inverse CDF.
    // Trailing slack from rounding goes to the last nonzero bucket.
    int sample_pmf(const std::vector<double>& pmf) {
        if (pmf.empty())
            throw input_error("SplitRng::sample_pmf: empty pmf");
        const double u = next_unit();
        double acc = 0.0;
        int last_nonzero = 0;
        for (size_t i = 0; i < pmf.size(); ++i) {
            if (pmf[i] > 0.0) last_nonzero = static_cast<int>(i);
            acc += pmf[i];
            if (u < acc) return static_cast<int>(i);
        }
        return last_nonzero;
    }

private:
    int poisson_chunk(double lambda) {
        const double threshold = std::exp(-lambda);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_unit();
        } while (p > threshold);
        return k - 1;
    }

    std::mt19937_64 engine_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

// Derives an independent child seed from a root seed, a purpose tag, and an
// optional index. Streams for different tags or indices never collide in
// practice, and the derivation is stable across runs and platforms.
inline std::uint64_t substream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) {
    std::uint64_t h = detail::splitmix64(seed ^ detail::fnv1a(tag));
    return detail::splitmix64(h ^ (index * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
}

}  // namespace relokit
