#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace qfiso {

/*
 * Reproducible random streams.
 *
 * Every Monte Carlo sample draws from its own stream, keyed by
 * (seed, sample index[, sub-stream]) through stream_key(). Each stream is a
 * SplitMix64 generator whose state starts at the key. Because a sample's
 * randomness depends only on its key, results are bit-identical regardless
 * of how samples are distributed over threads.
 *
 *   stream_key(seed, a, b, ...) = mix(...mix(mix(mix(seed) + a) + b)...)
 *
 * where mix is the SplitMix64 finalizer.
 */

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t stream_key(std::uint64_t seed,
                                          std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t k = splitmix64_mix(seed);
    for (auto v : path) k = splitmix64_mix(k + v);
    return k;
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound) by rejection; bound > 0.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        // values below the threshold would bias the low residues
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = (*this)();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform double in the open interval (-1, 1).
    double symmetric_uniform() noexcept {
        for (;;) {
            double u = 2.0 * uniform() - 1.0;
            if (u != -1.0) return u;
        }
    }

private:
    std::uint64_t state_;
};

/// Standard normal variates by the Marsaglia polar method; caches the second variate.
class PolarNormal {
public:
    double operator()(SplitMix64& rng) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = rng.symmetric_uniform();
            v = rng.symmetric_uniform();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

private:
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qfiso
