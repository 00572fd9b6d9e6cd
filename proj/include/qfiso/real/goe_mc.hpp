#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qfiso/support/parallel.hpp"
#include "qfiso/support/rng.hpp"

namespace qfiso::real {

/// Real symmetric matrix with symmetric storage.
class SymMatrix {
public:
    explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
    std::size_t size() const { return n_; }
    double get(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = v;
    }

private:
    std::size_t n_;
    std::vector<double> a_;
};

enum class Definiteness { Definite, Indefinite, Unresolved };

inline constexpr double kPivotGuard = 1e-12;

/// Classifies by the signs of the pivots of symmetric Gaussian elimination
/// without pivoting (ratios of leading principal minors). Definite when all
/// pivots share a sign; Unresolved when a pivot below kPivotGuard in
/// magnitude appears before the signs mix.
inline Definiteness classify_definiteness(SymMatrix m) {
    const std::size_t n = m.size();
    int sign = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double piv = m.get(k, k);
        if (std::fabs(piv) < kPivotGuard) return Definiteness::Unresolved;
        const int s = piv > 0 ? 1 : -1;
        if (sign != 0 && s != sign) return Definiteness::Indefinite;
        sign = s;
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m.get(i, k) / piv;
            for (std::size_t j = i; j < n; ++j) m.set(i, j, m.get(i, j) - f * m.get(k, j));
        }
    }
    return Definiteness::Definite;
}

enum class RealModel { Goe, Uniform };

inline std::string to_string(RealModel m) { return m == RealModel::Goe ? "goe" : "uniform"; }

/// (A + A^t)/sqrt(2) with A standard normal, so Var M_ii = 2 and Var M_ij = 1.
inline SymMatrix sample_goe(std::size_t n, SplitMix64& rng, PolarNormal& normal) {
    std::vector<double> a(n * n);
    for (auto& x : a) x = normal(rng);
    SymMatrix m(n);
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, (a[i * n + j] + a[j * n + i]) * r);
    return m;
}

/// Gram matrix of sum c_ij x_i x_j with c_ij uniform on [-1/2, 1/2]:
/// G_ii = c_ii, G_ij = c_ij / 2.
inline SymMatrix sample_uniform(std::size_t n, SplitMix64& rng) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double c = rng.uniform() - 0.5;
            m.set(i, j, i == j ? c : c / 2);
        }
    return m;
}

struct RealMcResult {
    int n = 0;
    RealModel model = RealModel::Goe;
    std::uint64_t samples = 0;
    std::uint64_t indefinite = 0;
    /// Draws discarded by the pivot guard and replaced from the same stream.
    std::uint64_t resamples = 0;
    double estimate = 0;
    double stderr_ = 0;
};

/// Fraction of indefinite matrices among `samples` draws; sample i draws from
/// SplitMix64(stream_key(seed, {i})), so the result is independent of `threads`.
inline RealMcResult estimate_rho_infinity_mc(RealModel model, int n, std::uint64_t samples, std::uint64_t seed,
                                             unsigned threads = 1) {
    if (n < 1) throw Error("n must be at least 1");
    if (samples < 1) throw Error("samples must be at least 1");
    const std::size_t size = static_cast<std::size_t>(n);
    struct Counts {
        std::uint64_t indefinite = 0, resamples = 0;
    };
    const auto blocks = parallel_blocks(samples, threads, [&](std::uint64_t begin, std::uint64_t end) {
        Counts c;
        for (std::uint64_t i = begin; i < end; ++i) {
            SplitMix64 rng(stream_key(seed, {i}));
            PolarNormal normal;
            for (;;) {
                const SymMatrix m = model == RealModel::Goe ? sample_goe(size, rng, normal) : sample_uniform(size, rng);
                const Definiteness d = classify_definiteness(m);
                if (d == Definiteness::Unresolved) {
                    ++c.resamples;
                    continue;
                }
                if (d == Definiteness::Indefinite) ++c.indefinite;
                break;
            }
        }
        return c;
    });
    RealMcResult r;
    r.n = n;
    r.model = model;
    r.samples = samples;
    for (const auto& b : blocks) {
        r.indefinite += b.indefinite;
        r.resamples += b.resamples;
    }
    r.estimate = static_cast<double>(r.indefinite) / static_cast<double>(samples);
    r.stderr_ = std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(samples));
    return r;
}

inline RealMcResult estimate_rho_infinity_goe_mc(int n, std::uint64_t samples, std::uint64_t seed, unsigned threads = 1) {
    return estimate_rho_infinity_mc(RealModel::Goe, n, samples, seed, threads);
}

inline RealMcResult estimate_rho_infinity_uniform_mc(int n, std::uint64_t samples, std::uint64_t seed,
                                                     unsigned threads = 1) {
    return estimate_rho_infinity_mc(RealModel::Uniform, n, samples, seed, threads);
}

}  // namespace qfiso::real
