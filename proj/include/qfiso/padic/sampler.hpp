#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qfiso/padic/quad_form.hpp"
#include "qfiso/support/rng.hpp"

namespace qfiso::padic {

/// A quadratic form with Haar-random Z_p coefficients, realized digit by digit.
///
/// Coefficient c (in upper-triangular order) reads its base-p digits from the
/// stream SplitMix64(stream_key(key, {c})). Digits are drawn only when first
/// needed and never change afterwards.
class LazyPadicForm {
public:
    LazyPadicForm(int n, unsigned long p, std::uint64_t key, long max_digits)
        : n_(n), p_(p), max_digits_(max_digits) {
        if (n < 1) throw Error("a quadratic form needs at least one variable");
        if (p < 2) throw NotPrime("p must be at least 2");
        if (max_digits < 1) throw Error("max_digits must be at least 1");
        const std::size_t count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2;
        for (std::size_t c = 0; c < count; ++c) streams_.emplace_back(stream_key(key, {c}));
        digits_.resize(count);
    }

    int n() const { return n_; }
    unsigned long p() const { return p_; }
    long max_digits() const { return max_digits_; }
    /// Digits currently materialized for every coefficient.
    long precision() const { return precision_; }

    /// Materializes digits up to k (capped at max_digits).
    void extend(long k) {
        k = std::min(k, max_digits_);
        for (; precision_ < k; ++precision_)
            for (std::size_t c = 0; c < streams_.size(); ++c) digits_[c].push_back(streams_[c].below(p_));
    }

    /// Digit d (0-based, least significant first) of coefficient c.
    unsigned long digit(std::size_t c, long d) {
        extend(d + 1);
        return static_cast<unsigned long>(digits_[c].at(static_cast<std::size_t>(d)));
    }

    /// The form with every coefficient truncated to its first k digits.
    QuadForm truncation(long k) {
        extend(k);
        k = std::min(k, precision_);
        std::vector<Integer> coeffs;
        for (const auto& ds : digits_) {
            Integer v = 0;
            for (long d = k - 1; d >= 0; --d) v = v * p_ + ds[static_cast<std::size_t>(d)];
            coeffs.push_back(v);
        }
        return QuadForm(n_, coeffs);
    }

private:
    int n_;
    unsigned long p_;
    long max_digits_;
    long precision_ = 0;
    std::vector<SplitMix64> streams_;
    std::vector<std::vector<std::uint64_t>> digits_;
};

inline LazyPadicForm sample_form(int n, unsigned long p, std::uint64_t seed, long max_digits = 64) {
    return LazyPadicForm(n, p, seed, max_digits);
}

}  // namespace qfiso::padic
