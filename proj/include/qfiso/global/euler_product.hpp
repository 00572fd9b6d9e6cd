#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "qfiso/exact/interval.hpp"
#include "qfiso/exact/rational.hpp"

namespace qfiso::global {

inline constexpr long kMaxCutoff = 10'000'000;

/// Primes <= limit by the sieve of Eratosthenes.
inline std::vector<long> primes_up_to(long limit) {
    std::vector<long> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (long i = 2; i <= limit; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (long j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

/// rho_4(p) = 1 - p^3 / (4 (p+1)^2 (p^4 + p^3 + p^2 + p + 1)) as an exact rational.
inline Rational rho4_factor(long p) {
    const Integer z = p;
    const Integer den = 4 * (z + 1) * (z + 1) * (z * z * z * z + z * z * z + z * z + z + 1);
    return 1 - make_rational(z * z * z, den);
}

/// Certified enclosure of a real number.
struct IntervalValue {
    Interval enclosure;
    /// Largest prime bound used by the product.
    long cutoff = 0;
    /// The tail over p > cutoff multiplies the partial product by a factor in [1 - tail_bound, 1].
    Rational tail_bound;

    std::string lower(int digits) const { return enclosure.bounds_strings(digits).first; }
    std::string upper(int digits) const { return enclosure.bounds_strings(digits).second; }
    double width() const { return enclosure.width_double(); }
};

/// Outward-rounded product of rho_4(p) over primes p <= cutoff.
inline Interval partial_euler_product(long cutoff, mpfr_prec_t prec) {
    Interval acc = Interval::from_long(1, prec);
    for (long p : primes_up_to(cutoff)) acc *= Interval::from_rational(rho4_factor(p), prec);
    return acc;
}

/// Enclosure of prod_p rho_4(p).
///
/// Tail bound: 1 - rho_4(p) = p^3 / (4 (p+1)^2 (p^4+p^3+p^2+p+1)) < 1/(4 p^3) =: x_p,
/// and -log(1 - x) < 2x for x < 1/2, so
///   -log prod_{p > P} rho_4(p) < sum_{m > P} 1/(2 m^3) < 1/(4 P^2).
/// With exp(-y) >= 1 - y the full product lies in [(1 - 1/(4P^2)) partial, partial].
/// The cutoff is doubled until the enclosure is narrower than 10^-digits.
inline IntervalValue euler_product_rho4(long cutoff = 10'000, int digits = 8) {
    if (cutoff < 2) throw Error("cutoff must be at least 2");
    if (digits < 1 || digits > 50) throw Error("digits must be in [1, 50]");
    const mpfr_prec_t prec = bits_for_digits(2 * digits);
    BigFloat target(prec);
    mpfr_set_ui(target.get(), 10, MPFR_RNDN);
    mpfr_pow_si(target.get(), target.get(), -digits, MPFR_RNDD);
    for (long p = cutoff;; p = std::min(2 * p, kMaxCutoff)) {
        const Interval partial = partial_euler_product(p, prec);
        const Rational tail = make_rational(Integer(1), 4 * Integer(p) * Integer(p));
        Interval lo = partial * Interval::from_rational(1 - tail, prec);
        IntervalValue v{Interval::hull(lo.lower(), partial.upper(), prec), p, tail};
        if (mpfr_less_p(v.enclosure.width().get(), target.get())) return v;
        if (p >= kMaxCutoff)
            throw Error("10^-" + std::to_string(digits) + " accuracy needs a cutoff beyond " + std::to_string(kMaxCutoff));
    }
}

}  // namespace qfiso::global
