#pragma once

#include <string>

#include "qfiso/real/gamma_beta.hpp"
#include "qfiso/real/pfaffian.hpp"

namespace qfiso::real {

inline void check_real_size(int n) {
    if (n < 1) throw Error("n must be at least 1, got " + std::to_string(n));
    if (n > static_cast<int>(kMaxPfaffianSize))
        throw SizeTooLarge("n=" + std::to_string(n) + " exceeds " + std::to_string(kMaxPfaffianSize));
}

/// The n' x n' matrix A (n' = 2 ceil(n/2)) with, in 1-based indices,
///   a_ij = 2^(i+j-2) Gamma((i+j)/2) (beta_{1/2}(i/2, j/2) - beta_{1/2}(j/2, i/2))  for i < j <= n,
///   a_{i,n+1} = 2^(i-1) Gamma(i/2)                                                    for odd n.
inline SkewMatrix<PiLaurent> build_debruijn_matrix(int n) {
    check_real_size(n);
    const std::size_t size = static_cast<std::size_t>(n + n % 2);
    SkewMatrix<PiLaurent> a(size);
    for (long i = 1; i <= n; ++i)
        for (long j = i + 1; j <= n; ++j) {
            const PiLaurent scale(QSqrt2(pow_rational(Rational(2), i + j - 2)));
            a.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1),
                  scale * gamma_half_exact(i + j) * (inc_beta_half_exact(i, j) - inc_beta_half_exact(j, i)));
        }
    if (n % 2 == 1)
        for (long i = 1; i <= n; ++i)
            a.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(n),
                  PiLaurent(QSqrt2(pow_rational(Rational(2), i - 1))) * gamma_half_exact(i));
    return a;
}

/// 2^((n-1)(n+4)/4) prod_{m=1}^n Gamma(m/2), checked to be a single power of
/// sqrt(pi) times an element of Q(sqrt 2).
inline PiLaurent rho_infinity_denominator(int n) {
    check_real_size(n);
    const long nl = n;
    // (n-1)(n+4) is always even, so the power of 2 is a half-integer
    PiLaurent d(two_to_half((nl - 1) * (nl + 4) / 2));
    for (long m = 1; m <= nl; ++m) d *= gamma_half_exact(m);
    if (!d.as_monomial()) throw InternalError("denominator is not a monomial in sqrt(pi): " + d.to_string());
    return d;
}

/// rho_n(infinity) = 1 - Pf(A) / (2^((n-1)(n+4)/4) prod Gamma(m/2)).
inline PiLaurent rho_infinity_exact(int n) {
    check_real_size(n);
    return PiLaurent(1) - pfaffian(build_debruijn_matrix(n)) / rho_infinity_denominator(n);
}

/// Z_n = n! (2 pi)^(n/2) 2^(n(n-1)/4 + n/2) prod_{j=1}^n Gamma(j/2)/Gamma(1/2).
inline PiLaurent goe_normalizer(int n) {
    check_real_size(n);
    const long nl = n;
    PiLaurent z(QSqrt2(Rational(factorial(static_cast<unsigned long>(n)))));
    z *= PiLaurent(two_to_half(nl), static_cast<int>(n));  // (2 pi)^(n/2) = 2^(n/2) s^n
    z *= PiLaurent(two_to_half(nl * (nl - 1) / 2 + nl));
    for (long j = 1; j <= nl; ++j) z *= gamma_half_exact(j) / gamma_half_exact(1);
    return z;
}

/// Probability p+ that a GOE matrix is positive definite, (1 - rho_n(infinity))/2.
/// The value n!/Z_n Pf(A) is computed as well and must agree.
inline PiLaurent positive_definite_probability_exact(int n) {
    check_real_size(n);
    const PiLaurent pf = pfaffian(build_debruijn_matrix(n));
    const PiLaurent via_rho = (PiLaurent(1) - rho_infinity_exact(n)) / PiLaurent(QSqrt2(Rational(2)));
    const PiLaurent via_z = PiLaurent(QSqrt2(Rational(factorial(static_cast<unsigned long>(n))))) * pf / goe_normalizer(n);
    if (!(via_rho == via_z))
        throw InternalError("positive definite probability routes disagree: " + via_rho.to_string() + " vs " +
                            via_z.to_string());
    return via_rho;
}

}  // namespace qfiso::real
