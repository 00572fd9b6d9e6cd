#pragma once

#include <string>

#include "qfiso/exact/pilaurent.hpp"

namespace qfiso::real {

/// 2^(k/2) in Q(sqrt 2) for any integer k.
inline QSqrt2 two_to_half(long k) {
    const long h = k >= 0 ? k / 2 : -((-k + 1) / 2);  // floor(k / 2)
    const Rational base = pow_rational(Rational(2), h);
    return (k - 2 * h) == 1 ? QSqrt2(Rational(0), base) : QSqrt2(base);
}

/// Gamma(m/2), m >= 1: (k-1)! for m = 2k and (2k)!/(4^k k!) sqrt(pi) for m = 2k+1.
inline PiLaurent gamma_half_exact(long m) {
    if (m < 1) throw Error("gamma_half_exact needs m >= 1, got " + std::to_string(m));
    const unsigned long k = static_cast<unsigned long>(m / 2);
    if (m % 2 == 0) return PiLaurent(QSqrt2(Rational(factorial(k - 1))));
    const Rational c = make_rational(factorial(2 * k), pow_int(Integer(4), k) * factorial(k));
    return PiLaurent(QSqrt2(c), 1);
}

/// beta_{1/2}(i/2, j/2) for i, j >= 1.
///
/// Starts from the base case with the same parities,
///   beta(1,1) = 1/2, beta(1/2,1) = sqrt 2, beta(1,1/2) = 2 - sqrt 2, beta(1/2,1/2) = pi/2,
/// and raises each argument with
///   beta(a+1, b) = (a beta(a,b) - t^a (1-t)^b) / (a+b)
///   beta(a, b+1) = (b beta(a,b) + t^a (1-t)^b) / (a+b),   t^a (1-t)^b = 2^-(a+b).
inline PiLaurent inc_beta_half_exact(long i, long j) {
    if (i < 1 || j < 1) throw Error("inc_beta_half_exact needs i, j >= 1");
    long a2 = i % 2 == 1 ? 1 : 2;  // twice the current arguments
    long b2 = j % 2 == 1 ? 1 : 2;
    PiLaurent v;
    if (a2 == 2 && b2 == 2)
        v = PiLaurent(QSqrt2(make_rational(1, 2)));
    else if (a2 == 1 && b2 == 2)
        v = PiLaurent(QSqrt2::sqrt2());
    else if (a2 == 2 && b2 == 1)
        v = PiLaurent(QSqrt2(Rational(2), Rational(-1)));
    else
        v = PiLaurent(QSqrt2(make_rational(1, 2)), 2);
    while (a2 < i) {
        const PiLaurent boundary(two_to_half(-(a2 + b2)));
        v = (PiLaurent(QSqrt2(make_rational(a2, 2))) * v - boundary) / PiLaurent(QSqrt2(make_rational(a2 + b2, 2)));
        a2 += 2;
    }
    while (b2 < j) {
        const PiLaurent boundary(two_to_half(-(a2 + b2)));
        v = (PiLaurent(QSqrt2(make_rational(b2, 2))) * v + boundary) / PiLaurent(QSqrt2(make_rational(a2 + b2, 2)));
        b2 += 2;
    }
    return v;
}

}  // namespace qfiso::real
