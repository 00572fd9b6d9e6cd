#pragma once

#include <gmpxx.h>

#include <string>

#include "qfiso/support/errors.hpp"

namespace qfiso {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Arbitrary-precision fraction. GMP keeps every value produced by arithmetic
/// reduced with a positive denominator; make_rational() canonicalizes the
/// values we build from parts.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

/// "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer pow_int(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Rational pow_rational(const Rational& base, long exp) {
    if (exp < 0) {
        if (base == 0) throw DivisionByZero("zero to a negative power");
        return pow_rational(Rational(1) / base, -exp);
    }
    Rational r = make_rational(pow_int(base.get_num(), static_cast<unsigned long>(exp)),
                               pow_int(base.get_den(), static_cast<unsigned long>(exp)));
    return r;
}

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// p-adic valuation of a nonzero integer; p >= 2.
inline long valuation(const Integer& z, unsigned long p) {
    if (z == 0) throw DivisionByZero("valuation of zero");
    Integer t = z;
    long v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

inline long valuation(const Rational& q, unsigned long p) {
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

}  // namespace qfiso
