#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "qfiso/exact/rational.hpp"
#include "qfiso/support/errors.hpp"

namespace qfiso {

/// Owning MPFR float.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

/// Closed interval [lower, upper] of reals with outward-rounded arithmetic:
/// the exact result of every operation on members lies inside the result.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

    static Interval from_rational(const Rational& q, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static Interval from_long(long v, mpfr_prec_t prec) { return from_rational(Rational(v), prec); }

    static Interval sqrt2(mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_sqrt_ui(r.lo_.get(), 2, MPFR_RNDD);
        mpfr_sqrt_ui(r.hi_.get(), 2, MPFR_RNDU);
        return r;
    }
    static Interval pi(mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
        mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
        return r;
    }
    static Interval sqrt_pi(mpfr_prec_t prec) {
        Interval r = pi(prec);
        mpfr_sqrt(r.lo_.get(), r.lo_.get(), MPFR_RNDD);
        mpfr_sqrt(r.hi_.get(), r.hi_.get(), MPFR_RNDU);
        return r;
    }
    /// Interval from explicit bounds, each rounded outward to `prec` bits.
    static Interval hull(const BigFloat& lo, const BigFloat& hi, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
        mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
        return r;
    }

    mpfr_prec_t precision() const { return lo_.precision(); }
    const BigFloat& lower() const { return lo_; }
    const BigFloat& upper() const { return hi_; }

    bool contains(const Interval& o) const {
        return mpfr_lessequal_p(lo_.get(), o.lo_.get()) && mpfr_greaterequal_p(hi_.get(), o.hi_.get());
    }
    bool contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }

    /// Upper bound on hi - lo.
    BigFloat width() const {
        BigFloat w(precision());
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w;
    }
    double width_double() const { return width().to_double(); }
    double mid_double() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }

    Interval& operator+=(const Interval& o) {
        mpfr_add(lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_add(hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
        return *this;
    }
    Interval& operator-=(const Interval& o) {
        BigFloat lo(precision()), hi(precision());
        mpfr_sub(lo.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
        mpfr_sub(hi.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
        lo_ = std::move(lo);
        hi_ = std::move(hi);
        return *this;
    }
    Interval& operator*=(const Interval& o) {
        const mpfr_prec_t prec = precision();
        BigFloat lo(prec), hi(prec), t(prec);
        bool first = true;
        for (const BigFloat* a : {&lo_, &hi_}) {
            for (const BigFloat* b : {&o.lo_, &o.hi_}) {
                mpfr_mul(t.get(), a->get(), b->get(), MPFR_RNDD);
                if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
                mpfr_mul(t.get(), a->get(), b->get(), MPFR_RNDU);
                if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        }
        lo_ = std::move(lo);
        hi_ = std::move(hi);
        return *this;
    }
    Interval& operator/=(const Interval& o) {
        if (o.contains_zero()) throw DivisionByZero("interval division by an interval containing zero");
        Interval inv(precision());
        mpfr_ui_div(inv.lo_.get(), 1, o.hi_.get(), MPFR_RNDD);
        mpfr_ui_div(inv.hi_.get(), 1, o.lo_.get(), MPFR_RNDU);
        return *this *= inv;
    }

    friend Interval operator+(Interval a, const Interval& b) { return a += b; }
    friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
    friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
    friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
    friend Interval operator-(const Interval& a) {
        Interval r(a.precision());
        mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
        return r;
    }

    /// x^k for integer k; negative k goes through division.
    Interval pow(long k) const {
        if (k < 0) return Interval::from_long(1, precision()) / pow(-k);
        Interval r = Interval::from_long(1, precision());
        for (long i = 0; i < k; ++i) r *= *this;
        return r;
    }

    /// Decimal string of `digits` fractional digits, truncated toward zero,
    /// when every point of the interval truncates to the same string.
    std::optional<std::string> certified_truncation(int digits) const {
        const mpfr_prec_t prec = precision() + 16;
        BigFloat scale(prec), a(prec), b(prec);
        mpfr_ui_pow_ui(scale.get(), 10, static_cast<unsigned long>(digits), MPFR_RNDN);  // exact
        mpfr_mul(a.get(), lo_.get(), scale.get(), MPFR_RNDD);
        mpfr_mul(b.get(), hi_.get(), scale.get(), MPFR_RNDU);
        mpz_class za, zb;
        // truncation toward zero: floor for nonnegatives, ceil for nonpositives
        if (mpfr_sgn(a.get()) >= 0) {
            mpfr_get_z(za.get_mpz_t(), a.get(), MPFR_RNDD);
            mpfr_get_z(zb.get_mpz_t(), b.get(), MPFR_RNDD);
        } else if (mpfr_sgn(b.get()) <= 0) {
            mpfr_get_z(za.get_mpz_t(), a.get(), MPFR_RNDU);
            mpfr_get_z(zb.get_mpz_t(), b.get(), MPFR_RNDU);
        } else {
            // straddles zero: only (-1, 1) * 10^-digits truncates to a single value
            mpfr_get_z(za.get_mpz_t(), a.get(), MPFR_RNDU);
            mpfr_get_z(zb.get_mpz_t(), b.get(), MPFR_RNDD);
            if (za != 0 || zb != 0) return std::nullopt;
        }
        if (za != zb) return std::nullopt;
        return format_scaled(za, digits, mpfr_sgn(a.get()) < 0 && mpfr_sgn(b.get()) <= 0);
    }

    /// Formats z * 10^-digits as a fixed-point decimal string.
    static std::string format_scaled(const mpz_class& z, int digits, bool negative) {
        mpz_class m = abs(z);
        std::string s = m.get_str();
        if (digits > 0) {
            if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
            s.insert(s.size() - static_cast<std::size_t>(digits), ".");
        }
        if (negative && z != 0) s.insert(0, "-");
        return s;
    }

    /// Lower and upper bounds printed with `digits` significant digits, rounded outward.
    std::pair<std::string, std::string> bounds_strings(int digits) const {
        return {to_decimal(lo_, digits, MPFR_RNDD), to_decimal(hi_, digits, MPFR_RNDU)};
    }

    static std::string to_decimal(const BigFloat& x, int digits, mpfr_rnd_t rnd) {
        if (mpfr_zero_p(x.get())) return "0";
        mpfr_exp_t exp10 = 0;
        char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), x.get(), rnd);
        std::string mant(raw);
        mpfr_free_str(raw);
        bool neg = false;
        if (!mant.empty() && mant[0] == '-') {
            neg = true;
            mant.erase(0, 1);
        }
        std::string out;
        if (exp10 <= 0) {
            out = "0." + std::string(static_cast<std::size_t>(-exp10), '0') + mant;
        } else if (static_cast<std::size_t>(exp10) >= mant.size()) {
            out = mant + std::string(static_cast<std::size_t>(exp10) - mant.size(), '0');
        } else {
            out = mant.substr(0, static_cast<std::size_t>(exp10)) + "." + mant.substr(static_cast<std::size_t>(exp10));
        }
        while (out.find('.') != std::string::npos && (out.back() == '0' || out.back() == '.')) {
            const bool dot = out.back() == '.';
            out.pop_back();
            if (dot) break;
        }
        return neg ? "-" + out : out;
    }

private:
    BigFloat lo_;
    BigFloat hi_;
};

/// Bits needed for roughly `digits` significant decimal digits plus a guard.
inline mpfr_prec_t bits_for_digits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 64;
}

}  // namespace qfiso
