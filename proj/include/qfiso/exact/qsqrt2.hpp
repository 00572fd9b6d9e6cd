#pragma once

#include <ostream>
#include <string>

#include "qfiso/exact/rational.hpp"

namespace qfiso {

/// Element a + b*sqrt(2) of the field Q(sqrt 2). The pair (a, b) is unique
/// because sqrt(2) is irrational.
class QSqrt2 {
public:
    QSqrt2() = default;
    QSqrt2(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
    QSqrt2(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
    QSqrt2(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static QSqrt2 sqrt2() { return {Rational(0), Rational(1)}; }

    const Rational& rational_part() const { return a_; }
    const Rational& sqrt2_part() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    QSqrt2 conjugate() const { return {a_, -b_}; }
    /// Field norm a^2 - 2 b^2; zero only for the zero element.
    Rational norm() const { return a_ * a_ - 2 * b_ * b_; }

    QSqrt2 inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero in Q(sqrt 2)");
        const Rational n = norm();
        return {a_ / n, -b_ / n};
    }

    QSqrt2& operator+=(const QSqrt2& o) {
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    QSqrt2& operator-=(const QSqrt2& o) {
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    QSqrt2& operator*=(const QSqrt2& o) {
        Rational a = a_ * o.a_ + 2 * b_ * o.b_;
        Rational b = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(a);
        b_ = std::move(b);
        return *this;
    }
    QSqrt2& operator/=(const QSqrt2& o) { return *this *= o.inverse(); }

    friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
    friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
    friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
    friend QSqrt2 operator/(QSqrt2 x, const QSqrt2& y) { return x /= y; }
    friend QSqrt2 operator-(const QSqrt2& x) { return {-x.a_, -x.b_}; }

    friend bool operator==(const QSqrt2& x, const QSqrt2& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }

    /// Sign of a + b*sqrt(2), decided exactly by comparing squares.
    int sign() const {
        const int sa = sgn(a_), sb = sgn(b_);
        if (sa == 0) return sb;
        if (sb == 0 || sa == sb) return sa;
        // opposite signs: compare a^2 with 2 b^2
        const int c = cmp(a_ * a_, 2 * b_ * b_);
        return c > 0 ? sa : (c < 0 ? sb : 0);
    }

    /// Canonical rendering "a+b*sqrt(2)", e.g. "1/2", "-3*sqrt(2)", "1+1/2*sqrt(2)".
    std::string to_string() const {
        if (b_ == 0) return a_.get_str();
        std::string s_b = b_ == 1 ? "sqrt(2)" : (b_ == -1 ? "-sqrt(2)" : b_.get_str() + "*sqrt(2)");
        if (a_ == 0) return s_b;
        return a_.get_str() + (b_ > 0 ? "+" : "") + s_b;
    }

    /// Human-readable rendering in the style "1/2 + 3*sqrt(2)/8".
    std::string pretty() const;

    friend std::ostream& operator<<(std::ostream& os, const QSqrt2& x) { return os << x.to_string(); }

private:
    Rational a_{0};
    Rational b_{0};
};

namespace detail {

/// Renders |q| * tail as "tail", "3*tail", "tail/8", "3*tail/8"; tail may be empty.
inline std::string scaled_term(const Rational& q_abs, const std::string& tail) {
    const Integer& num = q_abs.get_num();
    const Integer& den = q_abs.get_den();
    std::string s;
    if (tail.empty()) {
        s = num.get_str();
    } else {
        s = num == 1 ? tail : num.get_str() + "*" + tail;
    }
    if (den != 1) s += "/" + den.get_str();
    return s;
}

}  // namespace detail

inline std::string QSqrt2::pretty() const {
    std::string out;
    auto append = [&out](const Rational& q, const std::string& tail) {
        if (q == 0) return;
        Rational q_abs = abs(q);
        std::string t = detail::scaled_term(q_abs, tail);
        if (out.empty())
            out = (q < 0 ? "-" : "") + t;
        else
            out += (q < 0 ? " - " : " + ") + t;
    };
    append(a_, "");
    append(b_, "sqrt(2)");
    return out.empty() ? "0" : out;
}

}  // namespace qfiso
