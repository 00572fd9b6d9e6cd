#pragma once

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "qfiso/exact/polynomial.hpp"

namespace qfiso {

/// Quotient of integer polynomials in the formal prime variable p.
///
/// Normal form: numerator and denominator are coprime in Q[p], the integer
/// contents of the two share no common factor, and the denominator has a
/// positive leading coefficient. Zero is 0/1. With this normal form two
/// rational functions are equal exactly when their parts are equal, and
/// to_string() is canonical.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}                 // NOLINT(google-explicit-constructor)
    RatFunc(IntPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
    RatFunc(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    /// The variable p itself.
    static RatFunc p() { return RatFunc(IntPoly::x()); }
    /// p^k for any integer k.
    static RatFunc p_power(long k) {
        return k >= 0 ? RatFunc(IntPoly::monomial(1, static_cast<std::size_t>(k)))
                      : RatFunc(IntPoly(1), IntPoly::monomial(1, static_cast<std::size_t>(-k)));
    }

    const IntPoly& numerator() const { return num_; }
    const IntPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) {
        RatFunc r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DivisionByZero("rational function division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Identity test by cross-multiplication, independent of the normal form.
    static bool cross_equal(const RatFunc& a, const RatFunc& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    /// f(p) as an exact rational.
    Rational eval(const Integer& p) const {
        const Integer d = den_(p);
        if (d == 0)
            throw DenominatorVanishes("denominator " + den_.to_string() + " vanishes at p=" + p.get_str());
        return make_rational(num_(p), d);
    }

    /// Canonical string "num/den" in descending powers; multi-term parts are
    /// parenthesized and a unit denominator is omitted.
    std::string to_string() const {
        std::string n = num_.to_string();
        if (den_ == IntPoly(1)) return n;
        if (num_.term_count() > 1) n = "(" + n + ")";
        std::string d = den_.to_string();
        // "c*p^k" needs parentheses too, or it would read as (n/c)*p^k
        if (den_.term_count() > 1 || (den_.degree() > 0 && den_.leading() != 1)) d = "(" + d + ")";
        return n + "/" + d;
    }

    friend std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

private:
    void normalize() {
        if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = IntPoly(1);
            return;
        }
        if (den_.degree() > 0) {
            IntPoly g = IntPoly::gcd(num_, den_).primitive_part();
            if (g.degree() > 0) {
                num_ = IntPoly::divide_exact(num_, g);
                den_ = IntPoly::divide_exact(den_, g);
            }
        }
        Integer c;
        mpz_gcd(c.get_mpz_t(), num_.content().get_mpz_t(), den_.content().get_mpz_t());
        if (c != 1) {
            num_ = num_.divide_coefficients(c);
            den_ = den_.divide_coefficients(c);
        }
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    IntPoly num_;
    IntPoly den_;
};

/// Parses a rational expression in the variable p, e.g.
/// "1 - (p^3/(4(p+1)(p^3+p^2+p+1)))". Supports integers, p, + - * / ^,
/// parentheses, unary minus and implicit multiplication ("2p", "2(p+1)").
/// Exponents must be integer literals.
class RatFuncParser {
public:
    static RatFunc parse(std::string_view text) {
        RatFuncParser ps(text);
        RatFunc r = ps.expression();
        ps.skip_space();
        if (ps.pos_ != ps.text_.size()) ps.fail("unexpected character");
        return r;
    }

private:
    explicit RatFuncParser(std::string_view t) : text_(t) {}

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
    }
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    bool starts_factor() {
        skip_space();
        if (pos_ >= text_.size()) return false;
        const char c = text_[pos_];
        return c == '(' || c == 'p' || std::isdigit(static_cast<unsigned char>(c));
    }

    RatFunc expression() {
        RatFunc r = term();
        for (;;) {
            if (accept('+'))
                r = r + term();
            else if (accept('-'))
                r = r - term();
            else
                return r;
        }
    }
    RatFunc term() {
        RatFunc r = unary();
        for (;;) {
            if (accept('*'))
                r = r * unary();
            else if (accept('/'))
                r = r / unary();
            else if (starts_factor())
                r = r * power();
            else
                return r;
        }
    }
    RatFunc unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }
    RatFunc power() {
        RatFunc base = primary();
        if (accept('^')) {
            bool neg = accept('-');
            long e = integer_literal();
            if (neg) e = -e;
            RatFunc r = 1;
            const RatFunc b = e < 0 ? RatFunc(1) / base : base;
            for (long i = 0; i < (e < 0 ? -e : e); ++i) r = r * b;
            return r;
        }
        return base;
    }
    RatFunc primary() {
        skip_space();
        if (accept('(')) {
            RatFunc r = expression();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (accept('p')) return RatFunc::p();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return RatFunc(IntPoly(Integer(std::string(text_.substr(start, pos_ - start)))));
        }
        fail("expected a number, p or '('");
    }
    long integer_literal() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer exponent");
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace qfiso
