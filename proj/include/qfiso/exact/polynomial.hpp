#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qfiso/exact/rational.hpp"

namespace qfiso {

/// Dense univariate polynomial with arbitrary-precision integer coefficients,
/// stored lowest degree first with no trailing zeros. The zero polynomial has
/// no coefficients and degree -1.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(long c) : IntPoly(Integer(c)) {}  // NOLINT(google-explicit-constructor)
    IntPoly(Integer c) {                      // NOLINT(google-explicit-constructor)
        if (c != 0) c_.push_back(std::move(c));
    }
    explicit IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// c * x^k.
    static IntPoly monomial(Integer c, std::size_t k) {
        std::vector<Integer> v(k + 1);
        v[k] = std::move(c);
        return IntPoly(std::move(v));
    }
    static IntPoly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Integer>& coefficients() const { return c_; }
    Integer coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Integer(0); }
    const Integer& leading() const { return c_.back(); }

    Integer operator()(const Integer& x) const {
        Integer acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// gcd of the coefficients (nonnegative; zero for the zero polynomial).
    Integer content() const {
        Integer g = 0;
        for (const auto& a : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    IntPoly& operator+=(const IntPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    IntPoly& operator-=(const IntPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    IntPoly& operator*=(const Integer& k) {
        if (k == 0) {
            c_.clear();
            return *this;
        }
        for (auto& a : c_) a *= k;
        return *this;
    }
    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator-(IntPoly a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }
    friend IntPoly operator*(IntPoly a, const Integer& k) { return a *= k; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPoly(std::move(r));
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    /// Divides every coefficient by k, which must divide all of them.
    IntPoly divide_coefficients(const Integer& k) const {
        IntPoly r = *this;
        for (auto& a : r.c_) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), k.get_mpz_t());
        return r;
    }

    IntPoly primitive_part() const {
        if (is_zero()) return {};
        IntPoly r = divide_coefficients(content());
        if (r.leading() < 0) r = -r;
        return r;
    }

    /// Exact quotient a / b in Z[x]; throws if b does not divide a.
    static IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
        if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
        IntPoly rem = a;
        if (rem.degree() < b.degree()) {
            if (rem.is_zero()) return {};
            throw InternalError("inexact polynomial division");
        }
        std::vector<Integer> q(static_cast<std::size_t>(rem.degree() - b.degree() + 1));
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            const std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
            Integer t;
            if (!mpz_divisible_p(rem.leading().get_mpz_t(), b.leading().get_mpz_t()))
                throw InternalError("inexact polynomial division");
            mpz_divexact(t.get_mpz_t(), rem.leading().get_mpz_t(), b.leading().get_mpz_t());
            for (std::size_t i = 0; i < b.c_.size(); ++i) rem.c_[i + shift] -= t * b.c_[i];
            q[shift] = std::move(t);
            rem.trim();
        }
        if (!rem.is_zero()) throw InternalError("inexact polynomial division");
        return IntPoly(std::move(q));
    }

    /// Pseudo-remainder prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b.
    static IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
        IntPoly rem = a;
        const Integer& lb = b.leading();
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            const std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
            const Integer lr = rem.leading();
            rem *= lb;
            for (std::size_t i = 0; i < b.c_.size(); ++i) rem.c_[i + shift] -= lr * b.c_[i];
            rem.trim();
        }
        return rem;
    }

    /// Greatest common divisor in Z[x], normalized to a positive leading coefficient.
    static IntPoly gcd(IntPoly a, IntPoly b) {
        if (a.is_zero()) return b.primitive_part() * b.content();
        if (b.is_zero()) return a.primitive_part() * a.content();
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
        // common powers of x are split off first; they are frequent here and cheap to detect
        std::size_t shift = 0;
        while (shift < a.c_.size() && shift < b.c_.size() && a.c_[shift] == 0 && b.c_[shift] == 0) ++shift;
        a = a.drop_low(shift).primitive_part();
        b = b.drop_low(shift).primitive_part();
        if (a.degree() < b.degree()) std::swap(a, b);
        while (!b.is_zero()) {
            IntPoly r = pseudo_remainder(a, b);
            a = std::move(b);
            b = r.is_zero() ? IntPoly() : r.primitive_part();
        }
        return monomial(1, shift) * a.primitive_part() * g;
    }

    /// Descending-power rendering in the variable `var`, e.g. "4*p^3-p^2+p-4".
    std::string to_string(const std::string& var = "p") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const Integer& a = c_[static_cast<std::size_t>(k)];
            if (a == 0) continue;
            const Integer m = abs(a);
            std::string term;
            if (k == 0) {
                term = m.get_str();
            } else {
                const std::string power = k == 1 ? var : var + "^" + std::to_string(k);
                term = m == 1 ? power : m.get_str() + "*" + power;
            }
            if (out.empty())
                out = (a < 0 ? "-" : "") + term;
            else
                out += (a < 0 ? "-" : "+") + term;
        }
        return out;
    }

    /// Number of nonzero terms.
    std::size_t term_count() const {
        return static_cast<std::size_t>(std::count_if(c_.begin(), c_.end(), [](const Integer& a) { return a != 0; }));
    }

private:
    IntPoly drop_low(std::size_t k) const {
        return IntPoly(std::vector<Integer>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Integer> c_;
};

}  // namespace qfiso
