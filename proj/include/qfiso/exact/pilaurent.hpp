#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qfiso/exact/interval.hpp"
#include "qfiso/exact/qsqrt2.hpp"

namespace qfiso {

/// Finite Laurent polynomial sum_k c_k * s^k in the formal symbol s = sqrt(pi),
/// with coefficients in Q(sqrt 2). Zero coefficients are never stored, so
/// structural equality is value equality.
class PiLaurent {
public:
    using Terms = std::map<int, QSqrt2>;

    PiLaurent() = default;
    PiLaurent(long c) : PiLaurent(QSqrt2(c)) {}  // NOLINT(google-explicit-constructor)
    PiLaurent(QSqrt2 c, int exponent = 0) {      // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.emplace(exponent, std::move(c));
    }

    /// s^k = pi^(k/2).
    static PiLaurent sqrt_pi_power(int k) { return PiLaurent(QSqrt2(1), k); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0 &&
                                  terms_.begin()->second.is_rational());
    }

    QSqrt2 coefficient(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? QSqrt2() : it->second;
    }

    /// The single (coefficient, exponent) pair when this is a nonzero monomial.
    std::optional<std::pair<QSqrt2, int>> as_monomial() const {
        if (terms_.size() != 1) return std::nullopt;
        return std::make_pair(terms_.begin()->second, terms_.begin()->first);
    }

    PiLaurent& operator+=(const PiLaurent& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    PiLaurent& operator-=(const PiLaurent& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    PiLaurent& operator*=(const PiLaurent& o) { return *this = *this * o; }

    friend PiLaurent operator+(PiLaurent x, const PiLaurent& y) { return x += y; }
    friend PiLaurent operator-(PiLaurent x, const PiLaurent& y) { return x -= y; }
    friend PiLaurent operator-(const PiLaurent& x) { return PiLaurent() - x; }
    friend PiLaurent operator*(const PiLaurent& x, const PiLaurent& y) {
        PiLaurent r;
        for (const auto& [i, a] : x.terms_)
            for (const auto& [j, b] : y.terms_) r.add_term(i + j, a * b);
        return r;
    }

    /// Exact division; defined only when the divisor is a nonzero monomial c*s^k.
    friend PiLaurent operator/(const PiLaurent& x, const PiLaurent& y) {
        auto m = y.as_monomial();
        if (!m) {
            if (y.is_zero()) throw DivisionByZero("PiLaurent division by zero");
            throw Error("PiLaurent division requires a monomial divisor, got " + y.to_string());
        }
        const QSqrt2 inv = m->first.inverse();
        PiLaurent r;
        for (const auto& [k, c] : x.terms_) r.add_term(k - m->second, c * inv);
        return r;
    }

    friend bool operator==(const PiLaurent& x, const PiLaurent& y) { return x.terms_ == y.terms_; }

    /// Encloses the real value with sqrt(2) and pi replaced by intervals.
    Interval enclose(mpfr_prec_t prec) const {
        Interval sum = Interval::from_long(0, prec);
        if (terms_.empty()) return sum;
        const Interval r2 = Interval::sqrt2(prec);
        const Interval s = Interval::sqrt_pi(prec);
        for (const auto& [k, c] : terms_) {
            Interval coeff = Interval::from_rational(c.rational_part(), prec) +
                             Interval::from_rational(c.sqrt2_part(), prec) * r2;
            sum += coeff * s.pow(k);
        }
        return sum;
    }

    double to_double() const { return enclose(128).mid_double(); }

    /// Canonical rendering: terms in ascending exponent as "(c)*pi^(k/2)",
    /// joined by " + ", with c in the canonical Q(sqrt 2) form. Zero is "0".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.to_string() + ")";
            if (k != 0) out += "*pi^(" + std::to_string(k) + "/2)";
        }
        return out;
    }

    /// Human-readable form grouped by powers of pi, e.g.
    /// "7/8 + (47/120 + 109*sqrt(2)/480)*pi^-1 - (32*sqrt(2)/45)*pi^-2".
    /// Odd powers of sqrt(pi) print as "sqrt(pi)^k".
    std::string pretty() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<bool, std::string>> pieces;  // (negative, body)
        // descending exponents so the constant term leads when only k <= 0 occurs
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const int k = it->first;
            const QSqrt2& c = it->second;
            const Rational& a = c.rational_part();
            const Rational& b = c.sqrt2_part();
            if (k == 0) {
                if (a != 0) pieces.emplace_back(a < 0, detail::scaled_term(abs(a), ""));
                if (b != 0) pieces.emplace_back(b < 0, detail::scaled_term(abs(b), "sqrt(2)"));
                continue;
            }
            const std::string factor = (k % 2 == 0)
                                           ? (k == 2 ? "pi" : "pi^" + std::to_string(k / 2))
                                           : (k == 1 ? "sqrt(pi)" : "sqrt(pi)^" + std::to_string(k));
            if (a != 0 && b != 0) {
                pieces.emplace_back(false, "(" + c.pretty() + ")*" + factor);
            } else if (a != 0) {
                const Rational m = abs(a);
                pieces.emplace_back(a < 0, m == 1 ? factor
                                           : m.get_den() == 1 ? m.get_str() + "*" + factor
                                                              : "(" + m.get_str() + ")*" + factor);
            } else {
                const Rational m = abs(b);
                pieces.emplace_back(b < 0, m.get_den() == 1 ? detail::scaled_term(m, "sqrt(2)") + "*" + factor
                                                            : "(" + detail::scaled_term(m, "sqrt(2)") + ")*" + factor);
            }
        }
        std::string out;
        for (const auto& [neg, body] : pieces) {
            if (out.empty())
                out = (neg ? "-" : "") + body;
            else
                out += (neg ? " - " : " + ") + body;
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const PiLaurent& x) { return os << x.to_string(); }

private:
    void add_term(int k, const QSqrt2& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Terms terms_;
};

/// Result of certified decimal evaluation.
struct DecimalValue {
    std::string text;       ///< truncated toward zero to `digits` fractional digits
    double enclosure_width;  ///< width of the interval the digits were certified from
};

/// Certified decimal expansion of x with `digits` fractional digits (digits <= 50).
/// Working precision starts above 50 significant digits and is raised until
/// the enclosure pins every printed digit.
inline DecimalValue pilaurent_to_decimal(const PiLaurent& x, int digits) {
    if (digits < 0 || digits > 50) throw Error("digits must be in [0, 50]");
    // exact rational values need no enclosure
    if (x.is_rational_constant()) {
        const Rational q = x.coefficient(0).rational_part();
        const Rational shifted = q * pow_rational(Rational(10), digits);
        const Integer scaled = shifted.get_num() / shifted.get_den();  // truncates toward zero
        return {Interval::format_scaled(scaled, digits, q < 0), 0.0};
    }
    mpfr_prec_t prec = bits_for_digits(std::max(digits + 5, 50));
    for (int attempt = 0; attempt < 12; ++attempt, prec *= 2) {
        Interval v = x.enclose(prec);
        if (auto s = v.certified_truncation(digits)) return {*s, v.width_double()};
    }
    throw InternalError("could not certify decimal digits of " + x.to_string());
}

}  // namespace qfiso
