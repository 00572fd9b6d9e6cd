#pragma once

#include <vector>

#include "qfiso/padic/decide.hpp"

namespace qfiso::padic {

namespace detail {

/// u = p^k * unit; returns the unit's residue mod m (m = p or 8) and k.
inline std::pair<u64, long> split_unit(const Rational& a, u64 p, u64 m) {
    Integer num = a.get_num(), den = a.get_den();
    long k = 0;
    while (mpz_divisible_ui_p(num.get_mpz_t(), p)) {
        mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), p);
        ++k;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
        mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
        --k;
    }
    const u64 nu = residue(num, m), du = residue(den, m);
    // odd units mod 8 are their own inverses
    const u64 inv = m == 8 ? du : invmod(du, p);
    return {mulmod(nu, inv, m), k};
}

/// Diagonal entries of the rational diagonalization of H, or empty if singular.
inline std::vector<Rational> diagonalize(const IntMatrix& h) {
    const std::size_t n = h.size();
    RationalMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = h(i, j);
    auto add_var = [&](std::size_t i, std::size_t j, const Rational& f) {
        for (std::size_t k = 0; k < n; ++k) m(k, i) += f * m(k, j);
        for (std::size_t k = 0; k < n; ++k) m(i, k) += f * m(j, k);
    };
    std::vector<Rational> d;
    for (std::size_t i = 0; i < n; ++i) {
        if (m(i, i) == 0) {
            std::size_t j = i + 1;
            while (j < n && m(i, j) == 0) ++j;
            if (j == n) return {};
            // m(j,j) + 2 m(i,j) and m(j,j) - 2 m(i,j) cannot both vanish
            add_var(i, j, m(j, j) + 2 * m(i, j) != 0 ? Rational(1) : Rational(-1));
        }
        for (std::size_t j = i + 1; j < n; ++j)
            if (m(i, j) != 0) add_var(j, i, -m(i, j) / m(i, i));
        d.push_back(m(i, i));
    }
    return d;
}

}  // namespace detail

/// Hilbert symbol (a, b)_p of nonzero rationals.
inline int hilbert_symbol(const Rational& a, const Rational& b, unsigned long p) {
    using namespace detail;
    if (a == 0 || b == 0) throw DivisionByZero("Hilbert symbol of zero");
    if (p == 2) {
        const auto [u, alpha] = split_unit(a, 2, 8);
        const auto [v, beta] = split_unit(b, 2, 8);
        auto eps = [](u64 x) { return static_cast<long>(((x - 1) / 2) & 1); };
        auto omega = [](u64 x) { return static_cast<long>(((x * x - 1) / 8) & 1); };
        const long e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return (e & 1) ? -1 : 1;
    }
    const auto [u, alpha] = split_unit(a, p, p);
    const auto [v, beta] = split_unit(b, p, p);
    int s = ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2 == 1) ? -1 : 1;
    if (beta & 1) s *= legendre(u, p);
    if (alpha & 1) s *= legendre(v, p);
    return s;
}

/// True when the nonzero rational a is a square in Q_p.
inline bool is_padic_square(const Rational& a, unsigned long p) {
    using namespace detail;
    if (p == 2) {
        const auto [u, k] = split_unit(a, 2, 8);
        return (k & 1) == 0 && u == 1;
    }
    const auto [u, k] = split_unit(a, p, p);
    return (k & 1) == 0 && legendre(u, p) == 1;
}

/// Classical decision: diagonalize over Q, then apply the criteria in terms of
/// the discriminant d and the Hasse invariant eps = prod_{i<j} (a_i, a_j).
inline Verdict decide_isotropic_oracle(const QuadForm& q, unsigned long p) {
    detail::require_prime(p);
    const std::vector<Rational> a = detail::diagonalize(q.hessian());
    if (a.empty()) return Verdict::Degenerate;
    const std::size_t n = a.size();
    if (n == 1) return Verdict::Anisotropic;
    if (n >= 5) return Verdict::Isotropic;
    Rational d = 1;
    for (const auto& x : a) d *= x;
    if (n == 2) return is_padic_square(-d, p) ? Verdict::Isotropic : Verdict::Anisotropic;
    int eps = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) eps *= hilbert_symbol(a[i], a[j], p);
    if (n == 3) return hilbert_symbol(-1, -d, p) == eps ? Verdict::Isotropic : Verdict::Anisotropic;
    const bool obstructed = is_padic_square(d, p) && eps != hilbert_symbol(-1, -1, p);
    return obstructed ? Verdict::Anisotropic : Verdict::Isotropic;
}

}  // namespace qfiso::padic
