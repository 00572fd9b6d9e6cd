#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfiso/padic/quad_form.hpp"

namespace qfiso::padic {

namespace detail {

using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m); }

inline u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

/// Inverse mod a prime.
inline u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

inline u64 negmod(u64 a, u64 p) { return a == 0 ? 0 : p - a; }

inline u64 residue(const Integer& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }

/// Legendre symbol (a/p) in {-1, 0, 1} for odd prime p.
inline int legendre(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Square root of a quadratic residue mod an odd prime (Tonelli-Shanks);
/// returns the smaller of the two roots.
inline u64 sqrtmod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (legendre(z, p) != -1) ++z;
    u64 m = static_cast<u64>(s);
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return std::min(r, p - r);
}

inline bool is_prime(u64 p) {
    if (p < 2) return false;
    for (u64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

using Rows = std::vector<std::vector<u64>>;

/// Row-reduces in place over F_p; returns the pivot column of each nonzero row
/// (zero rows are removed).
inline std::vector<std::size_t> rref(Rows& rows, u64 p) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t k = r;
        while (k < rows.size() && rows[k][c] == 0) ++k;
        if (k == rows.size()) continue;
        std::swap(rows[r], rows[k]);
        const u64 inv = invmod(rows[r][c], p);
        for (auto& v : rows[r]) v = mulmod(v, inv, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const u64 f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] = (rows[i][j] + p - mulmod(f, rows[r][j], p)) % p;
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

/// Basis of the null space of a square matrix over F_p.
inline Rows kernel(Rows m, u64 p) {
    const std::size_t k = m.size();
    const std::vector<std::size_t> pivots = rref(m, p);
    std::vector<bool> is_pivot(k, false);
    for (auto c : pivots) is_pivot[c] = true;
    Rows basis;
    for (std::size_t f = 0; f < k; ++f) {
        if (is_pivot[f]) continue;
        std::vector<u64> v(k, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = negmod(m[r][f], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline void require_prime(unsigned long p) {
    if (p >= (1UL << 31)) throw NotPrime("primes must be below 2^31, got " + std::to_string(p));
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
}

}  // namespace detail

enum class ModPTag { Imprimitive, CaseI, CaseII, Generic };

inline std::string to_string(ModPTag t) {
    switch (t) {
        case ModPTag::Imprimitive: return "Imprimitive";
        case ModPTag::CaseI: return "CaseI";
        case ModPTag::CaseII: return "CaseII";
        case ModPTag::Generic: return "Generic";
    }
    return "?";
}

/// a x^2 + b x y + c y^2 with coefficients reduced mod p.
struct BinaryForm {
    unsigned long a = 0, b = 0, c = 0;
};

/// Reduction type of a form mod p, restricted to the variables [first, n).
///
/// `change` is a unimodular integer matrix U acting only on those variables
/// such that Q(U y) mod p depends on y_first, ..., y_{first+rank-1} alone.
struct ModPClass {
    ModPTag tag = ModPTag::Generic;
    int rank = 0;
    std::size_t first = 0;
    IntMatrix change;
    /// CaseI: the irreducible binary form in (y_first, y_{first+1}).
    std::optional<BinaryForm> binary;
    /// CaseII: original variable that becomes y_first.
    std::optional<std::size_t> distinguished;
    /// Generic: x with Q(x) = 0 mod p and some dQ/dx_k(x) != 0 mod p, entries in [0, p).
    std::optional<std::vector<Integer>> smooth_zero;
};

namespace detail {

/// Smooth zero mod an odd p of the nondegenerate form y^t S y / 2, S of size r >= 2.
inline std::vector<u64> smooth_zero_odd(Rows s, u64 p) {
    const std::size_t r = s.size();
    Rows basis(r, std::vector<u64>(r, 0));  // columns of P, stored as basis[col][row]
    for (std::size_t i = 0; i < r; ++i) basis[i][i] = 1;
    auto swap_var = [&](std::size_t i, std::size_t j) {
        std::swap(s[i], s[j]);
        for (auto& row : s) std::swap(row[i], row[j]);
        std::swap(basis[i], basis[j]);
    };
    // var i += f * var j, i.e. column/row operation col_i += f col_j
    auto add_var = [&](std::size_t i, std::size_t j, u64 f) {
        for (std::size_t k = 0; k < r; ++k) s[k][i] = (s[k][i] + mulmod(f, s[k][j], p)) % p;
        for (std::size_t k = 0; k < r; ++k) s[i][k] = (s[i][k] + mulmod(f, s[j][k], p)) % p;
        for (std::size_t k = 0; k < r; ++k) basis[i][k] = (basis[i][k] + mulmod(f, basis[j][k], p)) % p;
    };
    for (std::size_t i = 0; i < r; ++i) {
        if (s[i][i] == 0) {
            std::size_t j = i + 1;
            while (j < r && s[j][j] == 0) ++j;
            if (j < r) {
                swap_var(i, j);
            } else {
                j = i + 1;
                while (j < r && s[i][j] == 0) ++j;
                if (j == r) throw InternalError("singular reduction in smooth zero search");
                add_var(i, j, 1);
            }
        }
        const u64 inv = invmod(s[i][i], p);
        for (std::size_t j = i + 1; j < r; ++j)
            if (s[i][j] != 0) add_var(j, i, negmod(mulmod(s[i][j], inv, p), p));
    }
    std::vector<u64> z(r, 0);
    const u64 d0 = s[0][0], d1 = s[1][1];
    if (r == 2) {
        // d0 z0^2 + d1 = 0
        const u64 t = mulmod(negmod(d1, p), invmod(d0, p), p);
        if (legendre(t, p) != 1) throw InternalError("binary reduction is anisotropic");
        z[0] = sqrtmod(t, p);
        z[1] = 1;
    } else {
        // d0 z0^2 + d1 z1^2 + d2 = 0; some z0 works because a conic has p + 1 points
        const u64 d2 = s[2][2];
        const u64 inv1 = invmod(d1, p);
        bool found = false;
        for (u64 z0 = 0; z0 < p && !found; ++z0) {
            const u64 t = mulmod(negmod((d2 + mulmod(d0, mulmod(z0, z0, p), p)) % p, p), inv1, p);
            if (legendre(t, p) >= 0) {
                z[0] = z0;
                z[1] = sqrtmod(t, p);
                found = true;
            }
        }
        if (!found) throw InternalError("ternary reduction has no zero");
        z[2] = 1;
    }
    std::vector<u64> y(r, 0);
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t k = 0; k < r; ++k) y[k] = (y[k] + mulmod(basis[c][k], z[c], p)) % p;
    return y;
}

inline bool is_smooth_zero(const QuadForm& q, const std::vector<Integer>& x, u64 p) {
    if (residue(q.evaluate(x), p) != 0) return false;
    for (const auto& g : q.gradient(x))
        if (residue(g, p) != 0) return true;
    return false;
}

/// Smooth zero mod 2 by search over vectors supported on the first r block variables.
inline std::vector<Integer> smooth_zero_two(const QuadForm& q, std::size_t first, int r) {
    if (r > 24) throw SizeTooLarge("smooth zero search mod 2 limited to 24 variables");
    std::vector<Integer> y(q.size(), 0);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
        for (int k = 0; k < r; ++k) y[first + static_cast<std::size_t>(k)] = (mask >> k) & 1;
        if (is_smooth_zero(q, y, 2)) return y;
    }
    throw InternalError("no smooth zero mod 2 for a generic reduction");
}

}  // namespace detail

/// Classifies the reduction of Q mod p on the variables [first, n), assuming
/// Q mod p does not involve the variables before `first`.
///
/// The subspace W of directions v with Q(x + v) = Q(x) mod p for all x is
/// computed (the kernel of H mod p for odd p; for p = 2 the zeros of Q inside
/// the kernel of the polar form). With r = dim of the block minus dim W, the
/// reduction is Imprimitive for r = 0, CaseII for r = 1, CaseI for an
/// anisotropic binary reduction (r = 2) and Generic otherwise.
inline ModPClass analyze_mod_p(const QuadForm& q, unsigned long p, std::size_t first = 0, bool want_zero = true) {
    using namespace detail;
    const std::size_t n = q.size();
    const std::size_t k = n - first;
    Rows m(k, std::vector<u64>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = residue(q.hessian()(first + i, first + j), p);
    Rows w = kernel(m, p);
    if (p == 2 && !w.empty()) {
        // Q is additive on the radical of the polar form, so its zeros there form a subspace
        std::vector<u64> val(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            u64 s = 0;
            for (std::size_t a = 0; a < k; ++a) {
                if (!w[i][a]) continue;
                s += residue(q.coeff(first + a, first + a), 2);
                for (std::size_t b = a + 1; b < k; ++b)
                    if (w[i][b]) s += residue(q.coeff(first + a, first + b), 2);
            }
            val[i] = s & 1;
        }
        std::size_t odd = w.size();
        for (std::size_t i = 0; i < w.size(); ++i)
            if (val[i]) {
                odd = i;
                break;
            }
        if (odd != w.size()) {
            Rows zeros;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i == odd) continue;
                if (val[i]) {
                    std::vector<u64> v(k);
                    for (std::size_t a = 0; a < k; ++a) v[a] = w[i][a] ^ w[odd][a];
                    zeros.push_back(std::move(v));
                } else {
                    zeros.push_back(w[i]);
                }
            }
            w = std::move(zeros);
        }
    }
    const std::vector<std::size_t> pivots = rref(w, p);
    std::vector<bool> is_pivot(k, false);
    for (auto c : pivots) is_pivot[c] = true;

    ModPClass cls;
    cls.first = first;
    cls.rank = static_cast<int>(k - w.size());
    // columns: complementary unit vectors first, then the reduced basis of W
    cls.change = IntMatrix::identity(n);
    std::size_t col = first;
    for (std::size_t c = 0; c < k; ++c) {
        if (is_pivot[c]) continue;
        for (std::size_t a = 0; a < k; ++a) cls.change(first + a, col) = a == c ? 1 : 0;
        if (cls.rank == 1) cls.distinguished = first + c;
        ++col;
    }
    for (const auto& row : w) {
        for (std::size_t a = 0; a < k; ++a) cls.change(first + a, col) = row[a];
        ++col;
    }

    if (cls.rank == 0) {
        cls.tag = ModPTag::Imprimitive;
        return cls;
    }
    if (cls.rank == 1) {
        cls.tag = ModPTag::CaseII;
        return cls;
    }
    const QuadForm t = q.substitute(cls.change);
    if (cls.rank == 2) {
        BinaryForm b{residue(t.coeff(first, first), p), residue(t.coeff(first, first + 1), p),
                     residue(t.coeff(first + 1, first + 1), p)};
        bool anisotropic;
        if (p == 2) {
            anisotropic = b.a == 1 && b.b == 1 && b.c == 1;
        } else {
            const u64 disc = (mulmod(b.b, b.b, p) + p - mulmod(4 % p, mulmod(b.a, b.c, p), p)) % p;
            anisotropic = legendre(disc, p) == -1;
        }
        if (anisotropic) {
            cls.tag = ModPTag::CaseI;
            cls.binary = b;
            return cls;
        }
    }
    cls.tag = ModPTag::Generic;
    if (want_zero) {
        std::vector<Integer> y;
        if (p == 2) {
            y = smooth_zero_two(t, first, cls.rank);
        } else {
            const std::size_t r = static_cast<std::size_t>(cls.rank);
            Rows s(r, std::vector<u64>(r));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) s[i][j] = residue(t.hessian()(first + i, first + j), p);
            const std::vector<u64> z = smooth_zero_odd(std::move(s), p);
            y.assign(n, 0);
            for (std::size_t i = 0; i < r; ++i) y[first + i] = z[i];
        }
        std::vector<Integer> x = cls.change.apply(y);
        for (auto& v : x) v = residue(v, p);
        if (!is_smooth_zero(q, x, p)) throw InternalError("smooth zero check failed");
        cls.smooth_zero = std::move(x);
    }
    return cls;
}

/// Reduction type of Q mod p.
inline ModPClass classify_mod_p(const QuadForm& q, unsigned long p) {
    detail::require_prime(p);
    return analyze_mod_p(q, p, 0, true);
}

}  // namespace qfiso::padic
