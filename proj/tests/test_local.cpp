#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "qfiso/local/rho_local.hpp"
#include "qfiso/local/tables.hpp"

using namespace qfiso;
using namespace qfiso::local;

namespace {

RatFunc parse(const char* s) { return RatFuncParser::parse(s); }

/// A quadratic form over F_p, coefficients c_ij (i <= j) in row-major order.
struct ResidueForm {
    int n;
    long p;
    std::vector<long> c;

    long coeff(int i, int j) const {
        if (i > j) std::swap(i, j);
        return c[static_cast<std::size_t>(i * n - i * (i - 1) / 2 + (j - i))];
    }
    long eval(const std::vector<long>& x) const {
        long s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) s += coeff(i, j) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
        return ((s % p) + p) % p;
    }
    bool is_zero() const {
        for (long v : c)
            if (v) return false;
        return true;
    }
};

template <typename F>
void for_each_vector(int n, long p, F&& f) {
    std::vector<long> x(static_cast<std::size_t>(n), 0);
    for (;;) {
        f(x);
        int i = 0;
        while (i < n && ++x[static_cast<std::size_t>(i)] == p) x[static_cast<std::size_t>(i++)] = 0;
        if (i == n) return;
    }
}

long zero_count(const ResidueForm& q) {
    long count = 0;
    for_each_vector(q.n, q.p, [&](const std::vector<long>& x) { count += q.eval(x) == 0; });
    return count;
}

/// Q = u * L^2 for some unit u and nonzero linear form L.
bool is_unit_times_square(const ResidueForm& q) {
    bool found = false;
    for_each_vector(q.n, q.p, [&](const std::vector<long>& l) {
        if (found) return;
        bool nonzero = false;
        for (long v : l) nonzero = nonzero || v;
        if (!nonzero) return;
        for (long u = 1; u < q.p && !found; ++u) {
            bool match = true;
            for (int i = 0; i < q.n && match; ++i)
                for (int j = i; j < q.n && match; ++j) {
                    const long want = (i == j ? u * l[static_cast<std::size_t>(i)] * l[static_cast<std::size_t>(i)]
                                              : 2 * u * l[static_cast<std::size_t>(i)] * l[static_cast<std::size_t>(j)]) %
                                      q.p;
                    match = want == q.coeff(i, j);
                }
            found = match;
        }
    });
    return found;
}

enum class Kind { Zero, Split, Square, Other };

/// For n <= 3 a nonzero form is a product of conjugate linear factors exactly
/// when its only zeros form a subspace of codimension 2, i.e. there are p^(n-2)
/// of them; no other reduction type has that count.
Kind kind_of(const ResidueForm& q) {
    if (q.is_zero()) return Kind::Zero;
    if (is_unit_times_square(q)) return Kind::Square;
    long pn2 = 1;
    for (int k = 0; k < q.n - 2; ++k) pn2 *= q.p;
    if (q.n >= 2 && zero_count(q) == pn2) return Kind::Split;
    return Kind::Other;
}

struct Counts {
    long total = 0, split = 0, square = 0, zero = 0;
};

/// Tallies reduction kinds over all forms satisfying `keep`.
template <typename Keep>
Counts tally(int n, long p, Keep&& keep) {
    Counts k;
    const int count = n * (n + 1) / 2;
    for_each_vector(count, p, [&](const std::vector<long>& c) {
        ResidueForm q{n, p, c};
        if (!keep(q)) return;
        ++k.total;
        switch (kind_of(q)) {
            case Kind::Zero: ++k.zero; break;
            case Kind::Split: ++k.split; break;
            case Kind::Square: ++k.square; break;
            case Kind::Other: break;
        }
    });
    return k;
}

Rational frac(long a, long b) { return make_rational(a, b); }

}  // namespace

TEST(CaseDensities, FormulasMatchEnumeration) {
    for (int n = 1; n <= 3; ++n)
        for (long p : {2L, 3L}) {
            const CaseDensities d = case_densities(n);
            const Counts all = tally(n, p, [](const ResidueForm&) { return true; });
            EXPECT_EQ(frac(all.split, all.total), d.xi[1].eval(p)) << "n=" << n << " p=" << p;
            EXPECT_EQ(frac(all.square, all.total), d.xi[2].eval(p)) << "n=" << n << " p=" << p;
            EXPECT_EQ(frac(all.zero, all.total), RatFunc::p_power(-n * (n + 1) / 2).eval(p));

            const Counts point = tally(n, p, [](const ResidueForm& q) { return q.coeff(0, 0) != 0; });
            EXPECT_EQ(frac(point.split, point.total), d.eta[1].eval(p)) << "n=" << n << " p=" << p;
            EXPECT_EQ(frac(point.square, point.total), d.eta[2].eval(p)) << "n=" << n << " p=" << p;

            if (n >= 2) {
                const Counts line = tally(n, p, [](const ResidueForm& q) {
                    ResidueForm b{2, q.p, {q.coeff(0, 0), q.coeff(0, 1), q.coeff(1, 1)}};
                    return !b.is_zero() && zero_count(b) == 1;
                });
                EXPECT_EQ(frac(line.split, line.total), d.nu[1].eval(p)) << "n=" << n << " p=" << p;
                EXPECT_EQ(frac(line.square, line.total), d.nu[2].eval(p)) << "n=" << n << " p=" << p;
            }
        }
}

TEST(CaseDensities, Examples) {
    EXPECT_EQ(case_densities(2).xi[1], parse("(p-1)^2/(2p^2)"));
    EXPECT_EQ(case_densities(3).xi[2], parse("(p^3-1)/p^6"));
}

TEST(CaseDensities, SumsAndRange) {
    for (int n = 1; n <= 12; ++n) {
        const CaseDensities d = case_densities(n);
        const long nl = n;
        EXPECT_EQ(d.xi[0] + d.xi[1] + d.xi[2] + RatFunc::p_power(-nl * (nl + 1) / 2), RatFunc(1));
        EXPECT_EQ(d.eta[0] + d.eta[1] + d.eta[2], RatFunc(1));
        EXPECT_EQ(d.nu[0] + d.nu[1] + d.nu[2], RatFunc(1));
        EXPECT_TRUE(d.nu[2].is_zero());
        for (long p : {2L, 3L, 5L, 7L, 11L})
            for (const auto* arr : {&d.xi, &d.eta, &d.nu})
                for (const RatFunc& f : *arr) {
                    const Rational v = f.eval(p);
                    EXPECT_GE(v, 0);
                    EXPECT_LE(v, 1);
                }
    }
}

TEST(Tables, PublishedEntries) {
    EXPECT_EQ(solve_beta_gamma(4).beta2.get(), parse("(2p+1)/(2p+2)"));
    EXPECT_EQ(solve_beta_gamma(4).gamma1.get(), parse("(p+2)/(2p+2)"));
    EXPECT_EQ(solve_beta_gamma(5).beta1.get(), RatFunc(1));
    EXPECT_EQ(solve_alpha(3).alpha1.get(), parse("1/(p+1)"));
    EXPECT_EQ(solve_alpha(2).alpha2.get(), parse("1/(2p+2)"));
    EXPECT_EQ(solve_alpha(4).alpha2.get(), parse("1 - (p^3/(4(p+1)(p^3+p^2+p+1)))"));
}

TEST(Tables, FiveOrMoreVariablesSolveToOne) {
    for (int n = 5; n <= 12; ++n) {
        const LocalTables t = local_tables(n);
        for (const TableEntry* e : {&t.beta_gamma.beta1, &t.beta_gamma.beta2, &t.beta_gamma.gamma1,
                                    &t.beta_gamma.gamma2, &t.alpha.alpha1, &t.alpha.alpha2})
            EXPECT_EQ(e->get(), RatFunc(1)) << n << " " << e->name();
    }
}

TEST(Tables, UndefinedEntriesThrow) {
    const BetaGamma bg3 = solve_beta_gamma(3);
    EXPECT_FALSE(bg3.beta1.is_defined());
    EXPECT_THROW(bg3.beta1.get(), UndefinedEntry);
    EXPECT_FALSE(solve_beta_gamma(2).gamma1.is_defined());
    EXPECT_FALSE(solve_alpha(1).alpha1.is_defined());
    EXPECT_EQ(bg3.beta1.to_string(), "-");
}

TEST(Tables, EntriesAreProbabilities) {
    for (int n = 2; n <= 12; ++n) {
        const LocalTables t = local_tables(n);
        for (const TableEntry* e : {&t.beta_gamma.beta1, &t.beta_gamma.beta2, &t.beta_gamma.gamma1,
                                    &t.beta_gamma.gamma2, &t.alpha.alpha1, &t.alpha.alpha2}) {
            if (!e->is_defined()) continue;
            for (long p : {2L, 3L, 5L, 7L, 11L}) {
                const Rational v = e->get().eval(p);
                EXPECT_GE(v, 0) << e->name();
                EXPECT_LE(v, 1) << e->name();
            }
        }
    }
}

TEST(RhoLocal, ClosedForms) {
    EXPECT_EQ(rho_local_closed(1), RatFunc(0));
    EXPECT_EQ(rho_local_closed(2), parse("1/2"));
    EXPECT_EQ(rho_local_closed(3), parse("1 - p/(2(p+1)^2)"));
    EXPECT_EQ(rho_local_closed(4), parse("1 - p^3/(4(p+1)^2(p^4+p^3+p^2+p+1))"));
    EXPECT_EQ(rho_local_closed(6), RatFunc(1));
    EXPECT_EQ(rho_local_closed(9), RatFunc(1));
    EXPECT_EQ(rho_local_closed(4).eval(2), make_rational(277, 279));
    EXPECT_EQ(rho_local_closed(1).eval(1009), 0);
}

TEST(RhoLocal, DerivedEqualsClosed) {
    for (int n = 1; n <= 12; ++n) {
        EXPECT_TRUE(RatFunc::cross_equal(rho_local_derived(n), rho_local_closed(n))) << n;
        EXPECT_EQ(rho_local_derived(n), rho_local_closed(n)) << n;
    }
}

TEST(RhoLocal, StrictlyBetweenZeroAndOneAndIncreasing) {
    for (int n = 2; n <= 4; ++n)
        for (long p : {2L, 3L, 5L, 7L, 11L, 101L}) {
            const Rational v = rho_local_derived(n).eval(p);
            EXPECT_GT(v, 0);
            EXPECT_LT(v, 1);
            EXPECT_LT(v, rho_local_derived(n + 1).eval(p));
        }
}

TEST(RhoLocal, TendsToOneForLargePrimes) {
    for (int n = 3; n <= 12; ++n) {
        const RatFunc f = rho_local_derived(n);
        EXPECT_EQ(f.numerator().degree(), f.denominator().degree()) << n;
        EXPECT_EQ(f.numerator().leading(), f.denominator().leading()) << n;
    }
}

TEST(RhoLocal, RejectsBadVariableCount) {
    EXPECT_THROW(rho_local_derived(0), Error);
    EXPECT_THROW(case_densities(kMaxVariables + 1), Error);
}
