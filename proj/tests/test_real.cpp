#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <vector>

#include "qfiso/exact/matrix.hpp"
#include "qfiso/real/gamma_beta.hpp"
#include "qfiso/real/goe_mc.hpp"
#include "qfiso/real/pfaffian.hpp"
#include "qfiso/real/rho_infinity.hpp"

using namespace qfiso;
using namespace qfiso::real;

namespace {

PiLaurent q2(long an, long ad, long bn, long bd, int k = 0) {
    return PiLaurent(QSqrt2(make_rational(an, ad), make_rational(bn, bd)), k);
}

/// Determinant by Berkowitz's algorithm: ring operations only, so it works
/// over PiLaurent where general division is unavailable.
template <typename T>
T berkowitz_det(const SquareMatrix<T>& a) {
    const std::size_t n = a.size();
    std::vector<T> v = {T(1), T(-a(0, 0))};
    for (std::size_t r = 1; r < n; ++r) {
        // column of the Toeplitz factor: 1, -a_rr, -R C, -R M C, ..., -R M^(r-1) C
        std::vector<T> col = {T(1), T(-a(r, r))};
        std::vector<T> mc(r);
        for (std::size_t i = 0; i < r; ++i) mc[i] = a(i, r);
        for (std::size_t k = 0; k < r; ++k) {
            T rc(0);
            for (std::size_t i = 0; i < r; ++i) rc += a(r, i) * mc[i];
            col.push_back(T(-rc));
            std::vector<T> next(r, T(0));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) next[i] += a(i, j) * mc[j];
            mc = next;
        }
        std::vector<T> w(r + 2, T(0));
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j) w[i] += col[i - j] * v[j];
        v = w;
    }
    return n % 2 ? T(-v[n]) : v[n];
}

}  // namespace

TEST(Gamma, HalfIntegerValues) {
    EXPECT_EQ(gamma_half_exact(5), q2(3, 4, 0, 1, 1));
    EXPECT_EQ(gamma_half_exact(1), PiLaurent::sqrt_pi_power(1));
    EXPECT_EQ(gamma_half_exact(8), PiLaurent(6));
    for (long m = 1; m <= 30; ++m)
        EXPECT_NEAR(gamma_half_exact(m).to_double() / std::tgamma(static_cast<double>(m) / 2), 1.0, 1e-13) << m;
    EXPECT_THROW(gamma_half_exact(0), Error);
}

TEST(IncompleteBeta, BaseCases) {
    EXPECT_EQ(inc_beta_half_exact(1, 2), PiLaurent(QSqrt2::sqrt2()));
    EXPECT_EQ(inc_beta_half_exact(1, 1), q2(1, 2, 0, 1, 2));
    EXPECT_EQ(inc_beta_half_exact(2, 2), PiLaurent(QSqrt2(make_rational(1, 2))));
}

TEST(IncompleteBeta, AgreesWithBoost) {
    for (long i = 1; i <= 12; ++i)
        for (long j = 1; j <= 12; ++j) {
            const double expect = boost::math::beta(i / 2.0, j / 2.0, 0.5);
            EXPECT_NEAR(inc_beta_half_exact(i, j).to_double(), expect, 1e-13 * std::max(1.0, expect)) << i << "," << j;
        }
}

TEST(TwoToHalf, Powers) {
    EXPECT_EQ(two_to_half(3), QSqrt2(Rational(0), Rational(2)));
    EXPECT_EQ(two_to_half(-1), QSqrt2(Rational(0), make_rational(1, 2)));
    EXPECT_EQ(two_to_half(-4), QSqrt2(make_rational(1, 4)));
}

TEST(DeBruijn, SmallEntries) {
    EXPECT_EQ(build_debruijn_matrix(2).upper(0, 1), q2(-2, 1, 2, 1, 1));
    EXPECT_EQ(build_debruijn_matrix(1).upper(0, 1), PiLaurent::sqrt_pi_power(1));
}

TEST(DeBruijn, AntisymmetryAndParity) {
    for (int n = 1; n <= 12; ++n) {
        const auto a = build_debruijn_matrix(n);
        EXPECT_EQ(a.size() % 2, 0u);
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_TRUE(a.get(i, i).is_zero());
            for (std::size_t j = i + 1; j < a.size(); ++j) {
                EXPECT_EQ(a.get(j, i), -a.get(i, j));
                if (j >= static_cast<std::size_t>(n)) continue;
                // odd powers of sqrt(pi) exactly when i + j (1-based) is odd
                for (const auto& [k, c] : a.upper(i, j).terms()) {
                    (void)c;
                    EXPECT_EQ(((k % 2) + 2) % 2, static_cast<int>((i + j + 2) % 2)) << n << ":" << i << "," << j;
                }
            }
        }
    }
}

TEST(Pfaffian, SmallCases) {
    SkewMatrix<Rational> a(4);
    a.set(0, 1, 2);
    a.set(0, 2, 3);
    a.set(0, 3, 5);
    a.set(1, 2, 7);
    a.set(1, 3, 11);
    a.set(2, 3, 13);
    EXPECT_EQ(pfaffian(a), Rational(2 * 13 - 3 * 11 + 5 * 7));
    EXPECT_EQ(pfaffian(SkewMatrix<Rational>(3)), 0);
    EXPECT_EQ(pfaffian(SkewMatrix<Rational>(0)), 1);
    EXPECT_THROW(pfaffian(SkewMatrix<Rational>(kMaxPfaffianSize + 2)), SizeTooLarge);
    EXPECT_THROW(a.set(1, 1, 4), Error);
}

TEST(Pfaffian, SquareIsDeterminantOnRandomMatrices) {
    SplitMix64 rng(stream_key(31, {1}));
    for (std::size_t size = 2; size <= 12; ++size) {
        SkewMatrix<Rational> a(size);
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = i + 1; j < size; ++j)
                a.set(i, j, make_rational(static_cast<long>(rng.below(21)) - 10, static_cast<long>(rng.below(6)) + 1));
        const Rational pf = pfaffian(a);
        EXPECT_EQ(pf * pf, determinant(a.dense()));
        EXPECT_EQ(pf * pf, berkowitz_det(a.dense()));
    }
}

TEST(Pfaffian, SquareIsDeterminantOnDeBruijnMatrices) {
    for (int n = 1; n <= 12; ++n) {
        const auto a = build_debruijn_matrix(n);
        const PiLaurent pf = pfaffian(a);
        EXPECT_EQ(pf * pf, berkowitz_det(a.dense())) << n;
    }
}

TEST(RhoInfinity, TableValues) {
    EXPECT_TRUE(rho_infinity_exact(1).is_zero());
    EXPECT_EQ(rho_infinity_exact(2), q2(0, 1, 1, 2));
    EXPECT_EQ(rho_infinity_exact(4), q2(1, 2, 1, 8) + PiLaurent(1, -2));
    EXPECT_EQ(rho_infinity_exact(7), q2(7, 8, 0, 1) + q2(47, 120, 109, 480, -2) - q2(0, 1, 32, 45, -4));
    EXPECT_EQ(rho_infinity_exact(4).pretty(), "1/2 + sqrt(2)/8 + pi^-1");
}

TEST(RhoInfinity, PolynomialInInversePi) {
    for (int n = 1; n <= 12; ++n)
        for (const auto& [k, c] : rho_infinity_exact(n).terms()) {
            (void)c;
            EXPECT_EQ(k % 2, 0) << n;
            EXPECT_LE(k, 0) << n;
            EXPECT_LE(-k / 2, (n + 1) / 4) << n;
        }
}

TEST(RhoInfinity, IncreasingAndBelowOne) {
    double prev = -1;
    for (int n = 1; n <= 12; ++n) {
        const PiLaurent rho = rho_infinity_exact(n);
        const Interval gap = (PiLaurent(1) - rho).enclose(256);
        EXPECT_GT(mpfr_sgn(gap.lower().get()), 0) << n;
        const double v = rho.to_double();
        if (n >= 2 && n <= 10) {
            EXPECT_GT(v, prev) << n;
        }
        prev = v;
    }
}

TEST(RhoInfinity, PositiveDefiniteProbability) {
    EXPECT_EQ(positive_definite_probability_exact(2), q2(1, 2, -1, 4));
    EXPECT_NEAR(positive_definite_probability_exact(4).to_double(), 0.0024567093, 1e-10);
    for (int n = 1; n <= 10; ++n) EXPECT_NO_THROW(positive_definite_probability_exact(n));
    EXPECT_THROW(rho_infinity_exact(25), SizeTooLarge);
}

TEST(Definiteness, Classification) {
    SymMatrix m(2);
    m.set(0, 0, 1);
    m.set(1, 1, 2);
    m.set(0, 1, 0.5);
    EXPECT_EQ(classify_definiteness(m), Definiteness::Definite);
    m.set(0, 1, 3);
    EXPECT_EQ(classify_definiteness(m), Definiteness::Indefinite);
    m.set(0, 0, 0);
    EXPECT_EQ(classify_definiteness(m), Definiteness::Unresolved);
    SymMatrix neg(3);
    for (std::size_t i = 0; i < 3; ++i) neg.set(i, i, -1.0 - static_cast<double>(i));
    EXPECT_EQ(classify_definiteness(neg), Definiteness::Definite);
}

TEST(GoeSampler, EntryVariances) {
    const std::size_t n = 3;
    const long samples = 1'000'000;
    double diag = 0, off = 0;
    SplitMix64 rng(stream_key(31, {2}));
    PolarNormal normal;
    for (long s = 0; s < samples; ++s) {
        const SymMatrix m = sample_goe(n, rng, normal);
        diag += m.get(1, 1) * m.get(1, 1);
        off += m.get(0, 2) * m.get(0, 2);
    }
    diag /= samples;
    off /= samples;
    // the second moment of N(0, s^2) has standard deviation s^2 sqrt(2/N)
    EXPECT_LT(std::fabs(diag - 2.0), 4 * 2.0 * std::sqrt(2.0 / samples));
    EXPECT_LT(std::fabs(off - 1.0), 4 * 1.0 * std::sqrt(2.0 / samples));
}

TEST(RealMonteCarlo, GoeMatchesTable) {
    EXPECT_EQ(estimate_rho_infinity_goe_mc(1, 1000, 1).estimate, 0.0);
    const auto r3 = estimate_rho_infinity_goe_mc(3, 1'000'000, 41);
    EXPECT_LT(std::fabs(r3.estimate - 0.9501581580), 4 * r3.stderr_);
    const auto r5 = estimate_rho_infinity_goe_mc(5, 1'000'000, 42);
    EXPECT_LT(std::fabs(r5.estimate - 0.9997197706), 4 * r5.stderr_);
}

TEST(RealMonteCarlo, UniformModel) {
    EXPECT_NEAR(estimate_rho_infinity_uniform_mc(2, 1'000'000, 43).estimate, 0.627, 0.005);
    EXPECT_NEAR(estimate_rho_infinity_uniform_mc(4, 1'000'000, 44).estimate, 0.982, 0.005);
}

TEST(RealMonteCarlo, IndependentOfThreadCount) {
    const auto a = estimate_rho_infinity_goe_mc(4, 50'000, 9, 1);
    const auto b = estimate_rho_infinity_goe_mc(4, 50'000, 9, 4);
    EXPECT_EQ(a.indefinite, b.indefinite);
    EXPECT_EQ(a.resamples, b.resamples);
}
