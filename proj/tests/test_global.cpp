#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qfiso/global/euler_product.hpp"
#include "qfiso/global/rho_global.hpp"

using namespace qfiso;
using namespace qfiso::global;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') quoted = !quoted;
        if (c == sep && !quoted) {
            out.push_back(cell);
            cell.clear();
        } else {
            cell += c;
        }
    }
    out.push_back(cell);
    return out;
}

bool contains_value(const Interval& x, long double v) {
    return x.lower().to_double() <= static_cast<double>(v) && static_cast<double>(v) <= x.upper().to_double();
}

}  // namespace

TEST(EulerFactor, SmallPrimes) {
    EXPECT_EQ(rho4_factor(2), make_rational(277, 279));
    EXPECT_EQ(rho4_factor(3), 1 - make_rational(27, 7744));
    EXPECT_EQ(primes_up_to(30), (std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
    EXPECT_TRUE(primes_up_to(1).empty());
}

TEST(EulerProduct, WidthAtDefaultCutoff) {
    const IntervalValue v = euler_product_rho4(10'000, 8);
    EXPECT_EQ(v.cutoff, 10'000);
    EXPECT_LT(v.width(), 1e-8);
    EXPECT_EQ(v.tail_bound, make_rational(1, 400'000'000));
}

TEST(EulerProduct, PartialProductsDecreaseAboveTheLowerBound) {
    const IntervalValue v = euler_product_rho4(10'000, 8);
    const mpfr_prec_t prec = 128;
    Interval prev = partial_euler_product(10, prec);
    for (long cutoff : {100L, 1000L, 10'000L, 40'000L}) {
        const Interval next = partial_euler_product(cutoff, prec);
        EXPECT_TRUE(mpfr_less_p(next.upper().get(), prev.lower().get())) << cutoff;
        EXPECT_TRUE(mpfr_greaterequal_p(next.lower().get(), v.enclosure.lower().get())) << cutoff;
        prev = next;
    }
}

TEST(EulerProduct, RefinementIsNested) {
    const IntervalValue coarse = euler_product_rho4(10'000, 8);
    const IntervalValue fine = euler_product_rho4(20'000, 8);
    EXPECT_TRUE(coarse.enclosure.contains(fine.enclosure));
}

TEST(EulerProduct, AgreesWithLongDoubleProduct) {
    long double prod = 1;
    for (long p : primes_up_to(1'000'000)) {
        const long double x = static_cast<long double>(p);
        prod *= 1 - x * x * x / (4 * (x + 1) * (x + 1) * (x * x * x * x + x * x * x + x * x + x + 1));
    }
    EXPECT_TRUE(contains_value(euler_product_rho4(10'000, 8).enclosure, prod));
}

TEST(EulerProduct, RaisesCutoffForMoreDigits) {
    const IntervalValue v = euler_product_rho4(1000, 9);
    EXPECT_GT(v.cutoff, 1000);
    EXPECT_LT(v.width(), 1e-9);
    EXPECT_THROW(euler_product_rho4(1, 8), Error);
}

TEST(RhoGlobal, SmallNIsZero) {
    for (int n = 1; n <= 3; ++n) {
        const GlobalResult g = rho_global(n, real::RealModel::Goe);
        ASSERT_TRUE(g.exact);
        EXPECT_TRUE(g.exact->is_zero());
    }
}

TEST(RhoGlobal, HeadlineValue) {
    const GlobalResult g = rho_global(4, real::RealModel::Goe);
    ASSERT_TRUE(g.enclosure);
    EXPECT_GE(g.enclosure->lower().to_double(), 0.9825);
    EXPECT_LT(g.enclosure->upper().to_double(), 0.9835);
    EXPECT_LT(g.enclosure->width_double(), 1e-6);
}

TEST(RhoGlobal, LargerNEqualsRealDensity) {
    const GlobalResult g = rho_global(5, real::RealModel::Goe);
    ASSERT_TRUE(g.exact);
    EXPECT_EQ(pilaurent_to_decimal(*g.exact, 10).text, "0.9997197706");
}

TEST(RhoGlobal, UniformModel) {
    GlobalOptions opt;
    opt.seed = 2024;
    const GlobalResult g = rho_global(4, real::RealModel::Uniform, opt);
    ASSERT_TRUE(g.estimate);
    EXPECT_NEAR(*g.estimate, 0.970, 0.005);
}

TEST(Table2, Structure) {
    GlobalOptions opt;
    opt.samples = 20'000;
    std::istringstream csv(table2_csv(opt));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "n,rho_D,uniform_estimate,uniform_stderr,goe_lower,goe_upper");
    int rows = 0;
    while (std::getline(csv, line)) {
        const auto cells = split(line, ',');
        ASSERT_EQ(cells.size(), 6u) << line;
        const int n = std::stoi(cells[0]);
        ++rows;
        if (n <= 3) {
            EXPECT_EQ(cells[1], "0");
            EXPECT_EQ(cells[4], "0");
            EXPECT_EQ(cells[5], "0");
        } else if (n == 4) {
            EXPECT_NE(cells[1].find("prod_p"), std::string::npos);
        } else {
            const std::string d = pilaurent_to_decimal(real::rho_infinity_exact(n), 8).text;
            EXPECT_LE(std::stod(cells[4]), std::stod(d) + 1e-8);
            EXPECT_GE(std::stod(cells[5]), std::stod(d));
        }
    }
    EXPECT_EQ(rows, 6);
}
