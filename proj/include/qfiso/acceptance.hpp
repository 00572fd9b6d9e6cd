#pragma once

// The acceptance suite: each criterion is a self-contained check that reports
// PASS or FAIL with a one-line detail. Shared by the acceptance test binary
// and the `verify` subcommand.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qfiso/exact/matrix.hpp"
#include "qfiso/global/rho_global.hpp"
#include "qfiso/local/rho_local.hpp"
#include "qfiso/padic/monte_carlo.hpp"
#include "qfiso/padic/oracle.hpp"
#include "qfiso/real/goe_mc.hpp"
#include "qfiso/real/rho_infinity.hpp"
#include "qfiso/version.hpp"

namespace qfiso::acceptance {

struct Options {
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double budget_seconds = 0;
};

namespace detail {

inline std::string fmt(double x, int prec = 6) {
    std::ostringstream o;
    o.precision(prec);
    o << x;
    return o.str();
}

/// A nondegenerate test form: each coefficient is u * p^k with u uniform in
/// [-50, 50] and k in {0, 0, 0, 1, 2, 3}, so that deep reductions occur often.
inline padic::QuadForm random_test_form(int n, unsigned long p, SplitMix64& rng) {
    const std::size_t count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2;
    for (;;) {
        std::vector<Integer> c;
        for (std::size_t k = 0; k < count; ++k) {
            Integer u = static_cast<long>(rng.below(101)) - 50;
            const std::uint64_t e = rng.below(6);
            if (e >= 3) u *= pow_int(Integer(p), static_cast<unsigned long>(e - 2));
            c.push_back(u);
        }
        padic::QuadForm q(n, c);
        if (q.discriminant() != 0) return q;
    }
}

inline RatFunc parse(const std::string& s) { return RatFuncParser::parse(s); }

/// Table entry t equals the expected expression string.
inline bool entry_matches(const local::TableEntry& t, const std::string& expected, std::string& why) {
    if (!t.is_defined()) {
        why += t.name() + " undefined; ";
        return false;
    }
    if (!(t.get() == parse(expected))) {
        why += t.name() + " = " + t.get().to_string() + " != " + expected + "; ";
        return false;
    }
    return true;
}

inline PiLaurent q2(long a_num, long a_den, long b_num, long b_den, int sqrt_pi_exponent = 0) {
    return PiLaurent(QSqrt2(make_rational(a_num, a_den), make_rational(b_num, b_den)), sqrt_pi_exponent);
}

/// Exact a_ij by nested adaptive Gauss-Kronrod quadrature of
///   int_0^inf int_0^inf sign(y - x) x^(i-1) y^(j-1) exp(-(x^2 + y^2)/4) dx dy.
/// The integrand is negligible beyond 40; the inner integral is split at y = x.
inline double debruijn_entry_quadrature(int i, int j) {
    using boost::math::quadrature::gauss_kronrod;
    constexpr double kEnd = 40.0;
    constexpr double kTol = 1e-13;
    auto weight = [](double t, int k) { return std::pow(t, k - 1) * std::exp(-t * t / 4); };
    auto outer = [&](double x) {
        const double above = gauss_kronrod<double, 31>::integrate([&](double y) { return weight(y, j); }, x, kEnd, 15, kTol);
        const double below =
            x > 0 ? gauss_kronrod<double, 31>::integrate([&](double y) { return weight(y, j); }, 0.0, x, 15, kTol) : 0.0;
        return weight(x, i) * (above - below);
    };
    return gauss_kronrod<double, 31>::integrate(outer, 0.0, kEnd, 15, kTol);
}

}  // namespace detail

/// Derived rho_n(p) equals the closed form for 1 <= n <= 12.
inline CriterionResult symbolic_local_identity(const Options&) {
    CriterionResult r{1, "symbolic local identity", true, "", 0, 1};
    for (int n = 1; n <= 12; ++n) {
        const RatFunc d = local::rho_local_derived(n), c = local::rho_local_closed(n);
        if (!(d == c) || !RatFunc::cross_equal(d, c)) {
            r.passed = false;
            r.detail += "n=" + std::to_string(n) + " differs; ";
        }
    }
    if (r.passed) r.detail = "rho_n(p) derived == closed form for n=1..12";
    return r;
}

/// Every defined entry of the alpha, beta, gamma and case-density tables.
inline CriterionResult local_tables_match(const Options&) {
    CriterionResult r{2, "local tables", true, "", 0, 1};
    std::string why;
    int checked = 0;
    auto expect = [&](const local::TableEntry& t, const std::string& s) {
        ++checked;
        if (!detail::entry_matches(t, s, why)) r.passed = false;
    };
    auto expect_undefined = [&](const local::TableEntry& t) {
        ++checked;
        if (t.is_defined()) {
            r.passed = false;
            why += t.name() + " should be undefined; ";
        }
    };
    const auto bg2 = local::solve_beta_gamma(2), bg3 = local::solve_beta_gamma(3), bg4 = local::solve_beta_gamma(4);
    expect_undefined(bg2.gamma1);
    expect_undefined(bg3.beta1);
    expect(bg2.gamma2, "0");
    expect(bg3.beta2, "0");
    expect(bg3.gamma1, "0");
    expect(bg3.gamma2, "1/2");
    expect(bg4.beta1, "0");
    expect(bg4.beta2, "(2p+1)/(2p+2)");
    expect(bg4.gamma1, "(p+2)/(2p+2)");
    expect(bg4.gamma2, "1 - (p/(4(p^2+p+1)))");
    expect(local::solve_alpha(1).alpha2, "0");
    const auto a2 = local::solve_alpha(2), a3 = local::solve_alpha(3), a4 = local::solve_alpha(4);
    expect(a2.alpha1, "0");
    expect(a2.alpha2, "1/(2p+2)");
    expect(a3.alpha1, "1/(p+1)");
    expect(a3.alpha2, "(p+2)/(2p+2)");
    expect(a4.alpha1, "1 - (p^3/(2(p+1)(p^2+p+1)))");
    expect(a4.alpha2, "1 - (p^3/(4(p+1)(p^3+p^2+p+1)))");
    for (int n = 5; n <= 8; ++n) {
        const auto bg = local::solve_beta_gamma(n);
        const auto a = local::solve_alpha(n);
        for (const auto* t : {&bg.beta1, &bg.beta2, &bg.gamma1, &bg.gamma2, &a.alpha1, &a.alpha2}) expect(*t, "1");
    }
    // case densities against their closed forms with n substituted
    for (int n = 1; n <= 8; ++n) {
        const auto d = local::case_densities(n);
        const std::string N = std::to_string(n), T = std::to_string(n * (n + 1) / 2),
                          L = std::to_string(n * (n - 1) / 2), M = std::to_string((n - 1) * (n - 2) / 2);
        auto check = [&](const RatFunc& v, const std::string& s, const char* name) {
            ++checked;
            if (!(v == detail::parse(s))) {
                r.passed = false;
                why += std::string(name) + "^(" + N + ") mismatch; ";
            }
        };
        check(d.xi[1], "(p^" + N + "-1)(p^" + N + "-p)/(2(p+1)p^" + T + ")", "xi1");
        check(d.xi[2], "(p^" + N + "-1)/p^" + T, "xi2");
        check(d.xi[0], "1 - (p^" + N + "-1)(p^" + N + "-p)/(2(p+1)p^" + T + ") - (p^" + N + "-1)/p^" + T + " - 1/p^" + T,
              "xi0");
        check(d.eta[1], "(p^" + std::to_string(n - 1) + "-1)/(2p^" + L + ")", "eta1");
        check(d.eta[2], "1/p^" + L, "eta2");
        check(d.nu[1], "1/p^" + M, "nu1");
        check(d.nu[2], "0", "nu2");
    }
    r.detail = r.passed ? std::to_string(checked) + " table entries match" : why;
    return r;
}

/// GOE densities: exact closed forms and the printed ten decimals for n = 1..8.
inline CriterionResult goe_closed_forms_exact(const Options&) {
    CriterionResult r{3, "GOE table exact", true, "", 0, 5};
    using detail::q2;
    const std::vector<PiLaurent> expected = {
        PiLaurent(0),
        q2(0, 1, 1, 2),
        q2(1, 2, 0, 1) + q2(0, 1, 1, 1, -2),
        q2(1, 2, 1, 8) + q2(1, 1, 0, 1, -2),
        q2(3, 4, 0, 1) + q2(2, 3, 1, 12, -2),
        q2(3, 4, 7, 64) + q2(37, 48, -1, 3, -2),
        q2(7, 8, 0, 1) + q2(47, 120, 109, 480, -2) - q2(0, 1, 32, 45, -4),
        q2(7, 8, 9, 256) + q2(2377, 3840, -53, 480, -2) - q2(32, 45, 0, 1, -4),
    };
    const std::vector<std::string> decimals = {"0.0000000000", "0.7071067811", "0.9501581580", "0.9950865814",
                                               "0.9997197706", "0.9999907596", "0.9999998239", "0.9999999980"};
    for (int n = 1; n <= 8; ++n) {
        const PiLaurent v = real::rho_infinity_exact(n);
        if (!(v == expected[static_cast<std::size_t>(n - 1)])) {
            r.passed = false;
            r.detail += "n=" + std::to_string(n) + " exact " + v.pretty() + "; ";
        }
        const std::string dec = pilaurent_to_decimal(v, 10).text;
        if (dec != decimals[static_cast<std::size_t>(n - 1)]) {
            r.passed = false;
            r.detail += "n=" + std::to_string(n) + " decimal " + dec + "; ";
        }
    }
    if (r.passed) r.detail = "8 closed forms and 80 certified digits match";
    return r;
}

/// rho_n(infinity) is a polynomial in 1/pi of degree <= floor((n+1)/4) over Q(sqrt 2).
inline CriterionResult inverse_pi_structure(const Options&) {
    CriterionResult r{4, "polynomial in 1/pi", true, "", 0, 10};
    for (int n = 1; n <= 12; ++n) {
        const PiLaurent v = real::rho_infinity_exact(n);
        for (const auto& [k, c] : v.terms()) {
            (void)c;
            if (k > 0 || k % 2 != 0 || -k / 2 > (n + 1) / 4) {
                r.passed = false;
                r.detail += "n=" + std::to_string(n) + " has sqrt(pi)^" + std::to_string(k) + "; ";
            }
        }
    }
    if (r.passed) r.detail = "n=1..12 within degree floor((n+1)/4)";
    return r;
}

/// rho_4 for GOE: certified enclosure narrower than 1e-6 that rounds to 0.983.
inline CriterionResult headline_rho4(const Options&) {
    CriterionResult r{5, "global rho_4 GOE", false, "", 0, 30};
    const global::GlobalResult g = global::rho_global(4, real::RealModel::Goe);
    const Interval& e = *g.enclosure;
    const double lo = e.lower().to_double(), hi = e.upper().to_double();
    const double width = e.width_double();
    // both ends round to three decimals as 0.983
    const bool rounds = lo >= 0.9825 && hi < 0.9835;
    r.passed = width < 1e-6 && rounds;
    const auto [ls, us] = e.bounds_strings(12);
    r.detail = "[" + ls + ", " + us + "] width " + detail::fmt(width, 3) + " cutoff " +
               std::to_string(g.product->cutoff);
    return r;
}

/// Recursive algorithm agrees with the Hilbert-symbol oracle.
inline CriterionResult oracle_equivalence(const Options& opt) {
    CriterionResult r{6, "oracle equivalence", true, "", 0, 60};
    long disagreements = 0, total = 0;
    for (int n = 2; n <= 5; ++n)
        for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
            SplitMix64 rng(stream_key(opt.seed, {6, static_cast<std::uint64_t>(n), p}));
            for (int s = 0; s < 10'000; ++s) {
                const padic::QuadForm q = detail::random_test_form(n, p, rng);
                const padic::Decision d = padic::decide_isotropic_recursive(q, p);
                const padic::Verdict o = padic::decide_isotropic_oracle(q, p);
                ++total;
                const bool bad_witness = d.verdict == padic::Verdict::Isotropic && !padic::verify_witness(q, p, *d.witness);
                if (d.verdict != o || bad_witness) {
                    if (disagreements < 3)
                        r.detail += q.to_string() + " p=" + std::to_string(p) + ": " + padic::to_string(d.verdict) +
                                    " vs " + padic::to_string(o) + "; ";
                    ++disagreements;
                }
            }
        }
    r.passed = disagreements == 0;
    r.detail = std::to_string(total) + " forms, " + std::to_string(disagreements) + " disagreements" +
               (r.detail.empty() ? "" : ": " + r.detail);
    return r;
}

/// Monte Carlo over Haar-random Z_p forms matches rho_n(p).
inline CriterionResult local_monte_carlo(const Options& opt) {
    CriterionResult r{7, "local Monte Carlo", true, "", 0, 60};
    double worst = 0;
    for (int n = 2; n <= 4; ++n)
        for (unsigned long p : {2UL, 3UL, 5UL}) {
            const auto m = padic::estimate_rho_local_mc(n, p, 100'000, stream_key(opt.seed, {7}), 64, opt.threads);
            const double z = std::fabs(m.z_score);
            const double indet = static_cast<double>(m.indeterminate) / static_cast<double>(m.samples);
            worst = std::max(worst, z);
            if (!(z < 4) || !(indet < 1e-3)) {
                r.passed = false;
                r.detail += "n=" + std::to_string(n) + " p=" + std::to_string(p) + " z=" + detail::fmt(m.z_score, 3) +
                            " indeterminate=" + std::to_string(m.indeterminate) + "; ";
            }
        }
    if (r.passed) r.detail = "9 cases, max |z| = " + detail::fmt(worst, 3);
    return r;
}

/// Every nondegenerate 5-variable form is isotropic with a verified witness.
inline CriterionResult five_variables_isotropic(const Options& opt) {
    CriterionResult r{8, "n=5 always isotropic", true, "", 0, 30};
    long failures = 0;
    for (unsigned long p : {2UL, 3UL}) {
        SplitMix64 rng(stream_key(opt.seed, {8, p}));
        for (int s = 0; s < 10'000; ++s) {
            const padic::QuadForm q = detail::random_test_form(5, p, rng);
            const padic::Decision d = padic::decide_isotropic_recursive(q, p);
            if (d.verdict != padic::Verdict::Isotropic || !d.witness || !padic::verify_witness(q, p, *d.witness)) {
                if (failures < 3) r.detail += q.to_string() + " p=" + std::to_string(p) + "; ";
                ++failures;
            }
        }
    }
    r.passed = failures == 0;
    r.detail = "20000 forms, " + std::to_string(failures) + " failures" + (r.detail.empty() ? "" : ": " + r.detail);
    return r;
}

/// GOE Monte Carlo matches the exact values.
inline CriterionResult goe_monte_carlo(const Options& opt) {
    CriterionResult r{9, "GOE Monte Carlo", true, "", 0, 60};
    const double table[] = {0.7071067811, 0.9501581580, 0.9950865814};
    std::string parts;
    for (int n = 2; n <= 4; ++n) {
        const auto m = real::estimate_rho_infinity_goe_mc(n, 1'000'000, stream_key(opt.seed, {9}), opt.threads);
        const double z = (m.estimate - table[n - 2]) / m.stderr_;
        parts += "n=" + std::to_string(n) + " z=" + detail::fmt(z, 3) + " ";
        if (!(std::fabs(z) < 4)) r.passed = false;
    }
    r.detail = parts;
    return r;
}

/// Uniform model: rho_n^U(infinity) and the global rho_4^U.
inline CriterionResult uniform_model(const Options& opt) {
    CriterionResult r{10, "uniform model", true, "", 0, 90};
    const double reference[] = {0.627, 0.901, 0.982, 0.998};
    for (int n = 2; n <= 5; ++n) {
        const auto m = real::estimate_rho_infinity_uniform_mc(n, 1'000'000, stream_key(opt.seed, {10}), opt.threads);
        r.detail += "n=" + std::to_string(n) + " " + detail::fmt(m.estimate, 5) + " ";
        if (!(std::fabs(m.estimate - reference[n - 2]) < 0.005)) r.passed = false;
    }
    global::GlobalOptions go;
    go.seed = stream_key(opt.seed, {10});
    go.threads = opt.threads;
    const auto g = global::rho_global(4, real::RealModel::Uniform, go);
    r.detail += "global n=4 " + detail::fmt(*g.estimate, 5);
    if (!(std::fabs(*g.estimate - 0.970) < 0.005)) r.passed = false;
    return r;
}

/// Pf(A)^2 = det(A) for random rational skew matrices.
inline CriterionResult pfaffian_property(const Options& opt) {
    CriterionResult r{11, "Pfaffian squared is determinant", true, "", 0, 10};
    SplitMix64 rng(stream_key(opt.seed, {11}));
    int failures = 0;
    for (int k = 0; k < 100; ++k) {
        const std::size_t size = 2 + static_cast<std::size_t>(k % 11);
        real::SkewMatrix<Rational> a(size);
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = i + 1; j < size; ++j)
                a.set(i, j, make_rational(static_cast<long>(rng.below(41)) - 20, static_cast<long>(rng.below(9)) + 1));
        const Rational pf = real::pfaffian(a);
        if (!(pf * pf == determinant(a.dense()))) ++failures;
    }
    r.passed = failures == 0;
    r.detail = "100 matrices of sizes 2-12, " + std::to_string(failures) + " failures";
    return r;
}

/// Exact de Bruijn entries against numeric double integrals.
inline CriterionResult quadrature_cross_check(const Options&) {
    CriterionResult r{12, "quadrature cross-check", true, "", 0, 10};
    const auto a = real::build_debruijn_matrix(6);
    double worst = 0;
    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j) {
            const PiLaurent& exact = a.upper(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
            const double e = exact.to_double();
            const double q = detail::debruijn_entry_quadrature(i, j);
            const double rel = std::fabs(q - e) / std::max(1.0, std::fabs(e));
            worst = std::max(worst, rel);
            if (!(rel < 1e-8)) {
                r.passed = false;
                r.detail += "a" + std::to_string(i) + std::to_string(j) + " exact " + detail::fmt(e, 15) + " quad " +
                            detail::fmt(q, 15) + "; ";
            }
        }
    if (r.passed) r.detail = "15 entries, max relative error " + detail::fmt(worst, 3);
    return r;
}

using Criterion = std::function<CriterionResult(const Options&)>;

inline std::vector<Criterion> all_criteria() {
    return {symbolic_local_identity, local_tables_match, goe_closed_forms_exact,      inverse_pi_structure,
            headline_rho4,           oracle_equivalence, local_monte_carlo, five_variables_isotropic,
            goe_monte_carlo,         uniform_model,      pfaffian_property, quadrature_cross_check};
}

/// Runs one criterion, timing it; exceptions count as failures. A run over
/// the time budget fails.
inline CriterionResult run_criterion(const Criterion& c, const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = c(opt);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.budget_seconds > 0 && r.seconds > r.budget_seconds) {
        r.passed = false;
        r.detail += " (over the " + detail::fmt(r.budget_seconds, 3) + " s budget)";
    }
    return r;
}

/// "PASS [ 3] GOE table exact (0.01 s): detail"
inline std::string format_line(const CriterionResult& r) {
    std::ostringstream o;
    o << (r.passed ? "PASS" : "FAIL") << " [" << (r.id < 10 ? " " : "") << r.id << "] " << r.name << " ("
      << detail::fmt(r.seconds, 3) << " s): " << r.detail;
    return o.str();
}

}  // namespace qfiso::acceptance
