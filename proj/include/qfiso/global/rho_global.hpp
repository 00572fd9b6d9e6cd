#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "qfiso/global/euler_product.hpp"
#include "qfiso/real/goe_mc.hpp"
#include "qfiso/real/rho_infinity.hpp"

namespace qfiso::global {

struct GlobalOptions {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    int digits = 8;
    long cutoff = 10'000;
};

/// Probability that a random integral n-ary form is isotropic.
/// GOE results are certified enclosures; uniform results are Monte Carlo
/// estimates, scaled by the Euler product at n = 4.
struct GlobalResult {
    int n = 0;
    real::RealModel model = real::RealModel::Goe;
    /// Exact value where one exists (0 for n <= 3, rho_n(infinity) for GOE n >= 5).
    std::optional<PiLaurent> exact;
    std::optional<Interval> enclosure;
    std::optional<double> estimate;
    std::optional<double> stderr_;
    /// The Euler product used at n = 4.
    std::optional<IntervalValue> product;
};

inline GlobalResult rho_global(int n, real::RealModel model, const GlobalOptions& opt = {}) {
    if (n < 1) throw Error("n must be at least 1");
    GlobalResult r;
    r.n = n;
    r.model = model;
    const mpfr_prec_t prec = bits_for_digits(2 * opt.digits);
    if (n <= 3) {
        r.exact = PiLaurent(0);
        r.enclosure = Interval::from_long(0, prec);
        return r;
    }
    if (n == 4) r.product = euler_product_rho4(opt.cutoff, opt.digits);
    if (model == real::RealModel::Goe) {
        const PiLaurent local_real = real::rho_infinity_exact(n);
        Interval v = local_real.enclose(prec);
        if (n == 4)
            v *= r.product->enclosure;
        else
            r.exact = local_real;
        r.enclosure = v;
        return r;
    }
    const real::RealMcResult mc = real::estimate_rho_infinity_uniform_mc(n, opt.samples, opt.seed, opt.threads);
    double scale = 1.0;
    if (n == 4) scale = r.product->enclosure.mid_double();
    r.estimate = mc.estimate * scale;
    r.stderr_ = mc.stderr_ * scale;
    return r;
}

/// The summary table as CSV: n, the general formula, the uniform and the GOE value.
inline std::string table2_csv(const GlobalOptions& opt = {}, int max_n = 6) {
    std::ostringstream out;
    out << "n,rho_D,uniform_estimate,uniform_stderr,goe_lower,goe_upper\n";
    for (int n = 1; n <= max_n; ++n) {
        const GlobalResult u = rho_global(n, real::RealModel::Uniform, opt);
        const GlobalResult g = rho_global(n, real::RealModel::Goe, opt);
        std::string formula = n <= 3 ? "0"
                              : n == 4 ? "\"rho_4^D(inf)*prod_p(1 - p^3/(4*(p+1)^2*(p^4+p^3+p^2+p+1)))\""
                                       : "rho_" + std::to_string(n) + "^D(inf)";
        const auto [lo, hi] = g.enclosure->bounds_strings(opt.digits);
        std::ostringstream est, se;
        est.precision(6);
        se.precision(3);
        est << std::fixed << (u.exact ? 0.0 : *u.estimate);
        se << std::scientific << (u.exact ? 0.0 : *u.stderr_);
        out << n << "," << formula << "," << est.str() << "," << se.str() << "," << lo << "," << hi << "\n";
    }
    return out.str();
}

}  // namespace qfiso::global
