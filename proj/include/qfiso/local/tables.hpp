#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "qfiso/exact/ratfunc.hpp"

namespace qfiso::local {

inline constexpr int kMaxVariables = 64;

inline void check_variable_count(int n, int min_n = 1) {
    if (n < min_n || n > kMaxVariables)
        throw Error("number of variables must be in [" + std::to_string(min_n) + ", " +
                    std::to_string(kMaxVariables) + "], got " + std::to_string(n));
}

/// A density that may be undefined (the recursion never reaches it).
/// Reading an undefined entry throws UndefinedEntry.
class TableEntry {
public:
    static TableEntry undefined(std::string name) { return TableEntry(std::move(name), std::nullopt); }
    static TableEntry defined(std::string name, RatFunc v) { return TableEntry(std::move(name), std::move(v)); }

    bool is_defined() const { return value_.has_value(); }
    const std::string& name() const { return name_; }
    const RatFunc& get() const {
        if (!value_) throw UndefinedEntry(name_ + " is undefined");
        return *value_;
    }
    std::string to_string() const { return value_ ? value_->to_string() : "-"; }

private:
    TableEntry(std::string name, std::optional<RatFunc> v) : name_(std::move(name)), value_(std::move(v)) {}

    std::string name_;
    std::optional<RatFunc> value_;
};

/// coefficient * entry, where a zero coefficient never reads the entry.
inline RatFunc weighted(const RatFunc& coefficient, const TableEntry& entry) {
    if (coefficient.is_zero()) return {};
    return coefficient * entry.get();
}

/// Probabilities that a random form mod p is generic (index 0), splits into
/// two conjugate linear factors (index 1) or is a unit times a square (index 2):
/// unconditionally (xi), given the x1^2 coefficient is a unit (eta), and given
/// the restriction to (x1, x2) is irreducible (nu).
struct CaseDensities {
    int n = 0;
    std::array<RatFunc, 3> xi;
    std::array<RatFunc, 3> eta;
    std::array<RatFunc, 3> nu;
};

inline CaseDensities case_densities(int n) {
    check_variable_count(n);
    const RatFunc p = RatFunc::p();
    auto pw = [](long k) { return RatFunc::p_power(k); };
    const long nl = n;
    CaseDensities d;
    d.n = n;
    // primitive forms with one of the two bad reductions, out of p^(n(n+1)/2)
    d.xi[1] = (pw(nl) - 1) * (pw(nl) - p) / (RatFunc(2) * (p + 1) * pw(nl * (nl + 1) / 2));
    d.xi[2] = (pw(nl) - 1) / pw(nl * (nl + 1) / 2);
    d.xi[0] = RatFunc(1) - d.xi[1] - d.xi[2] - pw(-nl * (nl + 1) / 2);

    d.eta[1] = (pw(nl - 1) - 1) / (RatFunc(2) * pw(nl * (nl - 1) / 2));
    d.eta[2] = pw(-nl * (nl - 1) / 2);
    d.eta[0] = RatFunc(1) - d.eta[1] - d.eta[2];

    d.nu[1] = pw(-(nl - 1) * (nl - 2) / 2);
    d.nu[2] = RatFunc(0);
    d.nu[0] = RatFunc(1) - d.nu[1] - d.nu[2];
    return d;
}

/// Isotropy probabilities after one reduction step: beta after a split (Case I)
/// step, gamma after a square (Case II) step; index 1/2 is the case of the
/// reduction that follows.
struct BetaGamma {
    int n = 0;
    TableEntry beta1 = TableEntry::undefined("beta1");
    TableEntry beta2 = TableEntry::undefined("beta2");
    TableEntry gamma1 = TableEntry::undefined("gamma1");
    TableEntry gamma2 = TableEntry::undefined("gamma2");
};

inline BetaGamma solve_beta_gamma(int n) {
    check_variable_count(n, 2);
    const std::string sfx = "^(" + std::to_string(n) + ")";
    BetaGamma r;
    r.n = n;
    r.beta1 = TableEntry::undefined("beta1" + sfx);
    r.beta2 = TableEntry::undefined("beta2" + sfx);
    r.gamma1 = TableEntry::undefined("gamma1" + sfx);
    r.gamma2 = TableEntry::undefined("gamma2" + sfx);

    // beta1 = nu0' + nu1' beta1 with nu' at n-2; anisotropic base at n = 4
    if (n == 4) {
        r.beta1 = TableEntry::defined("beta1" + sfx, 0);
    } else if (n >= 5) {
        const CaseDensities d2 = case_densities(n - 2);
        const RatFunc denom = RatFunc(1) - d2.nu[1];
        if (denom.is_zero()) throw SingularSystem("beta1 fixed point is degenerate at n=" + std::to_string(n));
        r.beta1 = TableEntry::defined("beta1" + sfx, d2.nu[0] / denom);
    }

    // beta2 = nu0'' + nu1'' gamma1 (nu'' at n-1) and
    // gamma1 = eta0' + eta1' beta1 + eta2' beta2 (eta' at n-2); substituting
    // the second into the first leaves one linear equation in beta2.
    if (n == 3) {
        r.beta2 = TableEntry::defined("beta2" + sfx, 0);
        r.gamma1 = TableEntry::defined("gamma1" + sfx, 0);
    } else if (n >= 4) {
        const CaseDensities d1 = case_densities(n - 1);
        const CaseDensities d2 = case_densities(n - 2);
        const RatFunc gamma1_const = d2.eta[0] + weighted(d2.eta[1], r.beta1);
        const RatFunc denom = RatFunc(1) - d1.nu[1] * d2.eta[2];
        if (denom.is_zero()) throw SingularSystem("beta2/gamma1 system is degenerate at n=" + std::to_string(n));
        const RatFunc beta2 = (d1.nu[0] + d1.nu[1] * gamma1_const) / denom;
        r.beta2 = TableEntry::defined("beta2" + sfx, beta2);
        r.gamma1 = TableEntry::defined("gamma1" + sfx, gamma1_const + d2.eta[2] * beta2);
    }

    // (iv) gamma2 = eta0'' + eta1'' gamma1 + eta2'' gamma2 (eta'' at n-1)
    if (n == 2) {
        r.gamma2 = TableEntry::defined("gamma2" + sfx, 0);
    } else {
        const CaseDensities d1 = case_densities(n - 1);
        const RatFunc denom = RatFunc(1) - d1.eta[2];
        if (denom.is_zero()) throw SingularSystem("gamma2 fixed point is degenerate at n=" + std::to_string(n));
        r.gamma2 = TableEntry::defined("gamma2" + sfx, (d1.eta[0] + weighted(d1.eta[1], r.gamma1)) / denom);
    }
    return r;
}

/// Isotropy probabilities alpha1 (Case I) and alpha2 (Case II).
struct Alpha {
    int n = 0;
    TableEntry alpha1 = TableEntry::undefined("alpha1");
    TableEntry alpha2 = TableEntry::undefined("alpha2");
};

/// Solves the 2x2 linear system for (alpha1, alpha2):
///   alpha1 = A1 + c (nu0 + nu1 alpha1 + nu2 alpha2),   c = p^-((n-1)(n-2)/2)
///   alpha2 = A2 + d (eta0 + eta1 alpha1 + eta2 alpha2), d = p^-(n(n-1)/2)
/// where A1, A2 collect the one-step terms. alpha1 at n = 2 and alpha2 at
/// n = 1 are fixed to 0 (anisotropic), and alpha1 at n = 1 is undefined.
inline Alpha solve_alpha(int n) {
    check_variable_count(n);
    const std::string sfx = "^(" + std::to_string(n) + ")";
    Alpha r;
    r.n = n;
    r.alpha1 = TableEntry::undefined("alpha1" + sfx);
    r.alpha2 = TableEntry::undefined("alpha2" + sfx);
    if (n == 1) {
        r.alpha2 = TableEntry::defined("alpha2" + sfx, 0);
        return r;
    }
    const long nl = n;
    const CaseDensities here = case_densities(n);
    const CaseDensities below1 = case_densities(n - 1);
    const BetaGamma bg = solve_beta_gamma(n);
    const RatFunc d = RatFunc::p_power(-nl * (nl - 1) / 2);
    const RatFunc a2_const = below1.xi[0] + weighted(below1.xi[1], bg.gamma1) +
                             weighted(below1.xi[2], bg.gamma2) + d * here.eta[0];
    if (n == 2) {
        // alpha1 = 0, so alpha2 (1 - d eta2) = A2
        const RatFunc denom = RatFunc(1) - d * here.eta[2];
        if (denom.is_zero()) throw SingularSystem("alpha system is degenerate at n=2");
        r.alpha1 = TableEntry::defined("alpha1" + sfx, 0);
        r.alpha2 = TableEntry::defined("alpha2" + sfx, a2_const / denom);
        return r;
    }
    const CaseDensities below2 = case_densities(n - 2);
    const RatFunc c = RatFunc::p_power(-(nl - 1) * (nl - 2) / 2);
    const RatFunc a1_const = below2.xi[0] + weighted(below2.xi[1], bg.beta1) +
                             weighted(below2.xi[2], bg.beta2) + c * here.nu[0];
    // [m11 m12; m21 m22] (alpha1, alpha2) = (a1_const, a2_const)
    const RatFunc m11 = RatFunc(1) - c * here.nu[1];
    const RatFunc m12 = -(c * here.nu[2]);
    const RatFunc m21 = -(d * here.eta[1]);
    const RatFunc m22 = RatFunc(1) - d * here.eta[2];
    const RatFunc det = m11 * m22 - m12 * m21;
    if (det.is_zero()) throw SingularSystem("alpha system is degenerate at n=" + std::to_string(n));
    r.alpha1 = TableEntry::defined("alpha1" + sfx, (a1_const * m22 - m12 * a2_const) / det);
    r.alpha2 = TableEntry::defined("alpha2" + sfx, (m11 * a2_const - m21 * a1_const) / det);
    return r;
}

/// Every density used by the recursion at n variables.
struct LocalTables {
    int n = 0;
    CaseDensities densities;
    BetaGamma beta_gamma;
    Alpha alpha;
};

inline LocalTables local_tables(int n) {
    check_variable_count(n);
    LocalTables t;
    t.n = n;
    t.densities = case_densities(n);
    if (n >= 2) t.beta_gamma = solve_beta_gamma(n);
    t.alpha = solve_alpha(n);
    return t;
}

}  // namespace qfiso::local
