#pragma once

#include <string>

#include "qfiso/local/tables.hpp"

namespace qfiso::local {

/// rho_n(p) assembled from the case densities and the solved recursions:
///   rho = p^N / (p^N - 1) * (xi0 + xi1 alpha1 + xi2 alpha2),  N = n(n+1)/2.
inline RatFunc rho_local_derived(int n) {
    check_variable_count(n);
    const long nl = n;
    const CaseDensities d = case_densities(n);
    const Alpha a = solve_alpha(n);
    const RatFunc pn = RatFunc::p_power(nl * (nl + 1) / 2);
    return pn / (pn - 1) * (d.xi[0] + weighted(d.xi[1], a.alpha1) + weighted(d.xi[2], a.alpha2));
}

/// The closed form of rho_n(p) together with its conventional display.
struct ClosedForm {
    RatFunc value;
    std::string display;
};

inline ClosedForm rho_local_closed_form(int n) {
    check_variable_count(n);
    const RatFunc p = RatFunc::p();
    switch (n) {
        case 1:
            return {RatFunc(0), "0"};
        case 2:
            return {RatFunc(1) / RatFunc(2), "1/2"};
        case 3:
            return {RatFunc(1) - p / (RatFunc(2) * (p + 1) * (p + 1)), "1 - p/(2*(p+1)^2)"};
        case 4: {
            const RatFunc p2 = p * p, p3 = p2 * p, p4 = p3 * p;
            return {RatFunc(1) - p3 / (RatFunc(4) * (p + 1) * (p + 1) * (p4 + p3 + p2 + p + 1)),
                    "1 - p^3/(4*(p+1)^2*(p^4+p^3+p^2+p+1))"};
        }
        default:
            return {RatFunc(1), "1"};
    }
}

inline RatFunc rho_local_closed(int n) { return rho_local_closed_form(n).value; }

}  // namespace qfiso::local
