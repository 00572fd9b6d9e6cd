#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfiso/padic/reduce.hpp"

namespace qfiso::padic {

enum class Verdict { Isotropic, Anisotropic, Degenerate, Indeterminate };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Isotropic: return "Isotropic";
        case Verdict::Anisotropic: return "Anisotropic";
        case Verdict::Degenerate: return "Degenerate";
        case Verdict::Indeterminate: return "Indeterminate";
    }
    return "?";
}

struct DecideOptions {
    bool want_witness = true;
    /// When set, the coefficients are only known modulo p^precision; the run
    /// stops with Indeterminate once a classification would need more digits.
    std::optional<long> precision;
};

struct Decision {
    Verdict verdict = Verdict::Indeterminate;
    std::optional<std::vector<Integer>> witness;
    /// 1 + number of strict decreases of the discriminant valuation.
    int passes = 1;
    int steps = 0;
    /// Terminal pattern: "generic" for Isotropic, the anisotropic base case otherwise.
    std::string pattern;
};

/// True when w is a primitive integer vector with Q(w) = 0 mod p^(2v+1), v the
/// least valuation of a partial derivative at w; such a zero lifts to Z_p.
inline bool verify_witness(const QuadForm& q, unsigned long p, const std::vector<Integer>& w) {
    if (w.size() != q.size()) return false;
    Integer g = 0;
    for (const auto& x : w) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0 || mpz_divisible_ui_p(g.get_mpz_t(), p)) return false;
    long v = -1;
    for (const auto& d : q.gradient(w)) {
        if (d == 0) continue;
        const long vd = valuation(d, p);
        if (v < 0 || vd < v) v = vd;
    }
    if (v < 0) return false;
    const Integer value = q.evaluate(w);
    if (value == 0) return true;
    return valuation(value, p) >= 2 * v + 1;
}

namespace detail {

/// Newton lift of a smooth zero mod p of q to a zero mod p^k.
inline std::vector<Integer> hensel_lift(const QuadForm& q, unsigned long p, std::vector<Integer> y, unsigned long k) {
    std::size_t j = q.size();
    const std::vector<Integer> g = q.gradient(y);
    for (std::size_t i = 0; i < g.size(); ++i)
        if (residue(g[i], p) != 0) {
            j = i;
            break;
        }
    if (j == q.size()) throw InternalError("lifting a singular zero");
    const Integer mod = pow_int(Integer(p), k);
    for (int it = 0; it < 128; ++it) {
        Integer f = q.evaluate(y);
        mpz_mod(f.get_mpz_t(), f.get_mpz_t(), mod.get_mpz_t());
        if (f == 0) return y;
        Integer d = q.gradient(y)[j], inv;
        if (!mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t())) throw InternalError("derivative not a unit");
        y[j] -= f * inv;
        mpz_mod(y[j].get_mpz_t(), y[j].get_mpz_t(), mod.get_mpz_t());
    }
    throw InternalError("Newton lifting did not converge");
}

inline std::vector<Integer> primitive(std::vector<Integer> w) {
    Integer g = 0;
    for (const auto& x : w) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : w) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return w;
}

enum class State { Fresh, Line, Point };

}  // namespace detail

/// Decides isotropy over Z_p by repeated reduction mod p.
///
/// The loop keeps Q_cur(y) = p^-E Q(T y) and a state recording what is known
/// about the variables already reduced: nothing (Fresh), that y1, y2 carry a
/// form p*B with B anisotropic mod p (Line) or that y1^2 has a coefficient of
/// valuation exactly one (Point). Each round classifies Q_cur mod p on the
/// remaining variables: Generic reductions have a smooth zero and so are
/// isotropic, Imprimitive ones are divided by p, and CaseI/CaseII either hit
/// one of the anisotropic base cases or scale the distinguished variables by p.
inline Decision decide_isotropic_recursive(const QuadForm& q, unsigned long p, const DecideOptions& opt = {}) {
    using detail::State;
    detail::require_prime(p);
    const std::size_t n = q.size();
    const long nl = static_cast<long>(n);
    Decision out;

    long v_now = 0;
    long step_limit = 0;
    if (!opt.precision) {
        const Integer disc = q.discriminant();
        if (disc == 0) {
            out.verdict = Verdict::Degenerate;
            out.pattern = "degenerate";
            return out;
        }
        v_now = valuation(disc, p);
        step_limit = 3 * (v_now + 1);
    } else {
        step_limit = *opt.precision + 1;
    }
    const long v_start = v_now;
    long pass_floor = v_now;
    int stalled = 0;
    long digits = opt.precision.value_or(0);

    QuadForm cur = q;
    IntMatrix t = IntMatrix::identity(n);
    unsigned long e = 0;
    State state = State::Fresh;

    auto record = [&](long delta) {
        ++out.steps;
        v_now += delta;
        if (v_now < pass_floor) {
            pass_floor = v_now;
            ++out.passes;
            stalled = 0;
        } else if (++stalled > 2) {
            throw InternalError("discriminant valuation failed to decrease");
        }
        if (!opt.precision && out.passes > 1 + v_start) throw InternalError("pass bound exceeded");
        if (out.steps > step_limit) throw InternalError("reduction did not terminate");
        if (opt.precision) --digits;
    };
    auto finish = [&](Verdict v, std::string pattern) {
        out.verdict = v;
        out.pattern = std::move(pattern);
        return out;
    };

    for (;;) {
        if (opt.precision && digits < 1) return finish(Verdict::Indeterminate, "precision");
        const std::size_t first = state == State::Fresh ? 0 : state == State::Line ? 2 : 1;
        const ModPClass cls = analyze_mod_p(cur, p, first, opt.want_witness);
        switch (cls.tag) {
            case ModPTag::Imprimitive:
                cur = cur.divide(p);
                ++e;
                record(-nl);
                state = State::Fresh;
                continue;
            case ModPTag::Generic: {
                if (opt.want_witness) {
                    for (unsigned long k = e + 2;; k += e + 2) {
                        std::vector<Integer> y = detail::hensel_lift(cur, p, *cls.smooth_zero, k);
                        std::vector<Integer> w = detail::primitive(t.apply(y));
                        if (verify_witness(q, p, w)) {
                            out.witness = std::move(w);
                            break;
                        }
                        if (k > 8 * (e + 2)) throw InternalError("witness failed the lifting check");
                    }
                }
                return finish(Verdict::Isotropic, "generic");
            }
            case ModPTag::CaseI:
                if (state == State::Fresh) {
                    if (n == 2) return finish(Verdict::Anisotropic, "alpha1(2)");
                    cur = detail::advance(cur, p, cls, {0, 1}, {}, t);
                } else if (state == State::Line) {
                    if (n == 4) return finish(Verdict::Anisotropic, "beta1(4)");
                    cur = detail::advance(cur, p, cls, {2, 3}, detail::front_order(n, {2, 3}), t);
                } else {
                    if (n == 3) return finish(Verdict::Anisotropic, "gamma1(3)");
                    cur = detail::advance(cur, p, cls, {1, 2}, detail::front_order(n, {1, 2}), t);
                }
                ++e;
                record(4 - nl);
                state = State::Line;
                continue;
            case ModPTag::CaseII:
                if (state == State::Fresh) {
                    if (n == 1) return finish(Verdict::Anisotropic, "alpha2(1)");
                    cur = detail::advance(cur, p, cls, {0}, {}, t);
                } else if (state == State::Line) {
                    if (n == 3) return finish(Verdict::Anisotropic, "beta2(3)");
                    cur = detail::advance(cur, p, cls, {2}, detail::front_order(n, {2}), t);
                } else {
                    if (n == 2) return finish(Verdict::Anisotropic, "gamma2(2)");
                    cur = detail::advance(cur, p, cls, {1}, detail::front_order(n, {1}), t);
                }
                ++e;
                record(2 - nl);
                state = State::Point;
                continue;
        }
    }
}

}  // namespace qfiso::padic
