#pragma once

#include <string>
#include <vector>

#include "qfiso/padic/modp.hpp"

namespace qfiso::padic {

/// Conditioning left behind by a reduction step.
enum class Condition { None, Line, Point };

inline std::string to_string(Condition c) {
    switch (c) {
        case Condition::None: return "none";
        case Condition::Line: return "line";
        case Condition::Point: return "point";
    }
    return "?";
}

/// Q'(y) = Q(T y) / p.
struct ReduceResult {
    QuadForm form;
    Condition condition = Condition::None;
    IntMatrix transform;
};

namespace detail {

/// Applies the normalization of `cls`, multiplies the listed variables by p,
/// divides by p and reorders so that new variable k is old variable order[k].
/// `t` accumulates the substitution matrix.
inline QuadForm advance(const QuadForm& q, unsigned long p, const ModPClass& cls, const std::vector<std::size_t>& scaled,
                        const std::vector<std::size_t>& order, IntMatrix& t) {
    QuadForm r = q.substitute(cls.change).scale_variables(scaled, p).divide(p);
    t = t * cls.change;
    for (std::size_t v : scaled)
        for (std::size_t i = 0; i < t.size(); ++i) t(i, v) *= p;
    if (order.empty()) return r;
    IntMatrix perm(q.size());
    for (std::size_t k = 0; k < order.size(); ++k) perm(order[k], k) = 1;
    t = t * perm;
    return r.permute(order);
}

/// Identity order with `front` moved to the beginning.
inline std::vector<std::size_t> front_order(std::size_t n, const std::vector<std::size_t>& front) {
    std::vector<std::size_t> order = front;
    for (std::size_t i = 0; i < n; ++i) {
        bool moved = false;
        for (auto f : front) moved = moved || f == i;
        if (!moved) order.push_back(i);
    }
    return order;
}

}  // namespace detail

/// One reduction step on a primitive form of type CaseI or CaseII:
/// Q'(x) = Q(p x1, p x2, x3, ...) / p (CaseI) or Q(p x1, x2, ...) / p (CaseII)
/// in the coordinates where the reduction involves the leading variables.
inline ReduceResult reduce_step(const QuadForm& q, unsigned long p, const ModPClass& cls) {
    detail::require_prime(p);
    if (cls.tag != ModPTag::CaseI && cls.tag != ModPTag::CaseII)
        throw WrongCase("reduce_step needs a CaseI or CaseII reduction, got " + to_string(cls.tag));
    if (cls.first != 0 || cls.change.size() != q.size()) throw WrongCase("classification does not belong to this form");
    ReduceResult r;
    r.transform = IntMatrix::identity(q.size());
    if (cls.tag == ModPTag::CaseI) {
        r.form = detail::advance(q, p, cls, {0, 1}, {}, r.transform);
        r.condition = Condition::Line;
    } else {
        r.form = detail::advance(q, p, cls, {0}, {}, r.transform);
        r.condition = Condition::Point;
    }
    return r;
}

}  // namespace qfiso::padic
