#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qfiso/exact/matrix.hpp"

namespace qfiso::padic {

/// Integral quadratic form Q(x) = sum_{i <= j} c_ij x_i x_j.
///
/// Stored through its Hessian H (H_ii = 2 c_ii, H_ij = c_ij), which is
/// integral with an even diagonal and transforms as H -> T^t H T under the
/// substitution x = T y. Variables are 0-based in code; the external
/// coefficient order is c_11, c_12, ..., c_1n, c_22, ..., c_nn.
class QuadForm {
public:
    QuadForm() = default;

    /// From the n(n+1)/2 coefficients in row-major upper-triangular order.
    QuadForm(int n, const std::vector<Integer>& upper) : h_(static_cast<std::size_t>(n)) {
        if (n < 1) throw Error("a quadratic form needs at least one variable");
        const std::size_t expected = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2;
        if (upper.size() != expected)
            throw Error("expected " + std::to_string(expected) + " coefficients for n=" + std::to_string(n) +
                        ", got " + std::to_string(upper.size()));
        std::size_t k = 0;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i; j < size(); ++j, ++k) {
                if (i == j)
                    h_(i, i) = 2 * upper[k];
                else
                    h_(i, j) = h_(j, i) = upper[k];
            }
    }

    /// From a Hessian; the diagonal must be even.
    static QuadForm from_hessian(IntMatrix h) {
        for (std::size_t i = 0; i < h.size(); ++i)
            if (!mpz_even_p(h(i, i).get_mpz_t())) throw Error("Hessian diagonal must be even");
        QuadForm q;
        q.h_ = std::move(h);
        return q;
    }

    /// Diagonal form sum a_i x_i^2.
    static QuadForm diagonal(const std::vector<Integer>& a) {
        IntMatrix h(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) h(i, i) = 2 * a[i];
        return from_hessian(std::move(h));
    }

    int n() const { return static_cast<int>(h_.size()); }
    std::size_t size() const { return h_.size(); }
    const IntMatrix& hessian() const { return h_; }

    /// c_ij for 0-based i <= j.
    Integer coeff(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return i == j ? Integer(h_(i, i) / 2) : h_(i, j);
    }

    std::vector<Integer> coefficients() const {
        std::vector<Integer> out;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i; j < size(); ++j) out.push_back(coeff(i, j));
        return out;
    }

    Integer evaluate(const std::vector<Integer>& x) const {
        // Q(x) = x^t H x / 2
        Integer twice = 0;
        for (std::size_t i = 0; i < size(); ++i) {
            if (x[i] == 0) continue;
            Integer row = 0;
            for (std::size_t j = 0; j < size(); ++j) row += h_(i, j) * x[j];
            twice += x[i] * row;
        }
        return twice / 2;
    }

    /// Partial derivatives dQ/dx_k = (H x)_k.
    std::vector<Integer> gradient(const std::vector<Integer>& x) const { return h_.apply(x); }

    /// det H; zero exactly when the form is degenerate.
    Integer discriminant() const { return bareiss_determinant(h_); }

    /// Q(T y).
    QuadForm substitute(const IntMatrix& t) const {
        QuadForm r;
        r.h_ = t.transpose() * h_ * t;
        return r;
    }

    /// Q with the listed variables multiplied by `factor`.
    QuadForm scale_variables(const std::vector<std::size_t>& vars, const Integer& factor) const {
        QuadForm r = *this;
        for (std::size_t v : vars)
            for (std::size_t j = 0; j < size(); ++j) {
                r.h_(v, j) *= factor;
                r.h_(j, v) *= factor;
            }
        return r;
    }

    /// New variable k is old variable order[k].
    QuadForm permute(const std::vector<std::size_t>& order) const {
        QuadForm r;
        r.h_ = IntMatrix(size());
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) r.h_(i, j) = h_(order[i], order[j]);
        return r;
    }

    /// True when every coefficient is divisible by m.
    bool divisible_by(unsigned long m) const {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i; j < size(); ++j) {
                if (!mpz_divisible_ui_p(coeff(i, j).get_mpz_t(), m)) return false;
            }
        return true;
    }

    /// Q / m; every coefficient must be divisible by m.
    QuadForm divide(unsigned long m) const {
        if (!divisible_by(m)) throw InternalError("form is not divisible by " + std::to_string(m));
        QuadForm r = *this;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                mpz_divexact_ui(r.h_(i, j).get_mpz_t(), r.h_(i, j).get_mpz_t(), m);
        return r;
    }

    friend bool operator==(const QuadForm& a, const QuadForm& b) { return a.h_ == b.h_; }

    /// Polynomial rendering, e.g. "x1^2 + 3*x1*x2 - 5*x2^2".
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i; j < size(); ++j) {
                const Integer c = coeff(i, j);
                if (c == 0) continue;
                const std::string mono = i == j ? "x" + std::to_string(i + 1) + "^2"
                                                : "x" + std::to_string(i + 1) + "*x" + std::to_string(j + 1);
                const Integer m = abs(c);
                const std::string term = (m == 1 ? "" : m.get_str() + "*") + mono;
                if (out.empty())
                    out = (c < 0 ? "-" : "") + term;
                else
                    out += (c < 0 ? " - " : " + ") + term;
            }
        return out.empty() ? "0" : out;
    }

private:
    IntMatrix h_;
};

}  // namespace qfiso::padic
