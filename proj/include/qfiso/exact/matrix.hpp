#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qfiso/exact/rational.hpp"

namespace qfiso {

/// Dense square matrix stored row-major.
template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, const T& fill = T(0)) : n_(n), a_(n * n, fill) {}

    static SquareMatrix identity(std::size_t n) {
        SquareMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t size() const { return n_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    SquareMatrix transpose() const {
        SquareMatrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) {
        SquareMatrix r(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t k = 0; k < x.n_; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < x.n_; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }

    friend bool operator==(const SquareMatrix& x, const SquareMatrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }

    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> r(n_, T(0));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

private:
    std::size_t n_ = 0;
    std::vector<T> a_;
};

using IntMatrix = SquareMatrix<Integer>;
using RationalMatrix = SquareMatrix<Rational>;

/// Determinant by fraction-free (Bareiss) elimination; every division is exact.
inline Integer bareiss_determinant(IntMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && m(r, k) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Exact determinant of a rational matrix: clear denominators, then Bareiss.
inline Rational determinant(const RationalMatrix& m) {
    const std::size_t n = m.size();
    Integer l = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den().get_mpz_t());
    IntMatrix z(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational scaled = m(i, j) * l;
            z(i, j) = scaled.get_num();
        }
    return make_rational(bareiss_determinant(std::move(z)), pow_int(l, static_cast<unsigned long>(n)));
}

}  // namespace qfiso
