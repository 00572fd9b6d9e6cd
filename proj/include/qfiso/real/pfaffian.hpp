#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "qfiso/exact/matrix.hpp"
#include "qfiso/support/errors.hpp"

namespace qfiso::real {

inline constexpr std::size_t kMaxPfaffianSize = 24;

/// Skew-symmetric matrix storing only the strict upper triangle; a_ji = -a_ij
/// and a_ii = 0 hold by construction.
template <typename T>
class SkewMatrix {
public:
    explicit SkewMatrix(std::size_t n) : n_(n), upper_(n * (n > 0 ? n - 1 : 0) / 2, T(0)) {}

    std::size_t size() const { return n_; }

    T get(std::size_t i, std::size_t j) const {
        if (i == j) return T(0);
        if (i < j) return upper_[index(i, j)];
        return T(-upper_[index(j, i)]);
    }

    /// Sets a_ij (and so a_ji = -value); i != j.
    void set(std::size_t i, std::size_t j, T value) {
        if (i == j) throw Error("diagonal of a skew matrix is zero");
        if (i < j)
            upper_[index(i, j)] = std::move(value);
        else
            upper_[index(j, i)] = T(-value);
    }

    /// Upper entry a_ij for i < j, without copying.
    const T& upper(std::size_t i, std::size_t j) const { return upper_[index(i, j)]; }

    SquareMatrix<T> dense() const {
        SquareMatrix<T> m(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) m(i, j) = get(i, j);
        return m;
    }

private:
    std::size_t index(std::size_t i, std::size_t j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }

    std::size_t n_;
    std::vector<T> upper_;
};

namespace detail {

template <typename T>
T pfaffian_subset(const SkewMatrix<T>& a, std::uint32_t mask, std::unordered_map<std::uint32_t, T>& memo) {
    if (mask == 0) return T(1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const std::size_t first = static_cast<std::size_t>(__builtin_ctz(mask));
    const std::uint32_t rest = mask & ~(std::uint32_t{1} << first);
    T sum(0);
    bool negative = false;
    for (std::uint32_t m = rest; m; m &= m - 1) {
        const std::size_t j = static_cast<std::size_t>(__builtin_ctz(m));
        const T& entry = a.upper(first, j);
        if (!(entry == T(0))) {
            T term = entry * pfaffian_subset(a, rest & ~(std::uint32_t{1} << j), memo);
            if (negative)
                sum -= term;
            else
                sum += term;
        }
        negative = !negative;
    }
    memo.emplace(mask, sum);
    return sum;
}

}  // namespace detail

/// Pfaffian by expansion along the first remaining row,
///   Pf(S) = sum_k (-1)^(k+1) a_{s0 sk} Pf(S \ {s0, sk}),
/// memoized over index subsets; uses only ring operations.
template <typename T>
T pfaffian(const SkewMatrix<T>& a) {
    const std::size_t n = a.size();
    if (n > kMaxPfaffianSize)
        throw SizeTooLarge("Pfaffian size " + std::to_string(n) + " exceeds " + std::to_string(kMaxPfaffianSize));
    if (n % 2 == 1) return T(0);
    std::unordered_map<std::uint32_t, T> memo;
    const std::uint32_t all = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
    return detail::pfaffian_subset(a, all, memo);
}

}  // namespace qfiso::real
