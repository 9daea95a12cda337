#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "heffter/error.hpp"

namespace heffter {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; zero when b < 0 or b > a.
inline BigInt binom(long long a, long long b) {
    if (a < 0) throw DomainError("binomial with negative top argument");
    if (b < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    BigInt r = 1;
    for (long long i = 1; i <= b; ++i) {
        r *= a - b + i;
        r /= i;
    }
    return r;
}

/// Number of derangements of m symbols: D(0)=1, D(1)=0, D(m)=(m-1)(D(m-1)+D(m-2)).
inline BigInt derangements(long long m) {
    if (m < 0) throw DomainError("derangements of a negative number of symbols (m=" + std::to_string(m) + ")");
    BigInt prev2 = 1, prev1 = 0;
    if (m == 0) return prev2;
    for (long long i = 2; i <= m; ++i) {
        BigInt cur = (i - 1) * (prev1 + prev2);
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    return prev1;
}

inline BigInt factorial(long long m) {
    if (m < 0) throw DomainError("factorial of a negative number");
    BigInt r = 1;
    for (long long i = 2; i <= m; ++i) r *= i;
    return r;
}

/// Binary entropy -p log2 p - (1-p) log2 (1-p), continuous at 0 and 1.
inline double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("entropy argument outside [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// Iterates the r-subsets of {0, ..., n-1} in lexicographic order.
class CombinationCursor {
public:
    CombinationCursor(int n, int r) : n_(n), idx_(static_cast<std::size_t>(r)), done_(r < 0 || r > n) {
        for (int i = 0; i < r; ++i) idx_[static_cast<std::size_t>(i)] = i;
    }

    [[nodiscard]] bool done() const noexcept { return done_; }
    [[nodiscard]] const std::vector<int>& indices() const noexcept { return idx_; }

    void advance() {
        const int r = static_cast<int>(idx_.size());
        int i = r - 1;
        while (i >= 0 && idx_[static_cast<std::size_t>(i)] == n_ - r + i) --i;
        if (i < 0) {
            done_ = true;
            return;
        }
        ++idx_[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) idx_[static_cast<std::size_t>(j)] = idx_[static_cast<std::size_t>(j - 1)] + 1;
    }

private:
    int n_;
    std::vector<int> idx_;
    bool done_;
};

} // namespace heffter
