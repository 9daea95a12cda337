#pragma once

#include <cstdint>
#include <numeric>

namespace heffter {

/// Least nonnegative residue of `a` modulo `m` (m > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m) noexcept {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Residue in {1, ..., m}, the labelling used for row, column and diagonal indices.
constexpr int mod1(std::int64_t a, std::int64_t m) noexcept {
    return static_cast<int>(mod(a - 1, m) + 1);
}

/// Symmetric representative in [-floor(v/2), floor(v/2)] (ties go to the positive side).
constexpr std::int64_t symmetric(std::int64_t x, std::int64_t v) noexcept {
    const std::int64_t r = mod(x, v);
    return r > v / 2 ? r - v : r;
}

constexpr bool is_prime(std::int64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// ceil(a / b) for a >= 0, b > 0.
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) noexcept { return (a + b - 1) / b; }

} // namespace heffter
