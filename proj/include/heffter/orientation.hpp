#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "heffter/error.hpp"

namespace heffter {

/// Row orientations R in {+1,-1}^m and column orientations C in {+1,-1}^n.
///
/// +1 means left to right (rows) or top to bottom (columns). The list E of
/// column positions holding -1 is derived from C, so it can never disagree.
struct OrientationPair {
    std::vector<int> R;
    std::vector<int> C;

    static OrientationPair trivial(int m, int n) {
        return {std::vector<int>(static_cast<std::size_t>(m), 1), std::vector<int>(static_cast<std::size_t>(n), 1)};
    }

    /// Trivial R, and C with -1 exactly at the 1-based positions in `E`.
    static OrientationPair from_minus_positions(int m, int n, std::span<const int> E) {
        OrientationPair p = trivial(m, n);
        for (int e : E) {
            if (e < 1 || e > n) throw Error("minus position " + std::to_string(e) + " outside [1," + std::to_string(n) + "]");
            p.C[static_cast<std::size_t>(e - 1)] = -1;
        }
        return p;
    }

    /// Sorted 1-based positions e with C_e = -1.
    [[nodiscard]] std::vector<int> E() const {
        std::vector<int> out;
        for (std::size_t j = 0; j < C.size(); ++j)
            if (C[j] == -1) out.push_back(static_cast<int>(j) + 1);
        return out;
    }

    [[nodiscard]] bool r_trivial() const {
        return std::all_of(R.begin(), R.end(), [](int x) { return x == 1; });
    }

    void validate(int m, int n) const {
        if (static_cast<int>(R.size()) != m) throw Error("R has length " + std::to_string(R.size()) + ", expected " + std::to_string(m));
        if (static_cast<int>(C.size()) != n) throw Error("C has length " + std::to_string(C.size()) + ", expected " + std::to_string(n));
        auto ok = [](int x) { return x == 1 || x == -1; };
        if (!std::all_of(R.begin(), R.end(), ok) || !std::all_of(C.begin(), C.end(), ok))
            throw Error("orientation entries must be +1 or -1");
    }

    friend bool operator==(const OrientationPair&, const OrientationPair&) = default;

    /// Lexicographic over R then C, with +1 ordered before -1.
    friend bool operator<(const OrientationPair& a, const OrientationPair& b) {
        auto key = [](int x) { return x == 1 ? 0 : 1; };
        auto less = [&](const std::vector<int>& x, const std::vector<int>& y) {
            return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                                [&](int p, int q) { return key(p) < key(q); });
        };
        if (a.R != b.R) return less(a.R, b.R);
        return less(a.C, b.C);
    }
};

inline OrientationPair negate(const OrientationPair& p) {
    OrientationPair out = p;
    for (int& x : out.R) x = -x;
    for (int& x : out.C) x = -x;
    return out;
}

} // namespace heffter
