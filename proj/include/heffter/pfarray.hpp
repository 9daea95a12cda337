#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "heffter/error.hpp"
#include "heffter/modular.hpp"

namespace heffter {

/// A position in an array. Indices are 1-based everywhere in the public API.
struct Cell {
    int row = 1;
    int col = 1;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// An m x n grid over Z_v in which some cells are empty.
///
/// Entries are stored as least residues in [0, v-1]; `t` is the order of the
/// excluded subgroup J and `lambda` the fold of the (possibly multi-fold)
/// Heffter condition the array claims.
class PartiallyFilledArray {
public:
    PartiallyFilledArray(int rows, int cols, int v, int t = 1, int lambda = 1)
        : rows_(rows), cols_(cols), v_(v), t_(t), lambda_(lambda),
          cells_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), kEmpty) {
        if (rows < 1 || cols < 1) throw Error("array dimensions must be positive");
        if (v < 1) throw Error("modulus must be positive");
        if (t < 1 || v % t != 0) throw Error("subgroup order t=" + std::to_string(t) + " does not divide v=" + std::to_string(v));
        if (lambda < 1) throw Error("fold lambda must be positive");
    }

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] int modulus() const noexcept { return v_; }
    [[nodiscard]] int subgroup_order() const noexcept { return t_; }
    [[nodiscard]] int fold() const noexcept { return lambda_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    [[nodiscard]] std::optional<int> at(int i, int j) const {
        const int x = cells_[index(i, j)];
        if (x == kEmpty) return std::nullopt;
        return x;
    }
    [[nodiscard]] std::optional<int> at(Cell c) const { return at(c.row, c.col); }
    [[nodiscard]] bool filled(int i, int j) const { return cells_[index(i, j)] != kEmpty; }

    /// Stores `value mod v`, or clears the cell.
    void set(int i, int j, std::optional<long long> value) {
        cells_[index(i, j)] = value ? static_cast<int>(mod(*value, v_)) : kEmpty;
    }

    [[nodiscard]] std::size_t filled_count() const {
        return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](int x) { return x != kEmpty; }));
    }

    /// Entries of row i in natural (left to right) order.
    [[nodiscard]] std::vector<int> row_entries(int i) const {
        std::vector<int> out;
        for (int j = 1; j <= cols_; ++j)
            if (auto x = at(i, j)) out.push_back(*x);
        return out;
    }

    /// Entries of column j in natural (top to bottom) order.
    [[nodiscard]] std::vector<int> col_entries(int j) const {
        std::vector<int> out;
        for (int i = 1; i <= rows_; ++i)
            if (auto x = at(i, j)) out.push_back(*x);
        return out;
    }

    /// All entries in row-major order (the list E(A)).
    [[nodiscard]] std::vector<int> entries() const {
        std::vector<int> out;
        for (int x : cells_)
            if (x != kEmpty) out.push_back(x);
        return out;
    }

    friend bool operator==(const PartiallyFilledArray&, const PartiallyFilledArray&) = default;

private:
    static constexpr int kEmpty = -1;

    [[nodiscard]] std::size_t index(int i, int j) const {
        if (i < 1 || i > rows_ || j < 1 || j > cols_)
            throw Error("cell (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                        std::to_string(rows_) + "x" + std::to_string(cols_) + " array");
        return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j - 1);
    }

    int rows_;
    int cols_;
    int v_;
    int t_;
    int lambda_;
    std::vector<int> cells_;
};

/// The set of filled positions of an array.
class Skeleton {
public:
    Skeleton(int rows, int cols, std::vector<Cell> cells = {})
        : rows_(rows), cols_(cols), mask_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), false) {
        if (rows < 1 || cols < 1) throw Error("skeleton dimensions must be positive");
        for (const Cell& c : cells) insert(c);
    }

    /// The union of the given diagonals D_i = {(i,1), (i+1,2), ..., (i-1,n)} of an n x n grid.
    static Skeleton from_diagonals(int n, const std::vector<int>& diagonals) {
        Skeleton s(n, n);
        for (int d : diagonals)
            for (int l = 0; l < n; ++l) s.insert({mod1(d + l, n), l + 1});
        return s;
    }

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
    [[nodiscard]] std::size_t size() const noexcept { return count_; }
    [[nodiscard]] bool empty() const noexcept { return count_ == 0; }

    [[nodiscard]] bool contains(Cell c) const {
        if (c.row < 1 || c.row > rows_ || c.col < 1 || c.col > cols_) return false;
        return mask_[index(c)];
    }

    void insert(Cell c) {
        if (c.row < 1 || c.row > rows_ || c.col < 1 || c.col > cols_)
            throw Error("skeleton cell (" + std::to_string(c.row) + "," + std::to_string(c.col) + ") out of range");
        if (!mask_[index(c)]) {
            mask_[index(c)] = true;
            ++count_;
        }
    }

    /// Filled cells in row-major order.
    [[nodiscard]] std::vector<Cell> cells() const {
        std::vector<Cell> out;
        out.reserve(count_);
        for (int i = 1; i <= rows_; ++i)
            for (int j = 1; j <= cols_; ++j)
                if (mask_[index({i, j})]) out.push_back({i, j});
        return out;
    }

    [[nodiscard]] std::size_t row_weight(int i) const {
        std::size_t w = 0;
        for (int j = 1; j <= cols_; ++j) w += contains({i, j});
        return w;
    }
    [[nodiscard]] std::size_t col_weight(int j) const {
        std::size_t w = 0;
        for (int i = 1; i <= rows_; ++i) w += contains({i, j});
        return w;
    }

    friend bool operator==(const Skeleton& a, const Skeleton& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.mask_ == b.mask_;
    }

private:
    [[nodiscard]] std::size_t index(Cell c) const {
        return static_cast<std::size_t>(c.row - 1) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c.col - 1);
    }

    int rows_;
    int cols_;
    std::vector<bool> mask_;
    std::size_t count_ = 0;
};

inline Skeleton skeleton(const PartiallyFilledArray& a) {
    Skeleton s(a.rows(), a.cols());
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            if (a.filled(i, j)) s.insert({i, j});
    return s;
}

/// Index of the diagonal through cell (i, j) of an n x n grid.
constexpr int diagonal_of(Cell c, int n) noexcept { return mod1(c.row - c.col + 1, n); }

/// A maximal run of empty diagonals D_first, ..., D_{first+width-1}.
struct EmptyStrip {
    int first = 1;
    int width = 0;
    int gcd_with_n = 1;     ///< gcd(n, width)
    int class_modulus = 1;  ///< gcd(n, width + 1): the jump across the strip is width + 1 diagonals

    friend bool operator==(const EmptyStrip&, const EmptyStrip&) = default;
};

struct DiagonalProfile {
    int n = 0;
    std::vector<int> filled;          ///< sorted indices of the filled diagonals
    std::vector<EmptyStrip> strips;   ///< ordered by first diagonal
    bool cyclic = false;              ///< filled diagonals consecutive mod n

    [[nodiscard]] int k() const noexcept { return static_cast<int>(filled.size()); }
    [[nodiscard]] bool has_diagonal(int i) const {
        return std::binary_search(filled.begin(), filled.end(), mod1(i, n));
    }
    [[nodiscard]] std::vector<int> strip_widths() const {
        std::vector<int> w;
        for (const auto& s : strips) w.push_back(s.width);
        return w;
    }
};

/// Decomposes a square skeleton into full diagonals and the empty strips between them.
/// Throws if the skeleton is not square or some diagonal is only partly filled.
inline DiagonalProfile classify_diagonality(const Skeleton& s) {
    if (!s.is_square()) throw Error("diagonal analysis needs a square array");
    const int n = s.rows();
    std::vector<int> per_diag(static_cast<std::size_t>(n) + 1, 0);
    for (const Cell& c : s.cells()) ++per_diag[static_cast<std::size_t>(diagonal_of(c, n))];

    DiagonalProfile p;
    p.n = n;
    for (int i = 1; i <= n; ++i) {
        const int cnt = per_diag[static_cast<std::size_t>(i)];
        if (cnt == n) {
            p.filled.push_back(i);
        } else if (cnt != 0) {
            throw Error("not diagonal-structured: diagonal D_" + std::to_string(i) + " has " + std::to_string(cnt) +
                        " of " + std::to_string(n) + " cells filled");
        }
    }
    if (p.filled.empty()) throw Error("not diagonal-structured: no filled diagonal");

    // Walk once around the torus starting just after a filled diagonal.
    const int start = p.filled.front();
    int run_first = 0;
    int run_width = 0;
    for (int step = 1; step <= n; ++step) {
        const int d = mod1(start + step, n);
        if (!p.has_diagonal(d)) {
            if (run_width == 0) run_first = d;
            ++run_width;
        } else if (run_width > 0) {
            p.strips.push_back({run_first, run_width, std::gcd(n, run_width), std::gcd(n, run_width + 1)});
            run_width = 0;
        }
    }
    std::sort(p.strips.begin(), p.strips.end(), [](const EmptyStrip& a, const EmptyStrip& b) { return a.first < b.first; });
    p.cyclic = p.strips.size() <= 1;
    return p;
}

inline DiagonalProfile classify_diagonality(const PartiallyFilledArray& a) { return classify_diagonality(skeleton(a)); }

/// For a cyclically k-diagonal profile with filled run D_{a+1}, ..., D_{a+k}, returns a.
inline int cyclic_offset(const DiagonalProfile& p) {
    if (!p.cyclic) throw HypothesisError("skeleton is not cyclically diagonal");
    if (p.strips.empty()) return 0;
    // The run starts right after the single empty strip.
    return mod1(p.strips.front().first + p.strips.front().width, p.n) - 1;
}

/// Row shift s with skel(row_translate(transpose(A), s)) = skel(A) for cyclically diagonal A.
/// Equals k-1 when the filled run is D_1, ..., D_k.
inline int transpose_alignment_shift(const DiagonalProfile& p) {
    return static_cast<int>(mod(2LL * cyclic_offset(p) + p.k() - 1, p.n));
}

inline PartiallyFilledArray transpose(const PartiallyFilledArray& a) {
    PartiallyFilledArray out(a.cols(), a.rows(), a.modulus(), a.subgroup_order(), a.fold());
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            if (auto x = a.at(i, j)) out.set(j, i, *x);
    return out;
}

inline Skeleton transpose(const Skeleton& s) {
    Skeleton out(s.cols(), s.rows());
    for (const Cell& c : s.cells()) out.insert({c.col, c.row});
    return out;
}

/// Moves every row r to row r + shift (indices mod m).
inline PartiallyFilledArray row_translate(const PartiallyFilledArray& a, int shift) {
    PartiallyFilledArray out(a.rows(), a.cols(), a.modulus(), a.subgroup_order(), a.fold());
    for (int i = 1; i <= a.rows(); ++i)
        for (int j = 1; j <= a.cols(); ++j)
            if (auto x = a.at(i, j)) out.set(mod1(i + shift, a.rows()), j, *x);
    return out;
}

inline Skeleton row_translate(const Skeleton& s, int shift) {
    Skeleton out(s.rows(), s.cols());
    for (const Cell& c : s.cells()) out.insert({mod1(c.row + shift, s.rows()), c.col});
    return out;
}

} // namespace heffter
