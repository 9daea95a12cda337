#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "heffter/error.hpp"
#include "heffter/heffter_array.hpp"
#include "heffter/modular.hpp"
#include "heffter/pfarray.hpp"

namespace heffter {

struct SearchOptions {
    /// Restrict the filled positions; when absent every skeleton with the
    /// right line weights is tried, in lexicographic order.
    std::optional<Skeleton> skeleton;
};

/// Cyclically k-diagonal skeleton filled on D_first, ..., D_{first+k-1}.
inline Skeleton cyclic_skeleton(int n, int k, int first = 1) {
    std::vector<int> d;
    for (int i = 0; i < k; ++i) d.push_back(mod1(first + i, n));
    return Skeleton::from_diagonals(n, d);
}

/// Cyclically k-diagonal skeleton (k odd) symmetric about D_1, so it equals its transpose.
inline Skeleton centered_cyclic_skeleton(int n, int k) { return cyclic_skeleton(n, k, 1 - (k - 1) / 2); }

namespace detail {

class HeffterSearch {
public:
    HeffterSearch(const Skeleton& skel, int v, int t, std::size_t limit)
        : skel_(skel), v_(v), t_(t), limit_(limit), cells_(skel.cells()),
          used_(static_cast<std::size_t>(v), false),
          row_left_(static_cast<std::size_t>(skel.rows()) + 1, 0), col_left_(static_cast<std::size_t>(skel.cols()) + 1, 0),
          row_sum_(static_cast<std::size_t>(skel.rows()) + 1, 0), col_sum_(static_cast<std::size_t>(skel.cols()) + 1, 0),
          values_(cells_.size(), 0) {
        for (const Cell& c : cells_) {
            ++row_left_[static_cast<std::size_t>(c.row)];
            ++col_left_[static_cast<std::size_t>(c.col)];
        }
    }

    std::vector<PartiallyFilledArray> run() {
        if (!cells_.empty()) dfs(0);
        return std::move(found_);
    }

private:
    [[nodiscard]] int class_of(int x) const { return std::min(x, v_ - x); }

    bool admissible(int x) const {
        return x != 0 && !in_subgroup(x, v_, t_) && !used_[static_cast<std::size_t>(class_of(x))];
    }

    void place(std::size_t i, int x, bool on) {
        const Cell c = cells_[i];
        auto& r = row_sum_[static_cast<std::size_t>(c.row)];
        auto& s = col_sum_[static_cast<std::size_t>(c.col)];
        const int delta = on ? x : v_ - x;
        r = static_cast<int>(mod(r + delta, v_));
        s = static_cast<int>(mod(s + delta, v_));
        row_left_[static_cast<std::size_t>(c.row)] += on ? -1 : 1;
        col_left_[static_cast<std::size_t>(c.col)] += on ? -1 : 1;
        used_[static_cast<std::size_t>(class_of(x))] = on;
        values_[i] = x;
    }

    void try_value(std::size_t i, int x) {
        if (!admissible(x)) return;
        place(i, x, true);
        dfs(i + 1);
        place(i, x, false);
    }

    void dfs(std::size_t i) {
        if (found_.size() >= limit_) return;
        if (i == cells_.size()) {
            emit();
            return;
        }
        const Cell c = cells_[i];
        const bool last_in_row = row_left_[static_cast<std::size_t>(c.row)] == 1;
        const bool last_in_col = col_left_[static_cast<std::size_t>(c.col)] == 1;
        if (last_in_row || last_in_col) {
            const int forced_r = static_cast<int>(mod(-row_sum_[static_cast<std::size_t>(c.row)], v_));
            const int forced_c = static_cast<int>(mod(-col_sum_[static_cast<std::size_t>(c.col)], v_));
            if (last_in_row && last_in_col && forced_r != forced_c) return;
            try_value(i, last_in_row ? forced_r : forced_c);
            return;
        }
        for (int x = 1; x < v_ - x; ++x) {
            try_value(i, x);
            // Global negation maps solutions to solutions; keep the first entry positive.
            if (i > 0) try_value(i, v_ - x);
            if (found_.size() >= limit_) return;
        }
    }

    void emit() {
        PartiallyFilledArray a(skel_.rows(), skel_.cols(), v_, t_);
        for (std::size_t i = 0; i < cells_.size(); ++i) a.set(cells_[i].row, cells_[i].col, values_[i]);
        if (!validate_heffter(a).passed()) throw InternalError("search produced an invalid Heffter array");
        found_.push_back(std::move(a));
    }

    const Skeleton& skel_;
    int v_;
    int t_;
    std::size_t limit_;
    std::vector<Cell> cells_;
    std::vector<bool> used_;
    std::vector<int> row_left_, col_left_;
    std::vector<int> row_sum_, col_sum_;
    std::vector<int> values_;
    std::vector<PartiallyFilledArray> found_;
};

/// Visits every m x n 0/1 pattern with row sums h and column sums k, rows chosen in
/// lexicographic order of their column sets. Stops when `visit` returns false.
template <class Visit>
bool for_each_skeleton(int m, int n, int h, int k, Visit&& visit) {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(m));
    std::vector<int> col_count(static_cast<std::size_t>(n) + 1, 0);
    bool keep_going = true;

    auto rec = [&](auto&& self, int row) -> void {
        if (!keep_going) return;
        if (row > m) {
            Skeleton s(m, n);
            for (int i = 1; i <= m; ++i)
                for (int j : rows[static_cast<std::size_t>(i - 1)]) s.insert({i, j});
            keep_going = visit(s);
            return;
        }
        auto& chosen = rows[static_cast<std::size_t>(row - 1)];
        auto pick = [&](auto&& pick_self, int from) -> void {
            if (!keep_going) return;
            if (static_cast<int>(chosen.size()) == h) {
                // Every column must still be able to reach weight k with the rows left.
                for (int j = 1; j <= n; ++j)
                    if (k - col_count[static_cast<std::size_t>(j)] > m - row) return;
                self(self, row + 1);
                return;
            }
            for (int j = from; j <= n; ++j) {
                if (col_count[static_cast<std::size_t>(j)] == k) continue;
                chosen.push_back(j);
                ++col_count[static_cast<std::size_t>(j)];
                pick_self(pick_self, j + 1);
                --col_count[static_cast<std::size_t>(j)];
                chosen.pop_back();
            }
        };
        pick(pick, 1);
    };
    rec(rec, 1);
    return keep_going;
}

} // namespace detail

/// Backtracking search for relative Heffter arrays H_t(m,n;h,k) over Z_{2nk+t}.
///
/// Each class {x,-x} outside J is used once; the last cell of a row or column
/// is forced by the zero-sum condition. Arrays related by global negation are
/// reported once (first entry in [1, (v-1)/2]). Results come in depth-first
/// order and every one is validated before it is returned.
inline std::vector<PartiallyFilledArray> search_heffter(int m, int n, int h, int k, int t, std::size_t limit,
                                                        const SearchOptions& opts = {}) {
    if (m * h != n * k) throw HypothesisError("mh != nk (" + std::to_string(m * h) + " vs " + std::to_string(n * k) + ")");
    if (h < 3 || h > n || k < 3 || k > m) throw HypothesisError("need 3 <= h <= n and 3 <= k <= m");
    if (t < 1 || (2 * n * k) % t != 0) throw HypothesisError("t must divide 2nk");
    const int v = 2 * n * k + t;
    std::vector<PartiallyFilledArray> out;
    if (limit == 0) return out;

    auto run_on = [&](const Skeleton& s) {
        detail::HeffterSearch search(s, v, t, limit - out.size());
        for (auto& a : search.run()) out.push_back(std::move(a));
        return out.size() < limit;
    };

    if (opts.skeleton) {
        const Skeleton& s = *opts.skeleton;
        if (s.rows() != m || s.cols() != n) throw HypothesisError("skeleton constraint has wrong dimensions");
        for (int i = 1; i <= m; ++i)
            if (static_cast<int>(s.row_weight(i)) != h) throw HypothesisError("skeleton row weight differs from h");
        for (int j = 1; j <= n; ++j)
            if (static_cast<int>(s.col_weight(j)) != k) throw HypothesisError("skeleton column weight differs from k");
        run_on(s);
    } else {
        detail::for_each_skeleton(m, n, h, k, run_on);
    }
    return out;
}

} // namespace heffter
