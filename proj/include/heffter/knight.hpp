#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heffter/error.hpp"
#include "heffter/modular.hpp"
#include "heffter/orientation.hpp"
#include "heffter/parallel.hpp"
#include "heffter/permutation.hpp"
#include "heffter/pfarray.hpp"

namespace heffter {

/// Toroidal neighbour tables for the filled cells of a skeleton.
///
/// Cells are numbered in row-major order. For each cell we keep the next and
/// previous filled cell in its row and in its column (wrapping around), so one
/// step of S_{R,C} costs two table lookups.
class KnightBoard {
public:
    explicit KnightBoard(const Skeleton& s) : rows_(s.rows()), cols_(s.cols()), cells_(s.cells()) {
        if (cells_.empty()) throw Error("knight's tour on an empty skeleton");
        const auto n = cells_.size();
        row_next_.resize(n);
        row_prev_.resize(n);
        col_next_.resize(n);
        col_prev_.resize(n);
        index_.assign(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_), kNone);
        for (std::size_t i = 0; i < n; ++i) index_[slot(cells_[i])] = static_cast<int>(i);

        for (int r = 1; r <= rows_; ++r) {
            std::vector<int> line;
            for (int c = 1; c <= cols_; ++c)
                if (int id = index_[slot({r, c})]; id != kNone) line.push_back(id);
            link(line, row_next_, row_prev_);
        }
        for (int c = 1; c <= cols_; ++c) {
            std::vector<int> line;
            for (int r = 1; r <= rows_; ++r)
                if (int id = index_[slot({r, c})]; id != kNone) line.push_back(id);
            link(line, col_next_, col_prev_);
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return cells_.size(); }
    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] const std::vector<Cell>& cells() const noexcept { return cells_; }
    [[nodiscard]] Cell cell(int id) const { return cells_[static_cast<std::size_t>(id)]; }

    [[nodiscard]] int id_of(Cell c) const {
        if (c.row < 1 || c.row > rows_ || c.col < 1 || c.col > cols_ || index_[slot(c)] == kNone)
            throw Error("cell (" + std::to_string(c.row) + "," + std::to_string(c.col) + ") is not filled");
        return index_[slot(c)];
    }

    /// One application of S_{R,C}: along row i in direction r_i to the next filled
    /// column j', then along column j' in direction c_{j'} to the next filled row.
    [[nodiscard]] int step(const OrientationPair& rc, int id) const {
        const auto u = static_cast<std::size_t>(id);
        const int mid = rc.R[static_cast<std::size_t>(cells_[u].row - 1)] == 1 ? row_next_[u] : row_prev_[u];
        const auto w = static_cast<std::size_t>(mid);
        return rc.C[static_cast<std::size_t>(cells_[w].col - 1)] == 1 ? col_next_[w] : col_prev_[w];
    }

    /// Length of the orbit of `id` under S_{R,C}.
    [[nodiscard]] std::size_t period(const OrientationPair& rc, int id) const {
        std::size_t len = 0;
        int cur = id;
        do {
            cur = step(rc, cur);
            ++len;
        } while (cur != id && len <= cells_.size());
        if (cur != id) throw InternalError("successor map is not a bijection");
        return len;
    }

    [[nodiscard]] bool is_solution(const OrientationPair& rc) const { return period(rc, 0) == cells_.size(); }

private:
    static constexpr int kNone = -1;

    [[nodiscard]] std::size_t slot(Cell c) const {
        return static_cast<std::size_t>(c.row - 1) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c.col - 1);
    }

    static void link(const std::vector<int>& line, std::vector<int>& next, std::vector<int>& prev) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            const auto a = static_cast<std::size_t>(line[i]);
            next[a] = line[(i + 1) % line.size()];
            prev[a] = line[(i + line.size() - 1) % line.size()];
        }
    }

    int rows_;
    int cols_;
    std::vector<Cell> cells_;
    std::vector<int> index_;
    std::vector<int> row_next_, row_prev_, col_next_, col_prev_;
};

inline Cell successor(const Skeleton& s, const OrientationPair& rc, Cell c) {
    rc.validate(s.rows(), s.cols());
    const KnightBoard b(s);
    return b.cell(b.step(rc, b.id_of(c)));
}

struct TourResult {
    Cell start;
    std::vector<Cell> visited;  ///< orbit of start, step 0 first
    std::size_t period = 0;
    bool covers_all = false;
};

/// Iterates S_{R,C} from `start` until it recurs.
inline TourResult tour(const Skeleton& s, const OrientationPair& rc, Cell start) {
    rc.validate(s.rows(), s.cols());
    const KnightBoard b(s);
    TourResult out{start, {}, 0, false};
    const int first = b.id_of(start);
    int cur = first;
    do {
        out.visited.push_back(b.cell(cur));
        cur = b.step(rc, cur);
    } while (cur != first);
    out.period = out.visited.size();
    out.covers_all = out.period == b.size();
    return out;
}

/// True iff the tour from any filled cell covers every filled cell.
inline bool is_solution(const Skeleton& s, const OrientationPair& rc) {
    rc.validate(s.rows(), s.cols());
    return KnightBoard(s).is_solution(rc);
}

/// Swaps the roles of the two orientation vectors: (R, C) becomes (C, R).
/// Only defined for square cyclically diagonal skeletons with trivial R.
inline OrientationPair swap(const OrientationPair& rc, const Skeleton& s) {
    if (!s.is_square()) throw HypothesisError("swap needs a square skeleton");
    const DiagonalProfile p = classify_diagonality(s);
    if (!p.cyclic) throw HypothesisError("swap needs a cyclically diagonal skeleton");
    if (!rc.r_trivial()) throw HypothesisError("swap needs R = (1,...,1)");
    return {rc.C, rc.R};
}

/// Verdict of the characterization for k-diagonal skeletons with trivial R.
struct WidthCharacterization {
    bool classes_covered = false;  ///< E meets every class mod gcd(n, s_j + 1) for every strip width s_j
    bool diagonal_hit = false;     ///< the tour from (1,1) passes every (e,e), e in E
    [[nodiscard]] bool solution() const noexcept { return classes_covered && diagonal_hit; }
};

/// True iff E meets every residue class modulo d.
inline bool covers_classes(std::span<const int> E, int d) {
    std::vector<bool> hit(static_cast<std::size_t>(d), false);
    for (int e : E) hit[static_cast<std::size_t>(mod(e, d))] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

inline WidthCharacterization check_char_width(const Skeleton& s, std::span<const int> E) {
    const DiagonalProfile p = classify_diagonality(s);
    const int n = p.n;
    const int k = p.k();
    if (k < 3 || k % 2 == 0) throw HypothesisError("width characterization needs odd k >= 3 (k=" + std::to_string(k) + ")");
    if (n <= k) throw HypothesisError("width characterization needs n > k");
    if (!p.has_diagonal(1)) throw HypothesisError("width characterization needs D_1 filled");

    WidthCharacterization out;
    out.classes_covered = !E.empty();
    for (const auto& strip : p.strips)
        if (!covers_classes(E, strip.class_modulus)) out.classes_covered = false;

    const auto rc = OrientationPair::from_minus_positions(n, n, E);
    const KnightBoard b(s);
    std::vector<bool> on_orbit(b.size(), false);
    const int start = b.id_of({1, 1});
    int cur = start;
    do {
        on_orbit[static_cast<std::size_t>(cur)] = true;
        cur = b.step(rc, cur);
    } while (cur != start);
    out.diagonal_hit = std::all_of(E.begin(), E.end(), [&](int e) { return on_orbit[static_cast<std::size_t>(b.id_of({e, e}))]; });
    return out;
}

namespace detail {

inline std::vector<int> sorted_positions(std::span<const int> E, int n) {
    std::vector<int> e(E.begin(), E.end());
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw Error("minus positions repeat");
    if (!e.empty() && (e.front() < 1 || e.back() > n)) throw Error("minus positions must lie in [1,n]");
    return e;
}

} // namespace detail

/// The two permutations of E used by the characterization of cyclically k-diagonal skeletons:
/// the first sends e to the first element of E met stepping back by k-1 (mod n), the
/// second shifts the index in sorted E by k-1 (mod |E|).
inline std::pair<Permutation, Permutation> omega_pair_cyclic(int n, int k, std::span<const int> E_in) {
    if (k < 3 || k % 2 == 0) throw HypothesisError("cyclic characterization needs odd k >= 3");
    if (n <= k) throw HypothesisError("cyclic characterization needs n > k");
    const auto E = detail::sorted_positions(E_in, n);
    if (E.empty()) throw HypothesisError("cyclic characterization needs E nonempty");
    std::vector<bool> member(static_cast<std::size_t>(n) + 1, false);
    for (int e : E) member[static_cast<std::size_t>(e)] = true;

    std::vector<int> back(E.size());
    for (std::size_t i = 0; i < E.size(); ++i) {
        int x = E[i];
        do {
            x = mod1(x - (k - 1), n);
        } while (!member[static_cast<std::size_t>(x)]);
        back[i] = x;
    }
    const auto r = E.size();
    std::vector<int> shift(r);
    for (std::size_t i = 0; i < r; ++i) shift[i] = E[(i + static_cast<std::size_t>(k - 1)) % r];
    return {Permutation::from_pairs(E, back), Permutation::from_pairs(E, shift)};
}

/// E covers all classes mod gcd(n, k-1) and omega_2 o omega_1 is a single r-cycle.
inline bool check_char_cyclic(int n, int k, std::span<const int> E) {
    if (E.empty()) {
        if (k < 3 || k % 2 == 0 || n <= k) throw HypothesisError("cyclic characterization needs odd k >= 3 and n > k");
        return false;
    }
    const auto [w1, w2] = omega_pair_cyclic(n, k, E);
    return covers_classes(E, std::gcd(n, k - 1)) && (w2 * w1).is_single_cycle();
}

/// Every solution of P(skel), in lexicographic order over (R, C) with +1 before -1.
/// With `trivial_r` only R = (1,...,1) is tried. Throws if the candidate count exceeds `budget`.
inline std::vector<OrientationPair> enumerate_solutions(const Skeleton& s, bool trivial_r, std::uint64_t budget = 1ULL << 22) {
    const int m = s.rows();
    const int n = s.cols();
    const int bits = trivial_r ? n : m + n;
    if (bits >= 63 || (1ULL << bits) > budget)
        throw BudgetExceeded("enumeration needs 2^" + std::to_string(bits) + " candidates, budget is " + std::to_string(budget));
    const KnightBoard board(s);
    const std::uint64_t total = 1ULL << bits;
    return parallel_collect<OrientationPair>(total, [&](std::uint64_t b, std::uint64_t e, std::vector<OrientationPair>& out) {
        OrientationPair rc = OrientationPair::trivial(m, n);
        for (std::uint64_t mask = b; mask < e; ++mask) {
            // Bit (bits-1-p) encodes position p, so the leftmost entry varies slowest.
            for (int p = 0; p < bits; ++p) {
                const int val = (mask >> (bits - 1 - p)) & 1ULL ? -1 : 1;
                if (trivial_r) rc.C[static_cast<std::size_t>(p)] = val;
                else if (p < m) rc.R[static_cast<std::size_t>(p)] = val;
                else rc.C[static_cast<std::size_t>(p - m)] = val;
            }
            if (board.is_solution(rc)) out.push_back(rc);
        }
    });
}

} // namespace heffter
