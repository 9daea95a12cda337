#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heffter/error.hpp"
#include "heffter/modular.hpp"
#include "heffter/orientation.hpp"
#include "heffter/permutation.hpp"
#include "heffter/pfarray.hpp"

namespace heffter {

/// True iff x lies in the subgroup J of Z_v of order t, i.e. x is a multiple of v/t.
constexpr bool in_subgroup(std::int64_t x, int v, int t) noexcept { return mod(x, v) % (v / t) == 0; }

/// Outcome of checking the (relative, possibly multi-fold) Heffter conditions.
struct ValidationReport {
    int v = 0;
    int t = 1;
    int lambda = 1;
    std::optional<int> h;  ///< common row weight, when uniform
    std::optional<int> k;  ///< common column weight, when uniform

    bool weights_ok = false;
    std::vector<int> uneven_rows;
    std::vector<int> uneven_cols;

    bool support_checked = false;
    bool support_ok = false;
    std::vector<int> support_violations;  ///< residues x (least of the pair {x,-x}) counted wrongly
    std::vector<int> subgroup_hits;       ///< entries lying in J

    bool sums_checked = false;
    bool row_sums_ok = false;
    bool col_sums_ok = false;
    std::vector<int> nonzero_rows;
    std::vector<int> nonzero_cols;

    [[nodiscard]] bool passed() const noexcept {
        return weights_ok && support_ok && row_sums_ok && col_sums_ok;
    }
};

/// Checks weights, support and zero sums. Stops after the weight check if the
/// line weights are not uniform. Throws if v is inconsistent with 2nk/lambda + t.
inline ValidationReport validate_heffter(const PartiallyFilledArray& a) {
    ValidationReport rep;
    rep.v = a.modulus();
    rep.t = a.subgroup_order();
    rep.lambda = a.fold();
    const int v = rep.v;
    const int t = rep.t;
    if (v % t != 0) throw HypothesisError("t does not divide v");

    const Skeleton s = skeleton(a);
    const auto h0 = s.row_weight(1);
    const auto k0 = s.col_weight(1);
    for (int i = 1; i <= a.rows(); ++i)
        if (s.row_weight(i) != h0) rep.uneven_rows.push_back(i);
    for (int j = 1; j <= a.cols(); ++j)
        if (s.col_weight(j) != k0) rep.uneven_cols.push_back(j);
    rep.weights_ok = rep.uneven_rows.empty() && rep.uneven_cols.empty() && h0 > 0 && k0 > 0;
    if (!rep.weights_ok) return rep;
    rep.h = static_cast<int>(h0);
    rep.k = static_cast<int>(k0);

    const long long two_nk = 2LL * a.cols() * k0;
    if (two_nk % rep.lambda != 0 || two_nk / rep.lambda + t != v)
        throw HypothesisError("v=" + std::to_string(v) + " is inconsistent with 2nk/lambda + t = " +
                              std::to_string(two_nk) + "/" + std::to_string(rep.lambda) + " + " + std::to_string(t));

    std::vector<int> count(static_cast<std::size_t>(v), 0);
    for (int x : a.entries()) ++count[static_cast<std::size_t>(x)];
    rep.support_checked = true;
    for (int x = 0; x < v; ++x)
        if (count[static_cast<std::size_t>(x)] > 0 && in_subgroup(x, v, t)) rep.subgroup_hits.push_back(x);
    for (int x = 1; x < v; ++x) {
        const int neg = static_cast<int>(mod(-x, v));
        if (in_subgroup(x, v, t) || neg < x) continue;
        // The multiset {+-x : x in A} holds class {x,-x} as often as x or -x is an entry.
        const int c = count[static_cast<std::size_t>(x)] + (neg != x ? count[static_cast<std::size_t>(neg)] : 0);
        if (c != rep.lambda) rep.support_violations.push_back(x);
    }
    rep.support_ok = rep.support_violations.empty() && rep.subgroup_hits.empty();

    rep.sums_checked = true;
    for (int i = 1; i <= a.rows(); ++i) {
        long long sum = 0;
        for (int x : a.row_entries(i)) sum += x;
        if (mod(sum, v) != 0) rep.nonzero_rows.push_back(i);
    }
    for (int j = 1; j <= a.cols(); ++j) {
        long long sum = 0;
        for (int x : a.col_entries(j)) sum += x;
        if (mod(sum, v) != 0) rep.nonzero_cols.push_back(j);
    }
    rep.row_sums_ok = rep.nonzero_rows.empty();
    rep.col_sums_ok = rep.nonzero_cols.empty();
    return rep;
}

/// An arrangement (t_1, ..., t_k) of the entries of one line.
struct Ordering {
    std::vector<int> elements;
    int modulus = 1;

    [[nodiscard]] std::vector<int> partial_sums() const {
        std::vector<int> s;
        s.reserve(elements.size());
        std::int64_t acc = 0;
        for (int x : elements) {
            acc = mod(acc + x, modulus);
            s.push_back(static_cast<int>(acc));
        }
        return s;
    }

    [[nodiscard]] Ordering reversed() const {
        return {std::vector<int>(elements.rbegin(), elements.rend()), modulus};
    }
};

/// Simple iff the partial sums s_1, ..., s_k are pairwise distinct mod v.
inline bool is_simple_ordering(const Ordering& w) {
    auto s = w.partial_sums();
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
}

/// Per-line orderings together with their products omega_r and omega_c,
/// read as permutations of the entry values. Each line ordering becomes one
/// cycle mapping an entry to the one after it.
struct LineOrderingSet {
    std::vector<Ordering> rows;
    std::vector<Ordering> cols;

    /// Throws when entries repeat (multi-fold arrays), since values no longer name cells.
    [[nodiscard]] Permutation omega_r() const { return product(rows); }
    [[nodiscard]] Permutation omega_c() const { return product(cols); }

private:
    static Permutation product(const std::vector<Ordering>& lines) {
        std::vector<std::vector<int>> cyc;
        cyc.reserve(lines.size());
        for (const auto& l : lines) cyc.push_back(l.elements);
        try {
            return Permutation::from_cycles(cyc);
        } catch (const Error&) {
            throw Error("line orderings repeat an entry; they do not define a permutation of E(A)");
        }
    }
};

/// Natural orderings: rows left to right, columns top to bottom.
inline LineOrderingSet natural_orderings(const PartiallyFilledArray& a) {
    LineOrderingSet out;
    for (int i = 1; i <= a.rows(); ++i) out.rows.push_back({a.row_entries(i), a.modulus()});
    for (int j = 1; j <= a.cols(); ++j) out.cols.push_back({a.col_entries(j), a.modulus()});
    return out;
}

inline bool is_globally_simple(const PartiallyFilledArray& a) {
    const auto nat = natural_orderings(a);
    return std::all_of(nat.rows.begin(), nat.rows.end(), is_simple_ordering) &&
           std::all_of(nat.cols.begin(), nat.cols.end(), is_simple_ordering);
}

namespace detail {

inline std::optional<Ordering> first_simple_permutation(std::vector<int> elems, int v) {
    std::sort(elems.begin(), elems.end());
    do {
        Ordering w{elems, v};
        if (is_simple_ordering(w)) return w;
    } while (std::next_permutation(elems.begin(), elems.end()));
    return std::nullopt;
}

} // namespace detail

/// For every line, the lexicographically first simple ordering of its entries.
/// Returns nullopt if some line admits none (lines are searched independently).
inline std::optional<LineOrderingSet> find_simple_line_orderings(const PartiallyFilledArray& a) {
    LineOrderingSet out;
    for (int i = 1; i <= a.rows(); ++i) {
        auto w = detail::first_simple_permutation(a.row_entries(i), a.modulus());
        if (!w) return std::nullopt;
        out.rows.push_back(std::move(*w));
    }
    for (int j = 1; j <= a.cols(); ++j) {
        auto w = detail::first_simple_permutation(a.col_entries(j), a.modulus());
        if (!w) return std::nullopt;
        out.cols.push_back(std::move(*w));
    }
    return out;
}

/// Row i read left to right when R_i = +1 and right to left otherwise; column j
/// top to bottom when C_j = +1 and bottom to top otherwise.
inline LineOrderingSet orderings_from_orientations(const PartiallyFilledArray& a, const OrientationPair& rc) {
    rc.validate(a.rows(), a.cols());
    LineOrderingSet out = natural_orderings(a);
    for (std::size_t i = 0; i < out.rows.size(); ++i)
        if (rc.R[i] == -1) out.rows[i] = out.rows[i].reversed();
    for (std::size_t j = 0; j < out.cols.size(); ++j)
        if (rc.C[j] == -1) out.cols[j] = out.cols[j].reversed();
    return out;
}

/// Compatible iff omega_c o omega_r is a single cycle through all of E(A).
inline bool are_compatible(const Permutation& omega_r, const Permutation& omega_c) {
    if (omega_r.domain() != omega_c.domain()) throw Error("orderings act on different ground sets");
    return (omega_c * omega_r).is_single_cycle();
}

} // namespace heffter
