#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heffter/combinatorics.hpp"
#include "heffter/error.hpp"
#include "heffter/hypothesis.hpp"
#include "heffter/knight.hpp"
#include "heffter/modular.hpp"
#include "heffter/orientation.hpp"
#include "heffter/pfarray.hpp"

namespace heffter {

enum class FamilyId { ThreeDiag, PowerTwo, KSeven, PrimeN, PairsGeneral };

inline std::string to_string(FamilyId id) {
    switch (id) {
        case FamilyId::ThreeDiag: return "3diag";
        case FamilyId::PowerTwo: return "power2";
        case FamilyId::KSeven: return "k7";
        case FamilyId::PrimeN: return "prime";
        case FamilyId::PairsGeneral: return "pairs";
    }
    return "?";
}

inline FamilyId family_from_string(const std::string& s) {
    for (auto id : {FamilyId::ThreeDiag, FamilyId::PowerTwo, FamilyId::KSeven, FamilyId::PrimeN, FamilyId::PairsGeneral})
        if (to_string(id) == s) return id;
    throw Error("unknown family '" + s + "' (expected 3diag, power2, k7, prime or pairs)");
}

struct FamilyParams {
    FamilyId id = FamilyId::ThreeDiag;
    int n = 0;
    int k = 3;
    int i = 0;   ///< pairs only
    int s1 = 0;  ///< pairs only
    std::optional<int> r;  ///< subset size override (power2, prime, k7)
    bool force = false;    ///< evaluate even if hypotheses fail
};

/// A resolved family: which subsets E are taken, on which skeleton, with which symmetry images.
struct FamilySpec {
    FamilyId id = FamilyId::ThreeDiag;
    int n = 0;
    int k = 3;
    int i = 0;
    int s1 = 0;
    std::vector<int> pool;       ///< candidates for the free part of E
    std::vector<int> fixed;      ///< always in E
    std::vector<int> sizes;      ///< sizes of the free part that are enumerated
    std::vector<int> diagonals;  ///< filled diagonals of the target skeleton
    bool with_swap = false;      ///< also emit (C,R) images (cyclic skeletons only)
    Admissibility admissibility;
    std::optional<FamilyId> delegated_to;

    [[nodiscard]] Skeleton skeleton() const { return Skeleton::from_diagonals(n, diagonals); }
    [[nodiscard]] int variants() const noexcept { return with_swap ? 4 : 2; }
    [[nodiscard]] BigInt base_count() const {
        BigInt total = 0;
        for (int r : sizes) total += binom(static_cast<long long>(pool.size()), r);
        return total;
    }
    /// Number of orientation pairs the stream emits.
    [[nodiscard]] BigInt census() const { return base_count() * variants(); }
};

namespace detail {

inline std::vector<int> residues(int n, int modulus, int cls) {
    std::vector<int> out;
    for (int x = 1; x <= n; ++x)
        if (mod(x, modulus) == mod(cls, modulus)) out.push_back(x);
    return out;
}

inline std::vector<int> range_diagonals(int first, int last) {
    std::vector<int> d;
    for (int x = first; x <= last; ++x) d.push_back(x);
    return d;
}

/// Smallest integer r with lo_den*r >= n and hi_den*r <= n satisfying `pred`.
template <class Pred>
std::optional<int> pick_r(int n, int lo_den, int hi_den, Pred pred) {
    for (int r = static_cast<int>(ceil_div(n, lo_den)); static_cast<long long>(hi_den) * r <= n; ++r)
        if (r >= 1 && pred(r)) return r;
    return std::nullopt;
}

inline void gate(const FamilySpec& s, bool force) {
    if (!s.admissibility.ok() && !force)
        throw HypothesisError(to_string(s.id) + " family hypotheses fail: " + s.admissibility.failures());
}

inline int resolve_r(const FamilyParams& p, std::optional<int> fallback, const std::string& range, int coprime_with,
                     std::size_t pool_size) {
    int r = 0;
    if (p.r) {
        r = *p.r;
    } else if (fallback) {
        r = *fallback;
    } else {
        throw HypothesisError("no admissible r in " + range + "; pass r explicitly");
    }
    if (r < 1 || r > static_cast<int>(pool_size))
        throw HypothesisError("r=" + std::to_string(r) + " outside [1," + std::to_string(pool_size) + "]");
    if (coprime_with > 0 && std::gcd(r, coprime_with) != 1)
        throw HypothesisError("r=" + std::to_string(r) + " is not coprime with " + std::to_string(coprime_with));
    return r;
}

inline FamilySpec power2_spec(const FamilyParams& p, FamilyId id) {
    const int n = p.n, k = p.k;
    FamilySpec s;
    s.id = id;
    s.n = n;
    s.k = k;
    s.admissibility.add("k odd", k % 2 == 1);
    s.admissibility.add("k >= 3", k >= 3);
    s.admissibility.add("n odd", n % 2 == 1);
    s.admissibility.add("n >= 4k-3", n >= 4 * k - 3);
    s.admissibility.add("gcd(n,k-1) = 1", k >= 2 && std::gcd(n, k - 1) == 1);
    gate(s, p.force);
    if (k < 3 || n <= k) throw HypothesisError("power2 needs 3 <= k < n");
    s.pool = residues(n, k - 1, 1);
    s.diagonals = range_diagonals(1, k);
    s.with_swap = true;
    const auto fallback = pick_r(n, 4 * (k - 1), 2 * (k - 1), [&](int r) { return is_prime(r) && std::gcd(r, k - 2) == 1; });
    s.sizes = {resolve_r(p, fallback, "[n/(4(k-1)), n/(2(k-1))]", k - 2, s.pool.size())};
    return s;
}

} // namespace detail

/// Resolves parameters, checks the family's hypotheses and fixes r.
/// Throws HypothesisError on failed hypotheses unless `force` is set; an
/// inadmissible r (size or coprimality) always throws.
inline FamilySpec make_family(const FamilyParams& p) {
    const int n = p.n, k = p.k;
    if (n < 3) throw HypothesisError("family needs n >= 3");
    FamilySpec s;
    s.id = p.id;
    s.n = n;
    s.k = k;
    switch (p.id) {
        case FamilyId::ThreeDiag: {
            s.k = 3;
            s.admissibility.add("n odd", n % 2 == 1);
            detail::gate(s, p.force);
            s.pool = detail::residues(n, 2, 1);
            s.diagonals = detail::range_diagonals(1, 3);
            s.with_swap = true;
            for (int r = 1; r <= static_cast<int>(s.pool.size()); ++r) s.sizes.push_back(r);
            return s;
        }
        case FamilyId::PowerTwo:
            return detail::power2_spec(p, FamilyId::PowerTwo);
        case FamilyId::KSeven: {
            s.k = 7;
            if (n % 2 == 1 && std::gcd(n, 6) == 1) {
                FamilyParams q = p;
                q.k = 7;
                auto out = detail::power2_spec(q, FamilyId::KSeven);
                out.delegated_to = FamilyId::PowerTwo;
                return out;
            }
            s.admissibility.add("n odd", n % 2 == 1);
            s.admissibility.add("n > 120", n > 120);
            detail::gate(s, p.force);
            if (n % 2 == 0) throw HypothesisError("k7 family needs n odd");
            s.pool = detail::residues(n, 6, 3);
            s.fixed = {1, 2};
            s.diagonals = detail::range_diagonals(1, 7);
            s.with_swap = true;
            const auto fallback = detail::pick_r(n, 24, 12, [](int r) { return r % 5 == 4; });
            int r = 0;
            if (p.r) {
                r = *p.r;
                if (r % 5 != 4) throw HypothesisError("r=" + std::to_string(r) + " is not 4 mod 5");
            } else if (fallback) {
                r = *fallback;
            } else {
                throw HypothesisError("no r = 4 mod 5 in [n/24, n/12]; pass r explicitly");
            }
            if (r - 2 < 1 || r - 2 > static_cast<int>(s.pool.size()))
                throw HypothesisError("r=" + std::to_string(r) + " does not fit the 3 mod 6 residues");
            s.sizes = {r - 2};
            return s;
        }
        case FamilyId::PrimeN: {
            s.admissibility.add("k odd", k % 2 == 1);
            s.admissibility.add("k >= 5", k >= 5);
            s.admissibility.add("n prime", is_prime(n));
            s.admissibility.add("n > 8k", n > 8 * k);
            detail::gate(s, p.force);
            if (k < 5 || n <= k + 1) throw HypothesisError("prime family needs 5 <= k and n > k+1");
            s.pool = detail::residues(n, 2 * k, 1);
            s.diagonals = detail::range_diagonals(1, k - 3);
            for (int d : {k - 1, k, k + 1}) s.diagonals.push_back(d);
            const auto fallback = detail::pick_r(n, 8 * k, 4 * k, [&](int r) { return is_prime(r) && std::gcd(r, k - 2) == 1; });
            s.sizes = {detail::resolve_r(p, fallback, "[n/(8k), n/(4k)]", k - 2, s.pool.size())};
            return s;
        }
        case FamilyId::PairsGeneral: {
            s.i = p.i;
            s.s1 = p.s1;
            s.admissibility.add("k odd", k % 2 == 1);
            s.admissibility.add("k >= 3", k >= 3);
            s.admissibility.add("1 <= i <= k-2", p.i >= 1 && p.i <= k - 2);
            s.admissibility.add("s1 >= 1", p.s1 >= 1);
            s.admissibility.add("k + s1 <= n", k + p.s1 <= n);
            s.admissibility.add("gcd(n,2) = 1", n % 2 == 1);
            s.admissibility.add("gcd(n,s1) = 1", p.s1 >= 1 && std::gcd(n, p.s1) == 1);
            s.admissibility.add("gcd(n,k+s1-1) = 1", std::gcd(n, k + p.s1 - 1) == 1);
            detail::gate(s, p.force);
            if (p.i < 1 || p.i > k - 2 || p.s1 < 1 || k + p.s1 > n)
                throw HypothesisError("pairs family: diagonal pattern does not fit (need 1 <= i <= k-2, s1 >= 1, k+s1 <= n)");
            s.pool = detail::range_diagonals(1, n);
            s.diagonals = detail::range_diagonals(1, p.i);
            s.diagonals.push_back(p.i + p.s1);
            for (int d = p.i + p.s1 + 2; d <= k + p.s1; ++d) s.diagonals.push_back(d);
            s.sizes = {2};
            return s;
        }
    }
    throw InternalError("unhandled family");
}

/// True iff `skel` has exactly the family's diagonal pattern.
inline bool matches_skeleton(const FamilySpec& s, const Skeleton& skel) { return skel == s.skeleton(); }

/// Lazy stream over a family's orientation pairs: for each subset E (sizes
/// ascending, lexicographic within a size) it yields (1, C_E), (-1, -C_E) and,
/// on cyclic skeletons, (C_E, 1) and (-C_E, -1).
class FamilyStream {
public:
    explicit FamilyStream(FamilySpec spec) : spec_(std::move(spec)) { open_size(); }

    [[nodiscard]] const FamilySpec& spec() const noexcept { return spec_; }

    /// Next subset E (fixed part included, sorted), or nullopt at the end.
    std::optional<std::vector<int>> next_base() {
        while (cursor_ && cursor_->done()) {
            ++size_pos_;
            open_size();
        }
        if (!cursor_) return std::nullopt;
        std::vector<int> E = spec_.fixed;
        for (int ix : cursor_->indices()) E.push_back(spec_.pool[static_cast<std::size_t>(ix)]);
        std::sort(E.begin(), E.end());
        cursor_->advance();
        return E;
    }

    std::optional<OrientationPair> next() {
        if (pending_.empty()) {
            auto E = next_base();
            if (!E) return std::nullopt;
            const int n = spec_.n;
            const auto base = OrientationPair::from_minus_positions(n, n, *E);
            pending_.push_back(base);
            pending_.push_back(negate(base));
            if (spec_.with_swap) {
                const OrientationPair swapped{base.C, base.R};
                pending_.push_back(swapped);
                pending_.push_back(negate(swapped));
            }
            std::reverse(pending_.begin(), pending_.end());
        }
        auto out = std::move(pending_.back());
        pending_.pop_back();
        return out;
    }

private:
    void open_size() {
        if (size_pos_ < spec_.sizes.size()) cursor_.emplace(static_cast<int>(spec_.pool.size()), spec_.sizes[size_pos_]);
        else cursor_.reset();
    }

    FamilySpec spec_;
    std::size_t size_pos_ = 0;
    std::optional<CombinationCursor> cursor_;
    std::vector<OrientationPair> pending_;
};

inline FamilyStream gen_family(const FamilyParams& p) { return FamilyStream(make_family(p)); }

inline FamilyStream gen_family_3diag(int n, bool force = false) {
    return gen_family({FamilyId::ThreeDiag, n, 3, 0, 0, std::nullopt, force});
}
inline FamilyStream gen_family_power2(int n, int k, std::optional<int> r = std::nullopt, bool force = false) {
    return gen_family({FamilyId::PowerTwo, n, k, 0, 0, r, force});
}
inline FamilyStream gen_family_k7(int n, std::optional<int> r = std::nullopt, bool force = false) {
    return gen_family({FamilyId::KSeven, n, 7, 0, 0, r, force});
}
inline FamilyStream gen_family_prime(int n, int k, std::optional<int> r = std::nullopt, bool force = false) {
    return gen_family({FamilyId::PrimeN, n, k, 0, 0, r, force});
}
inline FamilyStream gen_family_pairs(int n, int k, int i, int s1, bool force = false) {
    return gen_family({FamilyId::PairsGeneral, n, k, i, s1, std::nullopt, force});
}

/// `count` pairs spread evenly over the stream (positions floor(j * total / count)).
inline std::vector<OrientationPair> sample_evenly(FamilyStream stream, std::uint64_t count) {
    const BigInt total_big = stream.spec().census();
    if (total_big > BigInt(std::numeric_limits<std::uint64_t>::max() / 2)) throw BudgetExceeded("family too large to sample");
    const auto total = static_cast<std::uint64_t>(total_big);
    std::vector<OrientationPair> out;
    if (total == 0 || count == 0) return out;
    count = std::min(count, total);
    std::uint64_t pos = 0;
    std::uint64_t j = 0;
    while (auto p = stream.next()) {
        if (j < count && pos == static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * total / count)) {
            out.push_back(std::move(*p));
            ++j;
        }
        ++pos;
    }
    return out;
}

} // namespace heffter
