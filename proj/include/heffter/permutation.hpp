#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "heffter/error.hpp"

namespace heffter {

/// A bijection on a finite set of integers.
///
/// The ground set is stored sorted and images are kept in a parallel array, so
/// lookups are a binary search. Composition follows the usual convention
/// `(f * g)(x) = f(g(x))`.
class Permutation {
public:
    Permutation() = default;

    static Permutation identity(std::vector<int> ground) {
        std::sort(ground.begin(), ground.end());
        if (std::adjacent_find(ground.begin(), ground.end()) != ground.end())
            throw Error("permutation ground set has repeated elements");
        Permutation p;
        p.image_ = ground;
        p.domain_ = std::move(ground);
        return p;
    }

    /// Builds the permutation mapping `from[i]` to `to[i]`.
    static Permutation from_pairs(std::span<const int> from, std::span<const int> to) {
        if (from.size() != to.size()) throw Error("permutation: mismatched pair lists");
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(from.size());
        for (std::size_t i = 0; i < from.size(); ++i) pairs.emplace_back(from[i], to[i]);
        std::sort(pairs.begin(), pairs.end());
        Permutation p;
        for (auto [a, b] : pairs) {
            if (!p.domain_.empty() && p.domain_.back() == a)
                throw Error("permutation: element " + std::to_string(a) + " mapped twice");
            p.domain_.push_back(a);
            p.image_.push_back(b);
        }
        std::vector<int> sorted_images = p.image_;
        std::sort(sorted_images.begin(), sorted_images.end());
        if (sorted_images != p.domain_) throw Error("permutation: images are not a rearrangement of the domain");
        return p;
    }

    /// Product of disjoint cycles; each inner vector `(a, b, c)` maps a->b->c->a.
    static Permutation from_cycles(const std::vector<std::vector<int>>& cycles) {
        std::vector<int> from;
        std::vector<int> to;
        for (const auto& cyc : cycles) {
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                from.push_back(cyc[i]);
                to.push_back(cyc[(i + 1) % cyc.size()]);
            }
        }
        return from_pairs(from, to);
    }

    [[nodiscard]] std::size_t size() const noexcept { return domain_.size(); }
    [[nodiscard]] const std::vector<int>& domain() const noexcept { return domain_; }

    [[nodiscard]] bool contains(int x) const noexcept {
        return std::binary_search(domain_.begin(), domain_.end(), x);
    }

    [[nodiscard]] int operator()(int x) const {
        const auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
        if (it == domain_.end() || *it != x)
            throw Error("permutation: " + std::to_string(x) + " is outside the ground set");
        return image_[static_cast<std::size_t>(it - domain_.begin())];
    }

    [[nodiscard]] Permutation inverse() const {
        return from_pairs(image_, domain_);
    }

    /// `e`-th power; negative exponents use the inverse.
    [[nodiscard]] Permutation power(long long e) const {
        Permutation result = identity(domain_);
        const Permutation base = e < 0 ? inverse() : *this;
        for (const auto& cyc : base.cycles()) {
            const auto len = static_cast<long long>(cyc.size());
            const long long shift = (e < 0 ? -e : e) % len;
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                const auto j = static_cast<std::size_t>((static_cast<long long>(i) + shift) % len);
                result.image_[result.index_of(cyc[i])] = cyc[j];
            }
        }
        return result;
    }

    /// Disjoint cycles, each starting at its least element, ordered by that element.
    /// Fixed points are included as 1-cycles.
    [[nodiscard]] std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(domain_.size(), false);
        for (std::size_t s = 0; s < domain_.size(); ++s) {
            if (seen[s]) continue;
            std::vector<int> cyc;
            std::size_t i = s;
            while (!seen[i]) {
                seen[i] = true;
                cyc.push_back(domain_[i]);
                i = index_of(image_[i]);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    [[nodiscard]] std::size_t cycle_count() const { return cycles().size(); }

    /// True iff the permutation is one cycle through every element of a nonempty ground set.
    [[nodiscard]] bool is_single_cycle() const {
        if (domain_.empty()) return false;
        std::size_t i = 0;
        std::size_t steps = 0;
        do {
            i = index_of(image_[i]);
            ++steps;
        } while (i != 0);
        return steps == domain_.size();
    }

    [[nodiscard]] bool is_identity() const noexcept { return domain_ == image_; }

    [[nodiscard]] std::string to_string() const {
        std::ostringstream os;
        for (const auto& cyc : cycles()) {
            os << '(';
            for (std::size_t i = 0; i < cyc.size(); ++i) os << (i ? "," : "") << cyc[i];
            os << ')';
        }
        return os.str();
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

    /// `f * g` is "g first, then f".
    friend Permutation operator*(const Permutation& f, const Permutation& g) {
        if (f.domain_ != g.domain_) throw Error("permutation composition: ground sets differ");
        Permutation p;
        p.domain_ = g.domain_;
        p.image_.reserve(g.image_.size());
        for (int y : g.image_) p.image_.push_back(f(y));
        return p;
    }

private:
    [[nodiscard]] std::size_t index_of(int x) const {
        return static_cast<std::size_t>(std::lower_bound(domain_.begin(), domain_.end(), x) - domain_.begin());
    }

    std::vector<int> domain_;
    std::vector<int> image_;
};

} // namespace heffter
