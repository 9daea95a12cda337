#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heffter/embedding.hpp"
#include "heffter/error.hpp"
#include "heffter/heffter_array.hpp"
#include "heffter/knight.hpp"
#include "heffter/modular.hpp"
#include "heffter/pfarray.hpp"

namespace heffter {

enum class MapKind { Preserving, Reversing, NotIso };

inline std::string to_string(MapKind k) {
    switch (k) {
        case MapKind::Preserving: return "preserving";
        case MapKind::Reversing: return "reversing";
        case MapKind::NotIso: return "not-isomorphic";
    }
    return "?";
}

/// Vertex bijection sigma on Z_v with the relation it satisfies.
struct EmbeddingMap {
    std::vector<int> sigma;
    MapKind kind = MapKind::NotIso;

    [[nodiscard]] int operator()(int x) const { return sigma[static_cast<std::size_t>(x)]; }
    friend bool operator==(const EmbeddingMap&, const EmbeddingMap&) = default;
};

inline std::vector<int> identity_map(int v) {
    std::vector<int> s(static_cast<std::size_t>(v));
    for (int x = 0; x < v; ++x) s[static_cast<std::size_t>(x)] = x;
    return s;
}

inline std::vector<int> translation_map(int v, int g) {
    std::vector<int> s(static_cast<std::size_t>(v));
    for (int x = 0; x < v; ++x) s[static_cast<std::size_t>(x)] = static_cast<int>(mod(x + g, v));
    return s;
}

namespace detail {

inline bool is_bijection(const std::vector<int>& s, int v) {
    if (static_cast<int>(s.size()) != v) return false;
    std::vector<bool> seen(static_cast<std::size_t>(v), false);
    for (int y : s) {
        if (y < 0 || y >= v || seen[static_cast<std::size_t>(y)]) return false;
        seen[static_cast<std::size_t>(y)] = true;
    }
    return true;
}

/// Does sigma o rho = rho' o sigma (or rho'^-1 o sigma) hold on every dart?
inline bool conjugates(const CombinatorialEmbedding& a, const CombinatorialEmbedding& b, const std::vector<int>& s, bool reversed) {
    const int v = a.modulus();
    const auto& S = a.connection_set();
    const Permutation rel = reversed ? b.rho0().inverse() : b.rho0();
    for (int x = 0; x < v; ++x) {
        const int sx = s[static_cast<std::size_t>(x)];
        for (int d : S) {
            const int y = static_cast<int>(mod(x + d, v));
            const int lhs = s[static_cast<std::size_t>(a.rotate(x, y))];
            const int diff = static_cast<int>(mod(s[static_cast<std::size_t>(y)] - sx, v));
            if (!b.adjacent(0, diff) || lhs != static_cast<int>(mod(sx + rel(diff), v))) return false;
        }
    }
    return true;
}

} // namespace detail

/// Classifies sigma as an orientation preserving or reversing isomorphism a -> b, or neither.
inline MapKind verify_map(const CombinatorialEmbedding& a, const CombinatorialEmbedding& b, const std::vector<int>& s) {
    if (a.modulus() != b.modulus()) throw Error("embeddings over different moduli");
    const int v = a.modulus();
    if (!detail::is_bijection(s, v)) return MapKind::NotIso;
    if (a.degree() != b.degree()) return MapKind::NotIso;
    for (int x = 0; x < v; ++x)
        for (int d : a.connection_set())
            if (!b.adjacent(s[static_cast<std::size_t>(x)], s[static_cast<std::size_t>(mod(x + d, v))])) return MapKind::NotIso;
    if (detail::conjugates(a, b, s, false)) return MapKind::Preserving;
    if (detail::conjugates(a, b, s, true)) return MapKind::Reversing;
    return MapKind::NotIso;
}

namespace detail {

/// Extends sigma(0)=0, sigma(first)=image around every vertex using the rotation
/// relation for `kind`. Returns nullopt on the first contradiction.
inline std::optional<std::vector<int>> propagate(const CombinatorialEmbedding& a, const CombinatorialEmbedding& b,
                                                 const Permutation& b_rho0, int first, int image) {
    const int v = a.modulus();
    std::vector<int> s(static_cast<std::size_t>(v), -1);
    std::vector<int> used(static_cast<std::size_t>(v), -1);
    auto assign = [&](int x, int y) {
        auto& sx = s[static_cast<std::size_t>(x)];
        if (sx >= 0) return sx == y;
        if (used[static_cast<std::size_t>(y)] >= 0) return false;
        sx = y;
        used[static_cast<std::size_t>(y)] = x;
        return true;
    };
    if (!assign(0, 0) || !assign(first, image)) return std::nullopt;

    // Walk around each vertex whose image and one neighbour's image are known.
    std::vector<std::pair<int, int>> queue{{0, first}};
    std::vector<bool> done(static_cast<std::size_t>(v), false);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const auto [x, y0] = queue[qi];
        if (done[static_cast<std::size_t>(x)]) continue;
        done[static_cast<std::size_t>(x)] = true;
        const int sx = s[static_cast<std::size_t>(x)];
        int y = y0;
        for (std::size_t step = 0; step < a.degree(); ++step) {
            const int diff = static_cast<int>(mod(s[static_cast<std::size_t>(y)] - sx, v));
            if (!b.adjacent(0, diff)) return std::nullopt;
            const int ny = a.rotate(x, y);
            const int nimg = static_cast<int>(mod(sx + b_rho0(diff), v));
            if (!assign(ny, nimg)) return std::nullopt;
            if (!done[static_cast<std::size_t>(y)]) queue.emplace_back(y, x);
            y = ny;
        }
    }
    if (std::find(s.begin(), s.end(), -1) != s.end()) return std::nullopt;
    return s;
}

inline int first_neighbour(const CombinatorialEmbedding& a) { return a.connection_set().front(); }

} // namespace detail

/// All candidate maps a -> b fixing 0: one propagation per image of a's least
/// neighbour and per kind; each survivor is checked with verify_map.
inline std::vector<EmbeddingMap> isomorphisms_fixing_zero(const CombinatorialEmbedding& a, const CombinatorialEmbedding& b,
                                                          bool stop_at_first = false) {
    if (a.modulus() != b.modulus()) throw Error("embeddings over different moduli");
    std::vector<EmbeddingMap> out;
    if (a.degree() != b.degree()) return out;
    const int first = detail::first_neighbour(a);
    const Permutation inv = b.rho0().inverse();
    for (MapKind kind : {MapKind::Preserving, MapKind::Reversing}) {
        const Permutation& rel = kind == MapKind::Preserving ? b.rho0() : inv;
        for (int c : b.connection_set()) {
            auto s = detail::propagate(a, b, rel, first, c);
            if (!s) continue;
            const MapKind got = verify_map(a, b, *s);
            if (got != kind) continue;
            out.push_back({std::move(*s), kind});
            if (stop_at_first) return out;
        }
    }
    return out;
}

/// First isomorphism a -> b with sigma(0) = 0 (preserving maps tried first, then by image of a's least neighbour).
inline std::optional<EmbeddingMap> find_isomorphism(const CombinatorialEmbedding& a, const CombinatorialEmbedding& b) {
    auto maps = isomorphisms_fixing_zero(a, b, true);
    if (maps.empty()) return std::nullopt;
    return std::move(maps.front());
}

struct StabilizerGroup {
    std::vector<EmbeddingMap> elements;
    std::size_t aut0 = 0;
    std::size_t aut0_plus = 0;
};

inline StabilizerGroup stabilizer(const CombinatorialEmbedding& e) {
    StabilizerGroup g;
    g.elements = isomorphisms_fixing_zero(e, e);
    g.aut0 = g.elements.size();
    g.aut0_plus = static_cast<std::size_t>(
        std::count_if(g.elements.begin(), g.elements.end(), [](const EmbeddingMap& m) { return m.kind == MapKind::Preserving; }));
    return g;
}

/// phi = sigma o tau_g^-1 o sigma^-1 o tau_{sigma(g)}, certified to lie in Aut_0(b).
inline EmbeddingMap phi(const std::vector<int>& sigma, int g, const CombinatorialEmbedding& a, const CombinatorialEmbedding& b) {
    const int v = a.modulus();
    if (b.modulus() != v || !detail::is_bijection(sigma, v)) throw Error("phi needs a bijection on Z_v");
    if (sigma[0] != 0) throw HypothesisError("phi needs sigma(0) = 0");
    std::vector<int> inv(static_cast<std::size_t>(v));
    for (int x = 0; x < v; ++x) inv[static_cast<std::size_t>(sigma[static_cast<std::size_t>(x)])] = x;
    const int sg = sigma[static_cast<std::size_t>(mod(g, v))];
    std::vector<int> out(static_cast<std::size_t>(v));
    for (int x = 0; x < v; ++x) {
        const int y = inv[static_cast<std::size_t>(mod(x + sg, v))];
        out[static_cast<std::size_t>(x)] = sigma[static_cast<std::size_t>(mod(y - g, v))];
    }
    const MapKind kind = verify_map(b, b, out);
    if (kind == MapKind::NotIso || out[0] != 0) throw InternalError("phi is not an automorphism fixing 0");
    return {std::move(out), kind};
}

struct IsoClass {
    std::size_t representative = 0;         ///< index into the deduplicated input
    std::vector<std::size_t> members;       ///< indices, representative first
    std::vector<EmbeddingMap> maps;         ///< member -> representative, aligned with members
    std::size_t aut0 = 0;
    std::size_t aut0_plus = 0;
    std::size_t cap = 0;                    ///< min(2 |Aut_0(rep)| (v - t), 2 (v - t)^2)
};

struct ClassificationResult {
    std::size_t input_size = 0;
    std::size_t distinct = 0;               ///< after removing equal rotation maps
    std::vector<std::size_t> kept;          ///< input indices of the distinct members
    std::vector<IsoClass> classes;
    std::size_t neighbourhood = 0;          ///< |N(0)| = v - t
    std::size_t general_cap = 0;            ///< 4 |N(0)|^2
    std::size_t translation_cap = 0;        ///< 2 |N(0)|^2
};

/// Greedy isomorphism partition. Members are processed in order of their
/// rotation keys, so every class is represented by its least key and the
/// partition does not depend on input order. Throws if a class exceeds the
/// family bound, which would contradict the counting argument.
inline ClassificationResult classify(const std::vector<CombinatorialEmbedding>& family) {
    ClassificationResult res;
    res.input_size = family.size();
    if (family.empty()) return res;
    const int v = family.front().modulus();
    const int t = family.front().subgroup_order();
    for (const auto& e : family)
        if (e.modulus() != v || e.subgroup_order() != t || e.degree() != family.front().degree())
            throw Error("classify: family mixes parameters");

    std::vector<std::size_t> order(family.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return family[x].rotation_key() < family[y].rotation_key(); });
    for (std::size_t i = 0; i < order.size(); ++i)
        if (i == 0 || family[order[i]].rotation_key() != family[order[i - 1]].rotation_key()) res.kept.push_back(order[i]);
    res.distinct = res.kept.size();

    res.neighbourhood = static_cast<std::size_t>(v - t);
    res.general_cap = 4 * res.neighbourhood * res.neighbourhood;
    res.translation_cap = 2 * res.neighbourhood * res.neighbourhood;

    for (std::size_t pos = 0; pos < res.kept.size(); ++pos) {
        const auto& e = family[res.kept[pos]];
        bool placed = false;
        for (auto& cls : res.classes) {
            if (auto m = find_isomorphism(e, family[res.kept[cls.representative]])) {
                cls.members.push_back(pos);
                cls.maps.push_back(std::move(*m));
                placed = true;
                break;
            }
        }
        if (placed) continue;
        IsoClass cls;
        cls.representative = pos;
        cls.members = {pos};
        cls.maps = {{identity_map(v), MapKind::Preserving}};
        const auto st = stabilizer(e);
        cls.aut0 = st.aut0;
        cls.aut0_plus = st.aut0_plus;
        cls.cap = std::min(2 * cls.aut0 * res.neighbourhood, res.translation_cap);
        res.classes.push_back(std::move(cls));
    }
    for (const auto& cls : res.classes)
        if (cls.members.size() > cls.cap)
            throw InternalError("isomorphism class of size " + std::to_string(cls.members.size()) + " exceeds the bound " +
                                std::to_string(cls.cap));
    return res;
}

/// One (array, solution) pair of a distinctness batch.
struct ArraySolution {
    PartiallyFilledArray array;
    OrientationPair solution;
};

struct DistinctnessCertificate {
    std::size_t count = 0;  ///< distinct (array, solution) pairs, hence distinct embeddings
    std::vector<std::string> checked;
};

/// Certifies that distinct (array, solution) pairs of the batch yield distinct
/// embeddings, without building them. Throws HypothesisError if some array is
/// not globally simple or k-diagonal, the batch does not share support and
/// skeleton, a pair is not a solution, or two arrays agree on no filled diagonal.
inline DistinctnessCertificate certify_distinct(const std::vector<ArraySolution>& batch) {
    DistinctnessCertificate cert;
    if (batch.empty()) return cert;
    const auto& a0 = batch.front().array;
    const Skeleton s0 = skeleton(a0);
    std::vector<int> e0 = a0.entries();
    std::sort(e0.begin(), e0.end());
    const DiagonalProfile prof = classify_diagonality(s0);
    for (const auto& [a, rc] : batch) {
        if (!validate_heffter(a).passed()) throw HypothesisError("batch member is not a Heffter array");
        if (a.fold() != 1) throw HypothesisError("batch member is not 1-fold");
        if (!is_globally_simple(a)) throw HypothesisError("batch member is not globally simple");
        if (skeleton(a) != s0) throw HypothesisError("batch members have different skeletons");
        std::vector<int> e = a.entries();
        std::sort(e.begin(), e.end());
        if (e != e0 || a.modulus() != a0.modulus()) throw HypothesisError("batch members have different supports");
        if (!is_solution(s0, rc)) throw HypothesisError("batch pair is not a solution of P(A)");
    }
    cert.checked = {"Heffter", "globally simple", "k-diagonal", "same support", "same skeleton", "solutions"};

    std::vector<const PartiallyFilledArray*> arrays;
    for (const auto& item : batch)
        if (std::none_of(arrays.begin(), arrays.end(), [&](const auto* p) { return *p == item.array; })) arrays.push_back(&item.array);
    const int n = s0.rows();
    for (std::size_t i = 0; i < arrays.size(); ++i) {
        for (std::size_t j = i + 1; j < arrays.size(); ++j) {
            const bool common = std::any_of(prof.filled.begin(), prof.filled.end(), [&](int d) {
                for (int r = 1; r <= n; ++r) {
                    const int c = mod1(r - d + 1, n);
                    if (arrays[i]->at(r, c) != arrays[j]->at(r, c)) return false;
                }
                return true;
            });
            if (!common) throw HypothesisError("two batch arrays agree on no filled diagonal");
        }
    }
    cert.checked.push_back("common diagonal");

    std::vector<std::pair<std::size_t, OrientationPair>> seen;
    for (const auto& [a, rc] : batch) {
        const auto idx = static_cast<std::size_t>(
            std::find_if(arrays.begin(), arrays.end(), [&](const auto* p) { return *p == a; }) - arrays.begin());
        if (std::none_of(seen.begin(), seen.end(), [&](const auto& s) { return s.first == idx && s.second == rc; }))
            seen.emplace_back(idx, rc);
    }
    cert.count = seen.size();
    return cert;
}

} // namespace heffter
