#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "heffter/error.hpp"
#include "heffter/heffter_array.hpp"
#include "heffter/knight.hpp"
#include "heffter/modular.hpp"
#include "heffter/orientation.hpp"
#include "heffter/permutation.hpp"
#include "heffter/pfarray.hpp"

namespace heffter {

/// Where an embedding came from, kept for distinctness bookkeeping.
struct Provenance {
    std::string array_id;
    OrientationPair rc;
};

/// Archdeacon map: rho0(a) = -omega_r(a) on E(A), rho0(a) = omega_c(-a) on -E(A).
/// Works on residues in [0, v).
inline Permutation build_rho0(const PartiallyFilledArray& a, const Permutation& omega_r, const Permutation& omega_c) {
    const int v = a.modulus();
    std::vector<int> E = a.entries();
    std::sort(E.begin(), E.end());
    if (omega_r.domain() != E || omega_c.domain() != E) throw Error("orderings do not act on E(A)");
    std::vector<int> from, to;
    for (int x : E) {
        if (in_subgroup(x, v, a.subgroup_order())) throw HypothesisError("entry " + std::to_string(x) + " lies in the subgroup J");
        from.push_back(x);
        to.push_back(static_cast<int>(mod(-static_cast<std::int64_t>(omega_r(x)), v)));
        const int neg = static_cast<int>(mod(-static_cast<std::int64_t>(x), v));
        from.push_back(neg);
        to.push_back(omega_c(x));
    }
    return Permutation::from_pairs(from, to);
}

/// Pi = (Cay[Z_v : S], rho) with rho((x, x+a)) = (x, x + rho0(a)).
///
/// `positives` is E(A), used only to colour faces (Column faces run through
/// differences in E(A), Row faces through -E(A)).
class CombinatorialEmbedding {
public:
    CombinatorialEmbedding(int v, int t, Permutation rho0, std::vector<int> positives, int rows, int cols, int h, int k,
                           std::optional<Provenance> prov = std::nullopt)
        : v_(v), t_(t), rho0_(std::move(rho0)), positives_(std::move(positives)), rows_(rows), cols_(cols), h_(h), k_(k),
          prov_(std::move(prov)) {
        std::sort(positives_.begin(), positives_.end());
        if (v_ < 2 || t_ < 1 || v_ % t_ != 0) throw Error("embedding needs t | v");
        const auto& S = rho0_.domain();
        slot_.assign(static_cast<std::size_t>(v_), -1);
        for (std::size_t i = 0; i < S.size(); ++i) {
            const int a = S[i];
            if (a <= 0 || a >= v_) throw Error("connection set element " + std::to_string(a) + " outside Z_v \\ {0}");
            slot_[static_cast<std::size_t>(a)] = static_cast<int>(i);
        }
        for (int a : S)
            if (slot_[static_cast<std::size_t>(mod(-a, v_))] < 0) throw Error("connection set is not closed under negation");
        image_.resize(S.size());
        for (std::size_t i = 0; i < S.size(); ++i) image_[i] = rho0_(S[i]);
    }

    [[nodiscard]] int modulus() const noexcept { return v_; }
    [[nodiscard]] int subgroup_order() const noexcept { return t_; }
    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return cols_; }
    [[nodiscard]] int h() const noexcept { return h_; }
    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] const Permutation& rho0() const noexcept { return rho0_; }
    [[nodiscard]] const std::vector<int>& connection_set() const noexcept { return rho0_.domain(); }
    [[nodiscard]] const std::vector<int>& positives() const noexcept { return positives_; }
    [[nodiscard]] const std::optional<Provenance>& provenance() const noexcept { return prov_; }
    [[nodiscard]] std::size_t degree() const noexcept { return rho0_.size(); }

    [[nodiscard]] bool adjacent(int x, int y) const { return slot_[static_cast<std::size_t>(mod(y - x, v_))] >= 0; }
    [[nodiscard]] bool is_positive(int a) const {
        return std::binary_search(positives_.begin(), positives_.end(), static_cast<int>(mod(a, v_)));
    }

    /// rho0 applied to a difference given as any integer representative.
    [[nodiscard]] int rotate_difference(int a) const {
        const int s = slot_[static_cast<std::size_t>(mod(a, v_))];
        if (s < 0) throw Error("difference " + std::to_string(a) + " is not in the connection set");
        return image_[static_cast<std::size_t>(s)];
    }

    /// rho on the dart (x, y): the next neighbour of x after y.
    [[nodiscard]] int rotate(int x, int y) const { return static_cast<int>(mod(x + rotate_difference(y - x), v_)); }

    /// Mirror image: same graph, rho0 replaced by its inverse.
    [[nodiscard]] CombinatorialEmbedding mirror() const {
        return {v_, t_, rho0_.inverse(), positives_, rows_, cols_, h_, k_, prov_};
    }

    /// rho0's images listed in increasing order of the domain; equal iff the rotation maps are equal.
    [[nodiscard]] const std::vector<int>& rotation_key() const noexcept { return image_; }

    friend bool operator==(const CombinatorialEmbedding& a, const CombinatorialEmbedding& b) {
        return a.v_ == b.v_ && a.rho0_ == b.rho0_;
    }

private:
    int v_;
    int t_;
    Permutation rho0_;
    std::vector<int> positives_;
    int rows_, cols_, h_, k_;
    std::optional<Provenance> prov_;
    std::vector<int> slot_;
    std::vector<int> image_;
};

/// FNV-1a over the rotation key.
inline std::uint64_t rotation_hash(const CombinatorialEmbedding& e) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint32_t x) {
        for (int b = 0; b < 4; ++b) {
            h ^= (x >> (8 * b)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint32_t>(e.modulus()));
    for (int x : e.rotation_key()) mix(static_cast<std::uint32_t>(x));
    return h;
}

/// Builds the Archdeacon embedding induced by (R, C). Throws if (R, C) is not
/// a solution of P(A), and checks that every line's ordering closes into a face.
inline CombinatorialEmbedding build_embedding(const PartiallyFilledArray& a, const OrientationPair& rc, std::string array_id = {}) {
    if (a.fold() != 1) throw HypothesisError("embeddings are only defined for lambda = 1");
    const auto rep = validate_heffter(a);
    if (!rep.passed()) throw HypothesisError("array is not a relative Heffter array");
    rc.validate(a.rows(), a.cols());
    const auto ord = orderings_from_orientations(a, rc);
    const Permutation wr = ord.omega_r();
    const Permutation wc = ord.omega_c();
    if (!are_compatible(wr, wc)) throw HypothesisError("orderings not compatible: (R,C) is not a solution of P(A)");
    const Permutation rho0 = build_rho0(a, wr, wc);
    if (!rho0.is_single_cycle()) throw InternalError("rho0 is not a single cycle for compatible orderings");

    // Faces through a positive difference follow omega_c, negative ones follow -omega_r.
    const int v = a.modulus();
    for (const auto& line : ord.cols) {
        std::int64_t sum = 0;
        for (int x : line.elements) sum += x;
        if (static_cast<int>(line.elements.size()) != *rep.k || mod(sum, v) != 0)
            throw InternalError("column ordering does not close into a face of length k");
    }
    for (const auto& line : ord.rows) {
        std::int64_t sum = 0;
        for (int x : line.elements) sum += x;
        if (static_cast<int>(line.elements.size()) != *rep.h || mod(sum, v) != 0)
            throw InternalError("row ordering does not close into a face of length h");
    }
    return {v, a.subgroup_order(), rho0, a.entries(), a.rows(), a.cols(), *rep.h, *rep.k, Provenance{std::move(array_id), rc}};
}

enum class FaceColor { Row, Column };

inline std::string to_string(FaceColor c) { return c == FaceColor::Row ? "row" : "column"; }

struct Face {
    std::vector<int> boundary;  ///< vertices, least rotation first
    FaceColor color = FaceColor::Row;
    bool uniform_color = true;  ///< all boundary differences in one sign class
    bool simple = true;

    [[nodiscard]] std::size_t length() const noexcept { return boundary.size(); }
    friend bool operator==(const Face& a, const Face& b) { return a.boundary == b.boundary; }
    friend bool operator<(const Face& a, const Face& b) { return a.boundary < b.boundary; }
};

/// Lexicographically least cyclic rotation.
inline std::vector<int> least_rotation(const std::vector<int>& cyc) {
    std::vector<int> best = cyc;
    std::vector<int> cur = cyc;
    for (std::size_t s = 1; s < cyc.size(); ++s) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

struct FaceSet {
    std::vector<Face> faces;  ///< sorted by boundary
    std::vector<int> dart_face;  ///< face index of dart x*deg + slot
};

/// Orbits of next((x,y)) = (y, y + rho0(x - y)) on the v * |S| darts.
inline FaceSet trace_faces(const CombinatorialEmbedding& e) {
    const int v = e.modulus();
    const auto& S = e.connection_set();
    const std::size_t deg = S.size();
    auto slot_of = [&](int a) {
        return static_cast<std::size_t>(std::lower_bound(S.begin(), S.end(), static_cast<int>(mod(a, v))) - S.begin());
    };
    const std::size_t darts = static_cast<std::size_t>(v) * deg;
    std::vector<int> owner(darts, -1);
    std::vector<Face> raw;
    for (std::size_t d0 = 0; d0 < darts; ++d0) {
        if (owner[d0] >= 0) continue;
        Face f;
        const int id = static_cast<int>(raw.size());
        std::size_t d = d0;
        bool pos0 = e.is_positive(S[d0 % deg]);
        do {
            owner[d] = id;
            const int x = static_cast<int>(d / deg);
            const int a = S[d % deg];
            if (e.is_positive(a) != pos0) f.uniform_color = false;
            f.boundary.push_back(x);
            const int y = static_cast<int>(mod(x + a, v));
            const int b = e.rotate_difference(x - y);
            d = static_cast<std::size_t>(y) * deg + slot_of(b);
        } while (d != d0);
        f.color = pos0 ? FaceColor::Column : FaceColor::Row;
        std::vector<int> sorted = f.boundary;
        std::sort(sorted.begin(), sorted.end());
        f.simple = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        f.boundary = least_rotation(f.boundary);
        raw.push_back(std::move(f));
    }
    // Sort faces and renumber the dart owners accordingly.
    std::vector<int> order(raw.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return raw[static_cast<std::size_t>(a)] < raw[static_cast<std::size_t>(b)]; });
    std::vector<int> rank(raw.size());
    FaceSet out;
    out.faces.reserve(raw.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        out.faces.push_back(std::move(raw[static_cast<std::size_t>(order[i])]));
    }
    out.dart_face.resize(darts);
    for (std::size_t d = 0; d < darts; ++d) out.dart_face[d] = rank[static_cast<std::size_t>(owner[d])];
    return out;
}

/// g = 1 + (nk - n - m - 1)(2nk + t) / 2.
inline long long genus_formula(long long m, long long n, long long k, long long t) {
    const long long num = (n * k - n - m - 1) * (2 * n * k + t);
    if (num % 2 != 0) throw DomainError("genus formula gives a half-integer for these parameters");
    return 1 + num / 2;
}

struct BiembeddingReport {
    long long vertices = 0;
    long long edges = 0;
    long long faces = 0;
    long long row_faces = 0;
    long long column_faces = 0;
    bool lengths_ok = false;      ///< Row faces have length h, Column faces length k
    bool two_colorable = false;   ///< every edge lies on one Row and one Column face
    bool simple = false;
    long long genus_euler = 0;
    long long genus_formula = 0;
    bool euler_consistent = false;
    bool zv_regular = false;      ///< translation by 1 permutes the faces

    [[nodiscard]] bool passed() const noexcept {
        return lengths_ok && two_colorable && simple && euler_consistent && zv_regular;
    }
};

inline BiembeddingReport report(const CombinatorialEmbedding& e, const FaceSet& fs) {
    BiembeddingReport r;
    const int v = e.modulus();
    const auto deg = static_cast<long long>(e.degree());
    r.vertices = v;
    r.edges = v * deg / 2;
    r.faces = static_cast<long long>(fs.faces.size());
    r.lengths_ok = true;
    r.simple = true;
    bool uniform = true;
    for (const Face& f : fs.faces) {
        (f.color == FaceColor::Row ? r.row_faces : r.column_faces)++;
        const auto want = static_cast<std::size_t>(f.color == FaceColor::Row ? e.h() : e.k());
        if (f.length() != want) r.lengths_ok = false;
        if (!f.simple) r.simple = false;
        if (!f.uniform_color) uniform = false;
    }

    r.two_colorable = uniform;
    const auto& S = e.connection_set();
    for (int x = 0; x < v && r.two_colorable; ++x) {
        for (std::size_t s = 0; s < S.size(); ++s) {
            const int y = static_cast<int>(mod(x + S[s], v));
            const auto back = static_cast<std::size_t>(std::lower_bound(S.begin(), S.end(), static_cast<int>(mod(-S[s], v))) - S.begin());
            const auto f1 = static_cast<std::size_t>(fs.dart_face[static_cast<std::size_t>(x) * S.size() + s]);
            const auto f2 = static_cast<std::size_t>(fs.dart_face[static_cast<std::size_t>(y) * S.size() + back]);
            if (fs.faces[f1].color == fs.faces[f2].color) {
                r.two_colorable = false;
                break;
            }
        }
    }

    const long long chi = r.vertices - r.edges + r.faces;
    if ((2 - chi) % 2 != 0) throw InternalError("Euler characteristic is odd; the face trace is inconsistent");
    r.genus_euler = (2 - chi) / 2;
    r.genus_formula = genus_formula(e.rows(), e.cols(), e.k(), e.subgroup_order());
    r.euler_consistent = r.genus_euler == r.genus_formula;

    std::set<std::vector<int>> all;
    for (const Face& f : fs.faces) all.insert(f.boundary);
    r.zv_regular = true;
    for (const Face& f : fs.faces) {
        std::vector<int> moved = f.boundary;
        for (int& x : moved) x = static_cast<int>(mod(x + 1, v));
        if (!all.count(least_rotation(moved))) {
            r.zv_regular = false;
            break;
        }
    }
    return r;
}

inline BiembeddingReport report(const CombinatorialEmbedding& e) { return report(e, trace_faces(e)); }

} // namespace heffter
