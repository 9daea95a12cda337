#pragma once

// Shared fixtures and brute-force oracles. The oracles deliberately avoid the
// library's fast paths: they work on explicit grids and explicit adjacency lists.

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "heffter/heffter.hpp"

namespace support {

using namespace heffter;

inline std::string fixture(const std::string& name) { return std::string(HEFFTER_FIXTURES) + "/" + name; }

inline PartiallyFilledArray example_ex() { return load_array(fixture("h9_11_9.arr")); }

inline OrientationPair example_ex_solution() {
    OrientationPair rc = OrientationPair::trivial(11, 11);
    rc.C[0] = -1;
    return rc;
}

/// The step table: label[i][j] = step at which the tour from (1,1) reaches (i+1, j+1), -1 when empty.
inline std::vector<std::vector<int>> golden_tour_table() {
    std::ifstream in(fixture("h9_11_9_tour.txt"));
    std::vector<std::vector<int>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<int> row;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) row.push_back(tok.empty() ? -1 : std::stoi(tok));
        if (line.back() == ',') row.push_back(-1);
        out.push_back(row);
    }
    return out;
}

inline json golden_orderings() { return load_json(fixture("h9_11_9_orderings.json")); }

/// Successor straight from the definition: scan row i in direction R_i, then
/// the new column in direction C_j', on an explicit boolean grid.
inline Cell naive_successor(const std::vector<std::vector<bool>>& grid, const OrientationPair& rc, Cell c) {
    const int m = static_cast<int>(grid.size()), n = static_cast<int>(grid[0].size());
    int j = c.col;
    do {
        j = mod1(j + rc.R[static_cast<std::size_t>(c.row - 1)], n);
    } while (!grid[static_cast<std::size_t>(c.row - 1)][static_cast<std::size_t>(j - 1)]);
    int i = c.row;
    do {
        i = mod1(i + rc.C[static_cast<std::size_t>(j - 1)], m);
    } while (!grid[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]);
    return {i, j};
}

inline std::vector<std::vector<bool>> grid_of(const Skeleton& s) {
    std::vector<std::vector<bool>> g(static_cast<std::size_t>(s.rows()), std::vector<bool>(static_cast<std::size_t>(s.cols()), false));
    for (const Cell& c : s.cells()) g[static_cast<std::size_t>(c.row - 1)][static_cast<std::size_t>(c.col - 1)] = true;
    return g;
}

inline bool naive_is_solution(const Skeleton& s, const OrientationPair& rc) {
    const auto g = grid_of(s);
    const auto cells = s.cells();
    const Cell start = cells.front();
    std::set<Cell> seen;
    Cell c = start;
    do {
        seen.insert(c);
        c = naive_successor(g, rc, c);
    } while (c != start);
    return seen.size() == cells.size();
}

/// All trivial-R C vectors on n columns, as -1 position masks.
inline OrientationPair trivial_r_from_mask(int m, int n, unsigned mask) {
    OrientationPair rc = OrientationPair::trivial(m, n);
    for (int j = 0; j < n; ++j)
        if (mask >> j & 1U) rc.C[static_cast<std::size_t>(j)] = -1;
    return rc;
}

/// Explicit rotation system: rot[x] lists the neighbours of x in cyclic order.
inline std::vector<std::vector<int>> explicit_rotation(const CombinatorialEmbedding& e) {
    const int v = e.modulus();
    std::vector<std::vector<int>> rot(static_cast<std::size_t>(v));
    const int a0 = e.connection_set().front();
    for (int x = 0; x < v; ++x) {
        int a = a0;
        do {
            rot[static_cast<std::size_t>(x)].push_back(static_cast<int>(mod(x + a, v)));
            a = e.rho0()(a);
        } while (a != a0);
    }
    return rot;
}

/// Textbook face tracing on an explicit rotation system: after arriving at y
/// from x, leave y towards the neighbour following x in y's rotation.
inline std::vector<std::vector<int>> naive_faces(const std::vector<std::vector<int>>& rot) {
    std::map<std::pair<int, int>, bool> used;
    std::vector<std::vector<int>> faces;
    auto next_after = [&](int y, int x) {
        const auto& r = rot[static_cast<std::size_t>(y)];
        const auto it = std::find(r.begin(), r.end(), x);
        return (it + 1 == r.end()) ? r.front() : *(it + 1);
    };
    for (int x = 0; x < static_cast<int>(rot.size()); ++x) {
        for (int y : rot[static_cast<std::size_t>(x)]) {
            if (used[{x, y}]) continue;
            std::vector<int> face;
            int a = x, b = y;
            while (!used[{a, b}]) {
                used[{a, b}] = true;
                face.push_back(a);
                const int c = next_after(b, a);
                a = b;
                b = c;
            }
            faces.push_back(face);
        }
    }
    return faces;
}

/// Canonical code of an embedding up to isomorphism (both orientations), by
/// BFS relabelling from every dart at vertex 0. Vertex 0 suffices because
/// translations are automorphisms of every embedding built here.
inline std::vector<int> canonical_code(const std::vector<std::vector<int>>& rot) {
    const int v = static_cast<int>(rot.size());
    std::vector<int> best;
    for (int orient = 0; orient < 2; ++orient) {
        std::vector<std::vector<int>> r = rot;
        if (orient == 1)
            for (auto& l : r) std::reverse(l.begin(), l.end());
        for (int first : r[0]) {
            std::vector<int> label(static_cast<std::size_t>(v), -1), order, start_nb(static_cast<std::size_t>(v), -1);
            label[0] = 0;
            order.push_back(0);
            start_nb[0] = first;
            std::vector<int> code;
            for (std::size_t q = 0; q < order.size(); ++q) {
                const int x = order[q];
                const auto& l = r[static_cast<std::size_t>(x)];
                const auto it0 = std::find(l.begin(), l.end(), start_nb[static_cast<std::size_t>(x)]);
                const auto off = static_cast<std::size_t>(it0 - l.begin());
                for (std::size_t s = 0; s < l.size(); ++s) {
                    const int y = l[(off + s) % l.size()];
                    if (label[static_cast<std::size_t>(y)] < 0) {
                        label[static_cast<std::size_t>(y)] = static_cast<int>(order.size());
                        order.push_back(y);
                        start_nb[static_cast<std::size_t>(y)] = x;
                    }
                    code.push_back(label[static_cast<std::size_t>(y)]);
                }
                code.push_back(-1);
            }
            if (best.empty() || code < best) best = code;
        }
    }
    return best;
}

/// The searched H(3;3) over Z_19.
inline PartiallyFilledArray h33() {
    static const auto a = [] {
        auto found = search_heffter(3, 3, 3, 3, 1, 1);
        return found.at(0);
    }();
    return a;
}

/// Cyclically 3-diagonal H(5;3) over Z_31 on diagonals D5, D1, D2.
inline PartiallyFilledArray h53_centered() {
    static const auto a = [] {
        SearchOptions so;
        so.skeleton = centered_cyclic_skeleton(5, 3);
        return search_heffter(5, 5, 3, 3, 1, 1, so).at(0);
    }();
    return a;
}

} // namespace support
