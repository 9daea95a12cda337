#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "heffter/array_io.hpp"
#include "heffter/bounds.hpp"
#include "heffter/embedding.hpp"
#include "heffter/error.hpp"
#include "heffter/heffter_array.hpp"
#include "heffter/hypothesis.hpp"
#include "heffter/iso.hpp"
#include "heffter/knight.hpp"
#include "heffter/orientation.hpp"

namespace heffter {

using nlohmann::json;

inline std::string to_decimal(const BigInt& x) { return x.str(); }

inline std::string to_decimal(const BigRational& q) {
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

inline json to_json(const Admissibility& a) {
    json j = json::object();
    for (const auto& [name, holds] : a.checks) j[name] = holds;
    return j;
}

inline json to_json(const ValidationReport& r) {
    json j{{"v", r.v}, {"t", r.t}, {"lambda", r.lambda}, {"weights_ok", r.weights_ok},
           {"support_ok", r.support_ok}, {"row_sums_ok", r.row_sums_ok}, {"col_sums_ok", r.col_sums_ok},
           {"passed", r.passed()}};
    j["h"] = r.h ? json(*r.h) : json(nullptr);
    j["k"] = r.k ? json(*r.k) : json(nullptr);
    if (!r.uneven_rows.empty()) j["uneven_rows"] = r.uneven_rows;
    if (!r.uneven_cols.empty()) j["uneven_cols"] = r.uneven_cols;
    if (!r.support_violations.empty()) j["support_violations"] = r.support_violations;
    if (!r.subgroup_hits.empty()) j["subgroup_hits"] = r.subgroup_hits;
    if (!r.nonzero_rows.empty()) j["nonzero_rows"] = r.nonzero_rows;
    if (!r.nonzero_cols.empty()) j["nonzero_cols"] = r.nonzero_cols;
    return j;
}

inline json to_json(const OrientationPair& rc) { return {{"R", rc.R}, {"C", rc.C}, {"E", rc.E()}}; }

inline OrientationPair solution_from_json(const json& j) {
    try {
        OrientationPair rc;
        rc.R = j.at("R").get<std::vector<int>>();
        rc.C = j.at("C").get<std::vector<int>>();
        return rc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("solution JSON: ") + e.what());
    }
}

/// Comma separated +-1 vector, e.g. "-1,1,1".
inline std::vector<int> parse_sign_vector(std::string_view text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const auto tok = detail::trim(text.substr(pos, comma - pos));
        const long long x = detail::parse_int(tok, "sign vector entry");
        if (x != 1 && x != -1) throw ParseError("sign vector entries must be 1 or -1, got " + std::string(tok));
        out.push_back(static_cast<int>(x));
        pos = comma + 1;
    }
    return out;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json load_json(const std::string& path) {
    const std::string text = read_text(path);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError(path + " is empty");
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void save_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << '\n';
}

inline OrientationPair load_solution(const std::string& path) { return solution_from_json(load_json(path)); }

inline json to_json(const TourResult& t) {
    json cells = json::array();
    for (const Cell& c : t.visited) cells.push_back({c.row, c.col});
    return {{"start", {t.start.row, t.start.col}}, {"period", t.period}, {"covers_all", t.covers_all}, {"visited", cells}};
}

/// Signed representatives throughout; rho0 as [a, rho0(a)] pairs in increasing order of a in [0, v).
inline json to_json(const CombinatorialEmbedding& e) {
    const int v = e.modulus();
    json rho = json::array();
    for (int a : e.connection_set()) rho.push_back({symmetric(a, v), symmetric(e.rho0()(a), v)});
    json pos = json::array();
    for (int a : e.positives()) pos.push_back(symmetric(a, v));
    json j{{"v", v}, {"t", e.subgroup_order()}, {"m", e.rows()}, {"n", e.cols()}, {"h", e.h()}, {"k", e.k()},
           {"positives", pos}, {"rho0", rho}};
    if (const auto& p = e.provenance()) j["provenance"] = {{"array_id", p->array_id}, {"R", p->rc.R}, {"C", p->rc.C}};
    return j;
}

inline CombinatorialEmbedding embedding_from_json(const json& j) {
    try {
        const int v = j.at("v").get<int>();
        if (v < 2) throw ParseError("embedding JSON: v must be at least 2");
        std::vector<int> from, to;
        for (const auto& pr : j.at("rho0")) {
            from.push_back(static_cast<int>(mod(pr.at(0).get<int>(), v)));
            to.push_back(static_cast<int>(mod(pr.at(1).get<int>(), v)));
        }
        std::vector<int> pos;
        for (const auto& a : j.at("positives")) pos.push_back(static_cast<int>(mod(a.get<int>(), v)));
        std::optional<Provenance> prov;
        if (j.contains("provenance")) {
            const auto& p = j["provenance"];
            prov = Provenance{p.at("array_id").get<std::string>(),
                              {p.at("R").get<std::vector<int>>(), p.at("C").get<std::vector<int>>()}};
        }
        return {v, j.at("t").get<int>(), Permutation::from_pairs(from, to), std::move(pos), j.at("m").get<int>(),
                j.at("n").get<int>(), j.at("h").get<int>(), j.at("k").get<int>(), std::move(prov)};
    } catch (const json::exception& e) {
        throw ParseError(std::string("embedding JSON: ") + e.what());
    }
}

inline CombinatorialEmbedding load_embedding(const std::string& path) { return embedding_from_json(load_json(path)); }

inline json to_json(const BiembeddingReport& r) {
    return {{"vertices", r.vertices},       {"edges", r.edges},
            {"faces", r.faces},             {"row_faces", r.row_faces},
            {"column_faces", r.column_faces}, {"lengths_ok", r.lengths_ok},
            {"two_colorable", r.two_colorable}, {"simple", r.simple},
            {"genus_euler", r.genus_euler}, {"genus_formula", r.genus_formula},
            {"euler_consistent", r.euler_consistent}, {"zv_regular", r.zv_regular},
            {"passed", r.passed()}};
}

inline json to_json(const Face& f) {
    return {{"boundary", f.boundary}, {"length", f.length()}, {"color", to_string(f.color)}, {"simple", f.simple}};
}

inline json to_json(const EmbeddingMap& m) { return {{"kind", to_string(m.kind)}, {"sigma", m.sigma}}; }

inline json to_json(const ClassificationResult& r) {
    json classes = json::array();
    for (const auto& c : r.classes) {
        json members = json::array();
        for (std::size_t i : c.members) members.push_back(r.kept[i]);
        classes.push_back({{"representative", r.kept[c.representative]}, {"members", members}, {"size", c.members.size()},
                           {"aut0", c.aut0}, {"aut0_plus", c.aut0_plus}, {"cap", c.cap}, {"within_cap", c.members.size() <= c.cap}});
    }
    return {{"input_size", r.input_size}, {"distinct", r.distinct}, {"class_count", r.classes.size()},
            {"neighbourhood", r.neighbourhood}, {"general_cap", r.general_cap}, {"translation_cap", r.translation_cap},
            {"classes", classes}};
}

inline json to_json(const BoundResult& r) {
    json j{{"theorem", to_string(r.id)}, {"n", r.n}, {"k", r.k}, {"subgroup_t", r.subgroup_t}, {"v", r.v},
           {"formula", r.formula}, {"floor", to_decimal(r.floor_value)}, {"value", r.value}, {"log2_value", r.log2_value},
           {"hypotheses", to_json(r.hypotheses)}, {"hypotheses_ok", r.hypotheses.ok()}, {"forced", r.forced}};
    j["exact"] = r.exact ? json(to_decimal(*r.exact)) : json(nullptr);
    j["cdy_t"] = r.cdy_t ? json(*r.cdy_t) : json(nullptr);
    if (r.asymptotic) {
        j["asymptotic_reference"] = *r.asymptotic;
        j["asymptotic_formula"] = r.asymptotic_formula;
    }
    return j;
}

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

inline constexpr const char* kToolVersion = "heffter-tool 1.0.0";

struct RunManifest {
    std::string command;
    std::vector<std::string> arguments;
    std::vector<std::pair<std::string, std::string>> input_hashes;  ///< (path, fnv1a)
    std::vector<std::string> outputs;

    void add_input(const std::string& path) { input_hashes.emplace_back(path, fnv1a_hex(read_text(path))); }
};

inline json to_json(const RunManifest& m) {
    json inputs = json::object();
    for (const auto& [path, hash] : m.input_hashes) inputs[path] = "fnv1a:" + hash;
    return {{"command", m.command}, {"arguments", m.arguments}, {"inputs", inputs}, {"outputs", m.outputs},
            {"tool_version", kToolVersion}, {"seed", "none: every command is deterministic"}};
}

} // namespace heffter
