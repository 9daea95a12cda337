#pragma once

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heffter/heffter.hpp"

namespace heffter::cli {

enum Exit : int { kPass = 0, kFail = 1, kUsage = 2, kInternal = 3 };

struct Options {
    bool text = false;
    std::string manifest;
    std::uint64_t budget = 1ULL << 22;
    std::optional<int> r;
    bool force = false;

    std::string array_path;
    std::string solution_path;
    std::string R, C;
    std::string start = "1,1";
    bool all_r = false;
    bool with_cells = true;

    std::string family;
    int n = 0, k = 3, i = 0, s1 = 0, m = 0, h = 0, t = 1;
    std::optional<long long> bound_s1;
    std::uint64_t limit = 1000;
    std::uint64_t sample = 0;
    bool no_check = false;

    std::string out_path;
    std::size_t max_faces = 100000;
    std::string emb_a, emb_b;
    std::string dir;
    std::string theorem;
    std::string skeleton_kind = "any";
    std::size_t max_embeddings = 64;
};

namespace detail {

inline void emit(std::ostream& out, const json& j, bool text) {
    if (!text) {
        out << j.dump(2) << '\n';
        return;
    }
    if (!j.is_object()) {
        out << j.dump() << '\n';
        return;
    }
    for (const auto& [key, val] : j.items()) out << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << '\n';
}

inline Cell parse_cell(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("cell must be given as row,col");
    return {static_cast<int>(heffter::detail::parse_int(heffter::detail::trim(std::string_view(s).substr(0, comma)), "row")),
            static_cast<int>(heffter::detail::parse_int(heffter::detail::trim(std::string_view(s).substr(comma + 1)), "col"))};
}

inline OrientationPair orientation(const Options& o, int m, int n) {
    OrientationPair rc;
    if (!o.solution_path.empty()) {
        rc = load_solution(o.solution_path);
    } else {
        rc = OrientationPair::trivial(m, n);
        if (!o.R.empty()) rc.R = parse_sign_vector(o.R);
        if (!o.C.empty()) rc.C = parse_sign_vector(o.C);
    }
    rc.validate(m, n);
    return rc;
}

inline std::string array_id(const std::string& path) { return std::filesystem::path(path).filename().string(); }

inline json profile_json(const Skeleton& s) {
    json j = json::object();
    try {
        const DiagonalProfile p = classify_diagonality(s);
        json strips = json::array();
        for (const auto& st : p.strips)
            strips.push_back({{"first", st.first}, {"width", st.width}, {"gcd_with_n", st.gcd_with_n}, {"class_modulus", st.class_modulus}});
        j = {{"diagonal", true}, {"filled", p.filled}, {"k", p.k()}, {"cyclic", p.cyclic}, {"strips", strips}};
    } catch (const Error&) {
        j = {{"diagonal", false}};
    }
    return j;
}

inline int cmd_verify(const Options& o, std::ostream& out, RunManifest& man) {
    man.add_input(o.array_path);
    const auto a = load_array(o.array_path);
    const ValidationReport rep = validate_heffter(a);
    json j = to_json(rep);
    j["m"] = a.rows();
    j["n"] = a.cols();
    if (rep.passed() && a.fold() == 1) j["globally_simple"] = is_globally_simple(a);
    if (a.is_square()) j["diagonality"] = profile_json(skeleton(a));
    emit(out, j, o.text);
    return rep.passed() ? kPass : kFail;
}

inline int cmd_tour(const Options& o, std::ostream& out, RunManifest& man) {
    man.add_input(o.array_path);
    if (!o.solution_path.empty()) man.add_input(o.solution_path);
    const auto a = load_array(o.array_path);
    const auto rc = orientation(o, a.rows(), a.cols());
    TourResult t = tour(skeleton(a), rc, parse_cell(o.start));
    json j = to_json(t);
    j["solution"] = to_json(rc);
    if (!o.with_cells) j.erase("visited");
    emit(out, j, o.text);
    return t.covers_all ? kPass : kFail;
}

inline int cmd_tour_enum(const Options& o, std::ostream& out, RunManifest& man) {
    man.add_input(o.array_path);
    const auto a = load_array(o.array_path);
    const auto sols = enumerate_solutions(skeleton(a), !o.all_r, o.budget);
    json list = json::array();
    for (const auto& rc : sols) list.push_back(to_json(rc));
    emit(out, {{"trivial_r", !o.all_r}, {"count", sols.size()}, {"solutions", list}}, o.text);
    return kPass;
}

inline int cmd_tour_family(const Options& o, std::ostream& out, RunManifest&) {
    FamilyParams p;
    p.id = family_from_string(o.family);
    p.n = o.n;
    p.k = p.id == FamilyId::ThreeDiag ? 3 : p.id == FamilyId::KSeven ? 7 : o.k;
    p.i = o.i;
    p.s1 = o.s1;
    p.r = o.r;
    p.force = o.force;
    const FamilySpec spec = make_family(p);
    const Skeleton skel = spec.skeleton();
    FamilyStream stream(spec);
    std::vector<OrientationPair> pairs;
    if (o.sample > 0) {
        pairs = sample_evenly(stream, o.sample);
    } else {
        while (auto rc = stream.next()) pairs.push_back(std::move(*rc));
    }
    const KnightBoard board(skel);
    std::size_t failures = 0;
    json emitted = json::array();
    for (const auto& rc : pairs) {
        const bool ok = o.no_check || board.is_solution(rc);
        if (!ok) ++failures;
        if (emitted.size() < o.limit) {
            json e = to_json(rc);
            if (!o.no_check) e["tour_ok"] = ok;
            emitted.push_back(std::move(e));
        }
    }
    json j{{"family", to_string(spec.id)}, {"n", spec.n}, {"k", spec.k}, {"diagonals", spec.diagonals},
           {"census", to_decimal(spec.census())}, {"base_count", to_decimal(spec.base_count())},
           {"admissibility", to_json(spec.admissibility)}, {"generated", pairs.size()},
           {"checked", !o.no_check}, {"failures", failures}, {"pairs", emitted}};
    if (spec.delegated_to) j["delegated_to"] = to_string(*spec.delegated_to);
    emit(out, j, o.text);
    return failures == 0 ? kPass : kFail;
}

inline CombinatorialEmbedding embed_from(const Options& o, RunManifest& man) {
    man.add_input(o.array_path);
    if (!o.solution_path.empty()) man.add_input(o.solution_path);
    const auto a = load_array(o.array_path);
    const auto rc = orientation(o, a.rows(), a.cols());
    return build_embedding(a, rc, array_id(o.array_path));
}

inline int cmd_embed(const Options& o, std::ostream& out, RunManifest& man) {
    const auto e = embed_from(o, man);
    const BiembeddingReport rep = report(e);
    if (!o.out_path.empty()) {
        save_json(o.out_path, to_json(e));
        man.outputs.push_back(o.out_path);
    }
    json j = to_json(rep);
    std::ostringstream hash;
    hash << std::hex << rotation_hash(e);
    j["rotation_hash"] = hash.str();
    emit(out, j, o.text);
    return rep.passed() ? kPass : kFail;
}

inline int cmd_faces(const Options& o, std::ostream& out, RunManifest& man) {
    const auto e = embed_from(o, man);
    const FaceSet fs = trace_faces(e);
    if (fs.faces.size() > o.max_faces)
        throw ParseError("embedding has " + std::to_string(fs.faces.size()) + " faces; raise --max-faces to dump them");
    json faces = json::array();
    for (const auto& f : fs.faces) faces.push_back(to_json(f));
    emit(out, {{"count", fs.faces.size()}, {"faces", faces}}, o.text);
    return kPass;
}

inline int cmd_iso(const Options& o, std::ostream& out, RunManifest& man) {
    man.add_input(o.emb_a);
    man.add_input(o.emb_b);
    const auto a = load_embedding(o.emb_a), b = load_embedding(o.emb_b);
    if (a.modulus() != b.modulus()) {
        emit(out, {{"isomorphic", false}, {"reason", "different number of vertices"}}, o.text);
        return kFail;
    }
    const auto m = find_isomorphism(a, b);
    json j{{"isomorphic", m.has_value()}};
    if (m) {
        j["map"] = to_json(*m);
        j["verified"] = verify_map(a, b, m->sigma) == m->kind;
    }
    emit(out, j, o.text);
    return m ? kPass : kFail;
}

inline int cmd_classify(const Options& o, std::ostream& out, RunManifest& man) {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(o.dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ParseError("no embedding JSON files in " + o.dir);
    std::vector<CombinatorialEmbedding> fam;
    for (const auto& f : files) {
        man.add_input(f);
        fam.push_back(load_embedding(f));
    }
    const ClassificationResult res = classify(fam);
    json j = to_json(res);
    json names = json::array();
    for (const auto& f : files) names.push_back(std::filesystem::path(f).filename().string());
    j["files"] = names;
    emit(out, j, o.text);
    return kPass;
}

inline int cmd_search(const Options& o, std::ostream& out, RunManifest&) {
    SearchOptions so;
    if (o.skeleton_kind == "cyclic") so.skeleton = cyclic_skeleton(o.n, o.k);
    else if (o.skeleton_kind == "centered") so.skeleton = centered_cyclic_skeleton(o.n, o.k);
    else if (o.skeleton_kind != "any") throw ParseError("--skeleton must be any, cyclic or centered");
    const int m = o.m > 0 ? o.m : o.n;
    const int h = o.h > 0 ? o.h : o.k;
    const auto arrays = search_heffter(m, o.n, h, o.k, o.t, o.limit, so);
    if (o.text) {
        for (const auto& a : arrays) out << format_array(a) << '\n';
    } else {
        json list = json::array();
        for (const auto& a : arrays) list.push_back(to_json(a));
        emit(out, {{"count", arrays.size()}, {"arrays", list}}, false);
    }
    return arrays.empty() ? kFail : kPass;
}

inline int cmd_bounds(const Options& o, std::ostream& out, RunManifest&) {
    BoundQuery q;
    q.id = bound_from_string(o.theorem);
    q.n = o.n;
    q.k = o.k;
    q.subgroup_t = o.t;
    q.s1 = o.bound_s1;
    q.force = o.force;
    const BoundResult r = evaluate_bound(q);
    emit(out, to_json(r), o.text);
    return kPass;
}

inline int cmd_pipeline(const Options& o, std::ostream& out, RunManifest& man) {
    man.add_input(o.array_path);
    const auto a = load_array(o.array_path);
    const ValidationReport rep = validate_heffter(a);
    json j{{"array", array_id(o.array_path)}, {"validation", to_json(rep)}};
    if (!rep.passed() || a.fold() != 1) {
        j["stage"] = rep.passed() ? "embedding (multi-fold arrays are not embedded)" : "validation";
        emit(out, j, o.text);
        return kFail;
    }
    const auto sols = enumerate_solutions(skeleton(a), !o.all_r, o.budget);
    j["solutions"] = sols.size();
    const std::size_t used = std::min(sols.size(), o.max_embeddings);
    std::vector<CombinatorialEmbedding> fam;
    bool all_pass = true;
    long long genus = -1;
    for (std::size_t s = 0; s < used; ++s) {
        fam.push_back(build_embedding(a, sols[s], array_id(o.array_path)));
        const auto br = report(fam.back());
        all_pass = all_pass && br.passed();
        genus = br.genus_euler;
    }
    j["embedded"] = used;
    j["all_biembeddings_pass"] = all_pass;
    if (genus >= 0) j["genus"] = genus;
    std::vector<std::uint64_t> hashes;
    for (const auto& e : fam) hashes.push_back(rotation_hash(e));
    std::sort(hashes.begin(), hashes.end());
    j["distinct_rotation_maps"] = static_cast<std::size_t>(std::unique(hashes.begin(), hashes.end()) - hashes.begin());
    if (!fam.empty()) {
        const auto cls = classify(fam);
        j["classes"] = cls.classes.size();
        json sizes = json::array();
        for (const auto& c : cls.classes) sizes.push_back(c.members.size());
        j["class_sizes"] = sizes;
    }
    emit(out, j, o.text);
    return all_pass && !sols.empty() ? kPass : kFail;
}

} // namespace detail

/// Parses argv and runs one subcommand. Exit codes: 0 pass, 1 mathematical
/// failure, 2 usage or input error, 3 internal inconsistency.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heffter arrays, knight's tours and biembeddings"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    auto* fmt = app.add_flag("--text", o.text, "plain key: value output instead of JSON");
    app.add_flag("--json", [&](std::int64_t) { o.text = false; }, "JSON output (default)")->excludes(fmt);
    app.add_option("--manifest", o.manifest, "write a run manifest to this path");

    auto* verify = app.add_subcommand("verify", "validate a (relative, multi-fold) Heffter array");
    verify->add_option("array", o.array_path)->required()->check(CLI::ExistingFile);

    auto add_solution = [&](CLI::App* sc) {
        sc->add_option("--solution", o.solution_path, "solution JSON {R, C}")->check(CLI::ExistingFile);
        sc->add_option("--R", o.R, "row orientation, e.g. \"1,1,-1\"");
        sc->add_option("--C", o.C, "column orientation");
    };

    auto* tourc = app.add_subcommand("tour", "trace S_{R,C} from one cell");
    tourc->add_option("array", o.array_path)->required()->check(CLI::ExistingFile);
    add_solution(tourc);
    tourc->add_option("--start", o.start, "start cell row,col (1-based)");
    tourc->add_flag("!--no-cells", o.with_cells, "omit the visited cell list");

    auto* tenum = app.add_subcommand("tour-enum", "enumerate all solutions of the tour problem");
    tenum->add_option("array", o.array_path)->required()->check(CLI::ExistingFile);
    tenum->add_flag("--all-r", o.all_r, "also vary R");
    tenum->add_option("--budget", o.budget, "maximum number of candidates");

    auto* tfam = app.add_subcommand("tour-family", "generate a certified solution family");
    tfam->add_option("--family", o.family, "3diag, power2, k7, prime or pairs")->required();
    tfam->add_option("--n", o.n)->required();
    tfam->add_option("--k", o.k);
    tfam->add_option("--i", o.i);
    tfam->add_option("--s1", o.s1);
    tfam->add_option("--r", o.r, "subset size override");
    tfam->add_flag("--force", o.force, "skip hypothesis gates");
    tfam->add_option("--limit", o.limit, "maximum number of pairs printed");
    tfam->add_option("--sample", o.sample, "evenly spaced sample of this size instead of the full stream");
    tfam->add_flag("--no-check", o.no_check, "skip the direct tour check");

    auto* embed = app.add_subcommand("embed", "build the embedding and report its faces");
    embed->add_option("--array", o.array_path)->required()->check(CLI::ExistingFile);
    add_solution(embed);
    embed->add_option("--out", o.out_path, "save the embedding as JSON");

    auto* faces = app.add_subcommand("faces", "dump all face boundaries");
    faces->add_option("--array", o.array_path)->required()->check(CLI::ExistingFile);
    add_solution(faces);
    faces->add_option("--max-faces", o.max_faces);

    auto* iso = app.add_subcommand("iso", "find an isomorphism between two embeddings");
    iso->add_option("emb1", o.emb_a)->required()->check(CLI::ExistingFile);
    iso->add_option("emb2", o.emb_b)->required()->check(CLI::ExistingFile);

    auto* cls = app.add_subcommand("classify", "partition a directory of embeddings into isomorphism classes");
    cls->add_option("dir", o.dir)->required()->check(CLI::ExistingDirectory);

    auto* search = app.add_subcommand("search", "backtracking search for Heffter arrays");
    search->add_option("--rows", o.m, "rows (default n)");
    search->add_option("--n", o.n)->required();
    search->add_option("--row-weight", o.h, "row weight (default k)");
    search->add_option("--k", o.k)->required();
    search->add_option("--t", o.t);
    search->add_option("--limit", o.limit);
    search->add_option("--skeleton", o.skeleton_kind, "any, cyclic or centered");

    auto* bounds = app.add_subcommand("bounds", "evaluate a counting bound");
    bounds->add_option("--theorem", o.theorem)->required();
    bounds->add_option("--n", o.n)->required();
    bounds->add_option("--k", o.k)->required();
    bounds->add_option("--t", o.t, "subgroup order");
    bounds->add_option("--s1", o.bound_s1);
    bounds->add_flag("--force", o.force);

    auto* pipe = app.add_subcommand("pipeline", "array to solutions to embeddings to classes");
    pipe->add_option("array", o.array_path)->required()->check(CLI::ExistingFile);
    pipe->add_option("--budget", o.budget);
    pipe->add_flag("--all-r", o.all_r);
    pipe->add_option("--max-embeddings", o.max_embeddings);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o_out, o_err;
        const int code = app.exit(e, o_out, o_err);
        out << o_out.str();
        err << o_err.str();
        return code == 0 ? kPass : kUsage;
    }

    RunManifest man;
    for (int a = 1; a < argc; ++a) man.arguments.emplace_back(argv[a]);
    int code = kPass;
    try {
        CLI::App* sc = app.get_subcommands().front();
        man.command = sc->get_name();
        if (sc == verify) code = detail::cmd_verify(o, out, man);
        else if (sc == tourc) code = detail::cmd_tour(o, out, man);
        else if (sc == tenum) code = detail::cmd_tour_enum(o, out, man);
        else if (sc == tfam) code = detail::cmd_tour_family(o, out, man);
        else if (sc == embed) code = detail::cmd_embed(o, out, man);
        else if (sc == faces) code = detail::cmd_faces(o, out, man);
        else if (sc == iso) code = detail::cmd_iso(o, out, man);
        else if (sc == cls) code = detail::cmd_classify(o, out, man);
        else if (sc == search) code = detail::cmd_search(o, out, man);
        else if (sc == bounds) code = detail::cmd_bounds(o, out, man);
        else if (sc == pipe) code = detail::cmd_pipeline(o, out, man);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const HypothesisError& e) {
        err << "hypothesis failed: " << e.what() << '\n';
        return kFail;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kFail;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kFail;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    if (o.force) err << "warning: hypothesis gates skipped (--force)\n";
    if (!o.manifest.empty()) {
        save_json(o.manifest, to_json(man));
    }
    return code;
}

} // namespace heffter::cli
