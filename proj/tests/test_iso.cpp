#include <gtest/gtest.h>

#include <map>
#include <set>

#include "support.hpp"

using namespace heffter;

namespace {

std::vector<CombinatorialEmbedding> embeddings_of(const PartiallyFilledArray& a, bool trivial_r) {
    std::vector<CombinatorialEmbedding> out;
    for (const auto& rc : enumerate_solutions(skeleton(a), trivial_r)) out.push_back(build_embedding(a, rc));
    return out;
}

const std::vector<CombinatorialEmbedding>& k19_family() {
    static const auto fam = embeddings_of(support::h33(), false);
    return fam;
}

std::vector<int> negation_map(int v) {
    std::vector<int> s(static_cast<std::size_t>(v));
    for (int x = 0; x < v; ++x) s[static_cast<std::size_t>(x)] = static_cast<int>(mod(-x, v));
    return s;
}

/// Sets of rotation keys, one per class; comparable across input orders.
std::set<std::set<std::vector<int>>> partition_keys(const std::vector<CombinatorialEmbedding>& fam, const ClassificationResult& r) {
    std::set<std::set<std::vector<int>>> out;
    for (const auto& cls : r.classes) {
        std::set<std::vector<int>> keys;
        for (std::size_t m : cls.members) keys.insert(fam[r.kept[m]].rotation_key());
        out.insert(keys);
    }
    return out;
}

/// Pairs of searched H(5;3) arrays on one skeleton with equal support that agree on some filled diagonal.
std::optional<std::pair<PartiallyFilledArray, PartiallyFilledArray>> diagonal_sharing_pair() {
    SearchOptions so;
    so.skeleton = cyclic_skeleton(5, 3);
    const auto found = search_heffter(5, 5, 3, 3, 1, 400, so);
    for (std::size_t i = 0; i < found.size(); ++i) {
        auto ei = found[i].entries();
        std::sort(ei.begin(), ei.end());
        for (std::size_t j = i + 1; j < found.size(); ++j) {
            auto ej = found[j].entries();
            std::sort(ej.begin(), ej.end());
            if (ei != ej || !is_globally_simple(found[i]) || !is_globally_simple(found[j])) continue;
            for (int d = 1; d <= 3; ++d) {
                bool same = true;
                for (int r = 1; r <= 5; ++r)
                    if (found[i].at(r, mod1(r - d + 1, 5)) != found[j].at(r, mod1(r - d + 1, 5))) same = false;
                if (same) return std::make_pair(found[i], found[j]);
            }
        }
    }
    return std::nullopt;
}

} // namespace

TEST(VerifyMap, TranslationsPreserve) {
    for (const auto& e : k19_family())
        for (int g = 0; g < 19; ++g) EXPECT_EQ(verify_map(e, e, translation_map(19, g)), MapKind::Preserving);
}

TEST(VerifyMap, MirrorReverses) {
    const auto& e = k19_family().front();
    EXPECT_EQ(verify_map(e, e.mirror(), identity_map(19)), MapKind::Reversing);
    EXPECT_EQ(verify_map(e.mirror(), e, identity_map(19)), MapKind::Reversing);
}

TEST(VerifyMap, RejectsNonBijections) {
    const auto& e = k19_family().front();
    auto s = identity_map(19);
    s[3] = 4;
    EXPECT_EQ(verify_map(e, e, s), MapKind::NotIso);
    EXPECT_EQ(verify_map(e, e, std::vector<int>(5, 0)), MapKind::NotIso);
}

TEST(VerifyMap, ModulusMismatchThrows) {
    const auto e53 = embeddings_of(support::h53_centered(), true).front();
    EXPECT_THROW(verify_map(k19_family().front(), e53, identity_map(19)), Error);
    EXPECT_THROW(find_isomorphism(k19_family().front(), e53), Error);
}

TEST(FindIsomorphism, SelfIsIdentity) {
    for (const auto& e : k19_family()) {
        const auto m = find_isomorphism(e, e);
        ASSERT_TRUE(m.has_value());
        EXPECT_EQ(m->sigma, identity_map(19));
        EXPECT_EQ(m->kind, MapKind::Preserving);
    }
}

TEST(FindIsomorphism, AgreesWithCanonicalCodes) {
    const auto& fam = k19_family();
    std::vector<std::vector<int>> codes;
    for (const auto& e : fam) codes.push_back(support::canonical_code(support::explicit_rotation(e)));
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for (std::size_t j = 0; j < fam.size(); ++j) {
            const auto m = find_isomorphism(fam[i], fam[j]);
            ASSERT_EQ(m.has_value(), codes[i] == codes[j]) << i << " " << j;
            if (m) {
                EXPECT_EQ(verify_map(fam[i], fam[j], m->sigma), m->kind);
            }
        }
    }
}

TEST(FindIsomorphism, AgreesWithCanonicalCodesCyclic) {
    const auto fam = embeddings_of(support::h53_centered(), false);
    std::vector<std::vector<int>> codes;
    for (const auto& e : fam) codes.push_back(support::canonical_code(support::explicit_rotation(e)));
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i; j < fam.size(); ++j)
            ASSERT_EQ(find_isomorphism(fam[i], fam[j]).has_value(), codes[i] == codes[j]) << i << " " << j;
}

TEST(FindIsomorphism, NegationRelatesTransposedArray) {
    const auto a = support::h33();
    const auto at = transpose(a);
    for (const auto& rc : enumerate_solutions(skeleton(a), false)) {
        const OrientationPair swapped{rc.C, rc.R};
        const auto e = build_embedding(a, rc);
        const auto et = build_embedding(at, swapped);
        EXPECT_EQ(verify_map(e, et, negation_map(19)), MapKind::Preserving);
    }
}

TEST(Stabilizer, BoundedByNeighbourhood) {
    for (const auto& e : k19_family()) {
        const auto st = stabilizer(e);
        EXPECT_GE(st.aut0_plus, 1u);
        EXPECT_LE(st.aut0, 36u);
        for (const auto& m : st.elements) EXPECT_EQ(m.sigma[0], 0);
    }
    const auto st = stabilizer(k19_family().front());
    EXPECT_EQ(st.aut0, 3u);
    EXPECT_EQ(st.aut0_plus, 3u);
}

TEST(Stabilizer, PreservingRestrictionsArePowersOfRho0) {
    const auto e = build_embedding(support::example_ex(), support::example_ex_solution());
    const auto st = stabilizer(e);
    EXPECT_LE(st.aut0, 2 * e.degree());
    const auto& S = e.connection_set();
    for (const auto& m : st.elements) {
        if (m.kind != MapKind::Preserving) continue;
        const int img = m(S.front());
        // sigma restricted to N(0) is rho0^p where rho0^p(S[0]) = sigma(S[0])
        Permutation p = Permutation::identity(S);
        while (p(S.front()) != img) p = e.rho0() * p;
        for (int a : S) EXPECT_EQ(m(a), p(a));
    }
}

TEST(Phi, IdentityGivesIdentity) {
    const auto& e = k19_family().front();
    for (int g = 0; g < 19; ++g) {
        const auto m = phi(identity_map(19), g, e, e);
        EXPECT_EQ(m.sigma, identity_map(19));
        EXPECT_EQ(m.kind, MapKind::Preserving);
    }
    EXPECT_THROW(phi(translation_map(19, 1), 3, e, e), HypothesisError);
}

TEST(Phi, LandsInTheStabilizer) {
    const auto& fam = k19_family();
    const auto res = classify(fam);
    for (const auto& cls : res.classes) {
        const auto& rep = fam[res.kept[cls.representative]];
        const auto st = stabilizer(rep);
        for (std::size_t i = 0; i < cls.members.size(); ++i) {
            const auto& mem = fam[res.kept[cls.members[i]]];
            for (int g : {1, 2, 7}) {
                const auto m = phi(cls.maps[i].sigma, g, mem, rep);
                EXPECT_TRUE(std::any_of(st.elements.begin(), st.elements.end(), [&](const auto& x) { return x.sigma == m.sigma; }));
            }
        }
    }
}

TEST(Classify, CompleteGraphFamily) {
    const auto& fam = k19_family();
    const auto res = classify(fam);
    EXPECT_EQ(res.input_size, 24u);
    EXPECT_EQ(res.distinct, 24u);
    EXPECT_EQ(res.classes.size(), 8u);
    std::size_t total = 0;
    for (const auto& cls : res.classes) {
        total += cls.members.size();
        EXPECT_LE(cls.members.size(), cls.cap);
        for (std::size_t i = 0; i < cls.members.size(); ++i)
            EXPECT_NE(verify_map(fam[res.kept[cls.members[i]]], fam[res.kept[cls.representative]], cls.maps[i].sigma), MapKind::NotIso);
    }
    EXPECT_EQ(total, 24u);
    EXPECT_EQ(res.neighbourhood, 18u);
}

TEST(Classify, InvariantUnderInputOrder) {
    auto fam = k19_family();
    const auto p1 = partition_keys(fam, classify(fam));
    std::reverse(fam.begin(), fam.end());
    EXPECT_EQ(partition_keys(fam, classify(fam)), p1);
    std::rotate(fam.begin(), fam.begin() + 7, fam.end());
    EXPECT_EQ(partition_keys(fam, classify(fam)), p1);
}

TEST(Classify, DuplicatesAndSingletons) {
    const auto& e = k19_family().front();
    const auto one = classify({e});
    EXPECT_EQ(one.classes.size(), 1u);
    const auto twice = classify({e, e, e.mirror()});
    EXPECT_EQ(twice.distinct, 2u);
    EXPECT_EQ(twice.classes.size(), 1u);
    EXPECT_TRUE(classify({}).classes.empty());
}

TEST(Classify, MixedParametersThrow) {
    const auto e53 = embeddings_of(support::h53_centered(), true).front();
    EXPECT_THROW(classify({k19_family().front(), e53}), Error);
}

TEST(Distinctness, OneArrayAllSolutions) {
    const auto a = support::h53_centered();
    std::vector<ArraySolution> batch;
    for (const auto& rc : enumerate_solutions(skeleton(a), false)) batch.push_back({a, rc});
    const auto n = batch.size();
    batch.push_back(batch.front());
    const auto cert = certify_distinct(batch);
    EXPECT_EQ(cert.count, n);
    std::set<std::vector<int>> keys;
    for (const auto& [arr, rc] : batch) keys.insert(build_embedding(arr, rc).rotation_key());
    EXPECT_EQ(keys.size(), cert.count);
}

TEST(Distinctness, TwoArraysSharingADiagonal) {
    const auto pair = diagonal_sharing_pair();
    ASSERT_TRUE(pair.has_value());
    const auto& [a, b] = *pair;
    const auto sols = enumerate_solutions(skeleton(a), true);
    std::vector<ArraySolution> batch;
    for (const auto& rc : sols) {
        batch.push_back({a, rc});
        batch.push_back({b, rc});
    }
    const auto cert = certify_distinct(batch);
    EXPECT_EQ(cert.count, 2 * sols.size());
    std::set<std::vector<int>> keys;
    for (const auto& [arr, rc] : batch) keys.insert(build_embedding(arr, rc).rotation_key());
    EXPECT_EQ(keys.size(), cert.count);
}

TEST(Distinctness, Hypotheses) {
    const auto a = support::h53_centered();
    const auto sols = enumerate_solutions(skeleton(a), true);
    EXPECT_THROW(certify_distinct({{a, OrientationPair::trivial(5, 5)}}), HypothesisError);
    EXPECT_THROW(certify_distinct({{a, sols.front()}, {support::example_ex(), support::example_ex_solution()}}), HypothesisError);
    // a row-translated copy sits on another skeleton
    EXPECT_THROW(certify_distinct({{a, sols.front()}, {row_translate(a, 1), sols.front()}}), HypothesisError);
    EXPECT_EQ(certify_distinct({}).count, 0u);
}
