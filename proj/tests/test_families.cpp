#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace heffter;

namespace {

std::vector<OrientationPair> drain(FamilyStream s) {
    std::vector<OrientationPair> out;
    while (auto p = s.next()) out.push_back(std::move(*p));
    return out;
}

void expect_all_solutions(FamilyStream s) {
    const Skeleton skel = s.spec().skeleton();
    const auto all = drain(std::move(s));
    std::set<OrientationPair> uniq(all.begin(), all.end());
    EXPECT_EQ(uniq.size(), all.size());
    for (const auto& rc : all) ASSERT_TRUE(support::naive_is_solution(skel, rc));
}

} // namespace

TEST(Census, ThreeDiag) {
    const std::vector<std::pair<int, int>> expected{{3, 12}, {5, 28}, {7, 60}, {9, 124}};
    for (auto [n, c] : expected) {
        auto s = gen_family_3diag(n);
        EXPECT_EQ(s.spec().census(), c);
        EXPECT_EQ(drain(s).size(), static_cast<std::size_t>(c));
    }
}

TEST(Census, PowerTwo) {
    auto s = gen_family_power2(21, 5);
    EXPECT_EQ(s.spec().sizes, (std::vector<int>{2}));
    EXPECT_EQ(drain(s).size(), 60u);
    EXPECT_THROW(gen_family_power2(13, 5), HypothesisError);
    auto forced = gen_family_power2(13, 5, 2, true);
    EXPECT_FALSE(forced.spec().admissibility.ok());
    EXPECT_EQ(drain(forced).size(), 24u);
}

TEST(Census, Prime) {
    EXPECT_EQ(drain(gen_family_prime(41, 5)).size(), 20u);
    EXPECT_EQ(drain(gen_family_prime(43, 5)).size(), 20u);
}

TEST(Census, Pairs) {
    auto s = gen_family_pairs(11, 5, 1, 1);
    EXPECT_EQ(s.spec().base_count(), 55);
    EXPECT_EQ(drain(s).size(), 110u);
}

TEST(Census, KSeven) {
    auto s = gen_family_k7(123);
    EXPECT_FALSE(s.spec().delegated_to.has_value());
    EXPECT_EQ(s.spec().sizes, (std::vector<int>{7}));
    EXPECT_EQ(s.spec().census(), 465120);
    const auto skel = s.spec().skeleton();
    const KnightBoard b(skel);
    const auto sample = sample_evenly(s, 20);
    ASSERT_EQ(sample.size(), 20u);
    for (const auto& rc : sample) EXPECT_TRUE(b.is_solution(rc));
    std::set<OrientationPair> uniq(sample.begin(), sample.end());
    EXPECT_EQ(uniq.size(), 20u);
}

TEST(Census, KSevenDelegates) {
    auto s = gen_family_k7(125);
    ASSERT_TRUE(s.spec().delegated_to.has_value());
    EXPECT_EQ(*s.spec().delegated_to, FamilyId::PowerTwo);
    EXPECT_EQ(s.spec().k, 7);
}

TEST(Oracle, SmallFamiliesAreSolutions) {
    for (int n : {3, 5, 7, 9, 11}) expect_all_solutions(gen_family_3diag(n));
    expect_all_solutions(gen_family_power2(21, 5));
    expect_all_solutions(gen_family_power2(13, 5, 2, true));
    expect_all_solutions(gen_family_prime(41, 5));
    expect_all_solutions(gen_family_prime(43, 5));
    expect_all_solutions(gen_family_pairs(11, 5, 1, 1));
    expect_all_solutions(gen_family_pairs(11, 5, 3, 2));
    expect_all_solutions(gen_family_pairs(13, 7, 3, 2));
}

TEST(Oracle, ThreeDiagMatchesEnumeration) {
    // Trivial-R members of the family are exactly the trivial-R solutions on D1..D3 for odd n.
    for (int n : {5, 7, 9}) {
        auto s = gen_family_3diag(n);
        std::set<OrientationPair> fam;
        for (const auto& rc : drain(s))
            if (rc.r_trivial()) fam.insert(rc);
        const auto all = enumerate_solutions(cyclic_skeleton(n, 3), true);
        for (const auto& rc : fam) EXPECT_TRUE(std::binary_search(all.begin(), all.end(), rc));
        EXPECT_LE(fam.size(), all.size());
    }
}

TEST(Admissibility, Errors) {
    EXPECT_THROW(gen_family_3diag(4), HypothesisError);
    EXPECT_THROW(gen_family_prime(40, 5), HypothesisError);
    EXPECT_THROW(gen_family_prime(41, 3), HypothesisError);
    EXPECT_THROW(gen_family_pairs(11, 5, 0, 1), HypothesisError);
    EXPECT_THROW(gen_family_pairs(11, 5, 0, 1, true), HypothesisError);
    EXPECT_THROW(gen_family_k7(117), HypothesisError);
    EXPECT_THROW(gen_family_k7(123, 8), HypothesisError);
    EXPECT_THROW(gen_family_power2(21, 5, 3), HypothesisError);  // gcd(3, k-2) != 1
    EXPECT_THROW(family_from_string("bogus"), Error);
    EXPECT_EQ(family_from_string("pairs"), FamilyId::PairsGeneral);
}

TEST(KSeven, CompositeImagesOfTheFirstIndices) {
    auto s = gen_family_k7(123);
    for (int trial = 0; trial < 5; ++trial) {
        const auto E = *s.next_base();
        ASSERT_EQ(E.size(), 9u);
        const auto [w1, w2] = omega_pair_cyclic(123, 7, E);
        const auto c = w2 * w1;
        EXPECT_EQ(c(E[0]), E[6]);
        EXPECT_EQ(c(E[1]), E[7]);
        EXPECT_EQ(c(E[2]), E[5]);
        EXPECT_TRUE(check_char_cyclic(123, 7, E));
    }
}

TEST(Sampling, EvenlySpaced) {
    auto s = gen_family_3diag(7);
    const auto all = drain(s);
    const auto sample = sample_evenly(s, 6);
    ASSERT_EQ(sample.size(), 6u);
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(sample[j], all[j * all.size() / 6]);
    EXPECT_EQ(sample_evenly(s, 1000).size(), all.size());
}

TEST(Census, AtLeastTheStatedBounds) {
    auto floor_of = [](BoundId id, long long n, long long k) {
        BoundQuery q;
        q.id = id;
        q.n = n;
        q.k = k;
        return evaluate_bound(q).floor_value;
    };
    for (int n : {3, 5, 7, 9, 11, 13}) EXPECT_GE(gen_family_3diag(n).spec().census(), floor_of(BoundId::Prop3diag, n, 3));
    EXPECT_GE(gen_family_power2(21, 5).spec().census(), floor_of(BoundId::PropPower2, 21, 5));
    EXPECT_GE(gen_family_k7(123).spec().census(), floor_of(BoundId::PropK7, 123, 7));
    EXPECT_GE(gen_family_prime(41, 5).spec().census(), floor_of(BoundId::PropPrime, 41, 5));
    EXPECT_GE(gen_family_pairs(11, 5, 1, 1).spec().census(), floor_of(BoundId::PropPairs, 11, 5));
}
