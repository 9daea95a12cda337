#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "support.hpp"

using namespace heffter;

namespace {

BoundResult eval(BoundId id, long long n, long long k, long long t = 1, bool force = false) {
    BoundQuery q;
    q.id = id;
    q.n = n;
    q.k = k;
    q.subgroup_t = t;
    q.force = force;
    return evaluate_bound(q);
}

long long brute_derangements(int m) {
    std::vector<int> p(static_cast<std::size_t>(m));
    std::iota(p.begin(), p.end(), 0);
    long long count = 0;
    do {
        bool fixed = false;
        for (int i = 0; i < m; ++i)
            if (p[static_cast<std::size_t>(i)] == i) fixed = true;
        if (!fixed) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

/// Inclusion-exclusion: sum_i (-1)^i m!/i!.
BigInt inclusion_exclusion(int m) {
    BigInt total = 0;
    for (int i = 0; i <= m; ++i) {
        BigInt term = 1;
        for (int j = i + 1; j <= m; ++j) term *= j;
        total += (i % 2 == 0) ? term : BigInt(-term);
    }
    return total;
}

void expect_close(const BoundResult& r) {
    ASSERT_TRUE(r.exact.has_value());
    const double exact = r.exact->convert_to<double>();
    if (exact == 0) {
        EXPECT_EQ(r.value, 0.0);
        return;
    }
    EXPECT_LE(std::abs(r.value - exact) / exact, 1e-12);
}

} // namespace

TEST(Derangements, BruteForce) {
    for (int m = 0; m <= 8; ++m) EXPECT_EQ(derangements(m), brute_derangements(m)) << m;
}

TEST(Derangements, InclusionExclusionAndRounding) {
    for (int m = 0; m <= 20; ++m) EXPECT_EQ(derangements(m), inclusion_exclusion(m)) << m;
    for (int m = 1; m <= 16; ++m) {
        const long double f = std::tgamma(static_cast<long double>(m) + 1.0L);
        EXPECT_EQ(derangements(m), static_cast<long long>(std::llround(f / std::exp(1.0L)))) << m;
    }
    EXPECT_THROW(derangements(-1), DomainError);
}

TEST(Entropy, Values) {
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_NEAR(binary_entropy(0.25), 0.8112781244591328, 1e-12);
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_EQ(binary_entropy(1.0), 0.0);
    EXPECT_NEAR(binary_entropy(0.3), binary_entropy(0.7), 1e-15);
    EXPECT_THROW(binary_entropy(1.5), DomainError);
}

TEST(Binomial, PascalTriangle) {
    std::vector<std::vector<BigInt>> tri(41);
    for (int a = 0; a <= 40; ++a) {
        tri[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(a) + 1, 1);
        for (int b = 1; b < a; ++b)
            tri[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                tri[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] + tri[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b)];
        for (int b = 0; b <= a; ++b) EXPECT_EQ(binom(a, b), tri[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
        EXPECT_EQ(binom(a, a + 1), 0);
        EXPECT_EQ(binom(a, -1), 0);
    }
    EXPECT_THROW(binom(-1, 0), DomainError);
}

TEST(Theorems, DerangementFamily) {
    const auto cdy = eval(BoundId::CDY, 13, 11);
    EXPECT_EQ(cdy.floor_value, 11);
    EXPECT_EQ(*cdy.cdy_t, 2);
    EXPECT_EQ(cdy.v, 287);
    expect_close(cdy);

    const auto gen = eval(BoundId::GeneralBound, 13, 11);
    EXPECT_EQ(*gen.exact, BigRational(11, 2 * 286 * 286));
    EXPECT_FALSE(gen.asymptotic.has_value());
    expect_close(gen);

    EXPECT_EQ(eval(BoundId::CDY2, 97, 11).floor_value, 1900);
    EXPECT_EQ(*eval(BoundId::CDY3, 97, 11).exact, BigRational(95 * 10, 2134 * 2134));
    EXPECT_EQ(eval(BoundId::CDY4, 29, 11).floor_value, 21924);
    EXPECT_EQ(*eval(BoundId::CDY5, 29, 11).exact, BigRational(27 * 406, 638 * 638));

    // H(1) = 0, H(2) = 1, H(3) = 2
    EXPECT_EQ(eval(BoundId::CDY, 29, 15).floor_value, 0);
    EXPECT_EQ(eval(BoundId::CDY, 29, 19).floor_value, 27);
    EXPECT_EQ(eval(BoundId::CDY, 29, 23).floor_value, 4 * 27);
}

TEST(Theorems, DerangementTermNeedsLargeK) {
    EXPECT_THROW(eval(BoundId::CDY, 13, 7), DomainError);
    EXPECT_THROW(eval(BoundId::CDY, 13, 7, 1, true), DomainError);
    EXPECT_THROW(eval(BoundId::CDY4, 29, 3, 1, true), DomainError);
    EXPECT_THROW(eval(BoundId::CDY, 13, 9, 1, true), DomainError);
}

TEST(Theorems, DiagonalFamily) {
    const auto d = eval(BoundId::DiagBi, 9, 3);
    EXPECT_FALSE(d.exact.has_value());
    EXPECT_EQ(d.v, 55);
    EXPECT_EQ(d.floor_value, 0);
    EXPECT_NEAR(d.value, std::pow(2.0, 4.5) / 729.0, 1e-15);

    const auto d2 = eval(BoundId::DiagBi2, 123, 5);
    EXPECT_EQ(*d2.exact, BigRational(2035800, 615 * 615));
    EXPECT_EQ(d2.floor_value, 5);
    expect_close(d2);

    const auto d3 = eval(BoundId::DiagBi3, 41, 11);
    EXPECT_EQ(*d3.exact, BigRational(10, 451 * 451));
    EXPECT_EQ(d3.floor_value, 0);
}

TEST(Theorems, FamilyCensusBounds) {
    const auto p3 = eval(BoundId::Prop3diag, 7, 3);
    EXPECT_FALSE(p3.exact.has_value());
    EXPECT_EQ(p3.floor_value, 45);
    EXPECT_NEAR(p3.value, 45.254833995939045, 1e-9);
    const auto p3e = eval(BoundId::Prop3diag, 6, 3, 1, true);
    EXPECT_TRUE(p3e.forced);
    EXPECT_EQ(*p3e.exact, 32);

    EXPECT_EQ(eval(BoundId::PropPower2, 21, 5).floor_value, 60);
    EXPECT_EQ(eval(BoundId::PropK7, 123, 7).floor_value, 62016);
    EXPECT_EQ(eval(BoundId::PropPrime, 41, 5).floor_value, 20);
    EXPECT_EQ(eval(BoundId::PropPairs, 11, 5).floor_value, 110);
}

TEST(Theorems, IrrationalFloorsAreExact) {
    for (long long n = 3; n <= 201; n += 2) {
        const auto r = eval(BoundId::Prop3diag, n, 3);
        // floor(2^(n/2 + 2)) = isqrt(2^(n + 4))
        const BigInt want = boost::multiprecision::sqrt(BigInt(1) << static_cast<unsigned>(n + 4));
        EXPECT_EQ(r.floor_value, want) << n;
        EXPECT_NEAR(r.log2_value, n / 2.0 + 2, 1e-9);
    }
}

TEST(Theorems, Hypotheses) {
    EXPECT_THROW(eval(BoundId::PropPrime, 40, 5), HypothesisError);
    const auto forced = eval(BoundId::PropPrime, 40, 5, 1, true);
    EXPECT_TRUE(forced.forced);
    EXPECT_FALSE(forced.hypotheses.ok());
    EXPECT_THROW(eval(BoundId::CDY, 15, 11), HypothesisError);   // n = 3 mod 4
    EXPECT_THROW(eval(BoundId::CDY, 13, 11, 3), HypothesisError);
    EXPECT_THROW(eval(BoundId::CDY2, 73, 11), HypothesisError);  // n <= 8k
    EXPECT_THROW(eval(BoundId::DiagBi2, 119, 5), HypothesisError);
    EXPECT_THROW(eval(BoundId::PropK7, 119, 7), HypothesisError);
    EXPECT_THROW(eval(BoundId::DiagBi, 7, 3), HypothesisError);
    EXPECT_NO_THROW(eval(BoundId::DiagBi, 7, 3, 3));
    EXPECT_NO_THROW(eval(BoundId::DiagBi, 7, 3, 14));

    BoundQuery q;
    q.id = BoundId::PropPairs;
    q.n = 11;
    q.k = 5;
    q.s1 = 6;
    EXPECT_NO_THROW(evaluate_bound(q));
    q.s1 = 7;  // k + s1 - 1 = 11
    EXPECT_THROW(evaluate_bound(q), HypothesisError);
}

TEST(Theorems, DomainErrors) {
    EXPECT_THROW(eval(BoundId::PropPower2, 0, 5), DomainError);
    EXPECT_THROW(eval(BoundId::CDY, 13, 10, 1, true), DomainError);
    EXPECT_THROW(eval(BoundId::PropPairs, 11, 0), DomainError);
}

TEST(Theorems, Monotone) {
    BigInt prev = 0;
    for (long long n = 17; n <= 401; n += 2) {
        const auto r = eval(BoundId::PropPower2, n, 5);
        EXPECT_GE(r.floor_value, prev) << n;
        prev = r.floor_value;
    }
    prev = 0;
    for (long long n = 29; n <= 401; n += 4) {
        if (n % 3 == 0) continue;
        const auto r = eval(BoundId::CDY4, n, 11);
        EXPECT_GT(r.floor_value, prev) << n;
        prev = r.floor_value;
    }
    double last = 0;
    for (long long n = 3; n <= 99; n += 2) {
        const auto r = eval(BoundId::Prop3diag, n, 3);
        EXPECT_GT(r.value, last);
        last = r.value;
    }
}

TEST(Theorems, ValuesMatchExactEverywhere) {
    for (long long n : {29LL, 97LL, 101LL})
        for (BoundId id : {BoundId::CDY, BoundId::GeneralBound, BoundId::CDY4, BoundId::CDY5}) expect_close(eval(id, n, 11));
    for (long long n : {123LL, 241LL}) expect_close(eval(BoundId::PropK7, n, 7));
    expect_close(eval(BoundId::CDY2, 97, 11));
    expect_close(eval(BoundId::CDY3, 97, 11));
    const auto big = eval(BoundId::PropPower2, 2001, 5);
    EXPECT_NEAR(big.log2_value, std::log2(big.exact->convert_to<double>()), 1e-9);
}

TEST(Theorems, Asymptotics) {
    const auto r = eval(BoundId::CDY2, 97, 11);
    ASSERT_TRUE(r.asymptotic.has_value());
    EXPECT_GT(*r.asymptotic, 0);
    EXPECT_TRUE(std::isfinite(*r.asymptotic));
    EXPECT_FALSE(r.asymptotic_formula.empty());
}

TEST(Theorems, Names) {
    for (BoundId id : kAllBounds) EXPECT_EQ(bound_from_string(to_string(id)), id);
    EXPECT_THROW(bound_from_string("Nope"), Error);
}
