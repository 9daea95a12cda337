#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include "heffter/combinatorics.hpp"
#include "heffter/error.hpp"
#include "heffter/hypothesis.hpp"
#include "heffter/modular.hpp"

namespace heffter {

enum class BoundId {
    CDY, GeneralBound, CDY2, CDY3, CDY4, CDY5,
    DiagBi, DiagBi2, DiagBi3,
    Prop3diag, PropPower2, PropK7, PropPrime, PropPairs
};

inline constexpr BoundId kAllBounds[] = {
    BoundId::CDY, BoundId::GeneralBound, BoundId::CDY2, BoundId::CDY3, BoundId::CDY4, BoundId::CDY5,
    BoundId::DiagBi, BoundId::DiagBi2, BoundId::DiagBi3,
    BoundId::Prop3diag, BoundId::PropPower2, BoundId::PropK7, BoundId::PropPrime, BoundId::PropPairs};

inline std::string to_string(BoundId id) {
    switch (id) {
        case BoundId::CDY: return "CDY";
        case BoundId::GeneralBound: return "GeneralBound";
        case BoundId::CDY2: return "CDY2";
        case BoundId::CDY3: return "CDY3";
        case BoundId::CDY4: return "CDY4";
        case BoundId::CDY5: return "CDY5";
        case BoundId::DiagBi: return "DiagBi";
        case BoundId::DiagBi2: return "DiagBi2";
        case BoundId::DiagBi3: return "DiagBi3";
        case BoundId::Prop3diag: return "Prop3diag";
        case BoundId::PropPower2: return "PropPower2";
        case BoundId::PropK7: return "PropK7";
        case BoundId::PropPrime: return "PropPrime";
        case BoundId::PropPairs: return "PropPairs";
    }
    return "?";
}

inline BoundId bound_from_string(const std::string& s) {
    for (BoundId id : kAllBounds)
        if (to_string(id) == s) return id;
    throw Error("unknown theorem id '" + s + "'");
}

struct BoundQuery {
    BoundId id = BoundId::CDY;
    long long n = 0;
    long long k = 3;
    long long subgroup_t = 1;
    std::optional<long long> s1;  ///< PropPairs only; without it the gcd(n, s1) clauses are not checked
    bool force = false;
};

struct BoundResult {
    BoundId id = BoundId::CDY;
    long long n = 0, k = 0, subgroup_t = 1;
    std::optional<long long> cdy_t;  ///< (k-3)/4 for the CDY family
    long long v = 0;
    std::string formula;
    std::optional<BigRational> exact;  ///< absent when the value is irrational
    BigInt floor_value;                ///< exact floor in every case
    double value = 0;                  ///< relative error <= 1e-12 against the exact value
    double log2_value = 0;
    std::optional<double> asymptotic;  ///< reference only; the theorems' right-hand sides
    std::string asymptotic_formula;
    Admissibility hypotheses;
    bool forced = false;
};

namespace detail {

inline double log2_big(const BigInt& x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    const auto bits = static_cast<long long>(boost::multiprecision::msb(x));
    if (bits < 60) return std::log2(x.convert_to<double>());
    const BigInt top = x >> static_cast<unsigned>(bits - 52);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

inline double log2_rational(const BigRational& q) {
    return log2_big(boost::multiprecision::numerator(q)) - log2_big(boost::multiprecision::denominator(q));
}

inline BigInt floor_rational(const BigRational& q) {
    const BigInt num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
    BigInt f = num / den;
    if (num < 0 && f * den != num) --f;
    return f;
}

inline void set_exact(BoundResult& r, const BigRational& q) {
    r.exact = q;
    r.floor_value = floor_rational(q);
    r.log2_value = log2_rational(q);
    r.value = q.convert_to<double>();
}

/// Value sqrt(radicand) / scale with integer radicand and positive integer scale.
inline void set_sqrt(BoundResult& r, const BigInt& radicand, const BigInt& scale) {
    const BigInt root = boost::multiprecision::sqrt(radicand);
    if (root * root == radicand) {
        set_exact(r, BigRational(root, scale));
        return;
    }
    r.exact.reset();
    r.floor_value = boost::multiprecision::sqrt(BigInt(radicand / (scale * scale)));
    r.log2_value = 0.5 * log2_big(radicand) - log2_big(scale);
    r.value = std::exp2(r.log2_value);
}

inline BigInt pow2(long long e) { return BigInt(1) << static_cast<unsigned>(e); }

inline double H14() { return binary_entropy(0.25); }

inline double lfact(long long m) { return std::lgamma(static_cast<double>(m) + 1.0); }

} // namespace detail

/// Hypotheses of each theorem, evaluated on the query alone.
inline Admissibility bound_hypotheses(const BoundQuery& q) {
    Admissibility a;
    const long long n = q.n, k = q.k, t = q.subgroup_t;
    auto cdy_common = [&] {
        a.add("k = 4t + 3", k >= 3 && k % 4 == 3);
        a.add("subgroup order 1 (v = 2nk + 1)", t == 1);
        a.add("n = 1 mod 4", mod(n, 4) == 1);
    };
    auto mod3_clause = [&] { a.add("n = 0 mod 3 implies k = 7 mod 12", mod(n, 3) != 0 || mod(k, 12) == 7); };
    auto diag_t_cases = [&] {
        a.add("t in {1,2} with nk = 3 mod 4, or t = k with n = 3 mod 4",
              ((t == 1 || t == 2) && mod(n * k, 4) == 3) || (t == k && mod(n, 4) == 3));
    };
    switch (q.id) {
        case BoundId::CDY:
        case BoundId::GeneralBound:
            cdy_common();
            a.add("n prime or n >= (7k+1)/3", is_prime(n) || 3 * n >= 7 * k + 1);
            mod3_clause();
            break;
        case BoundId::CDY2:
        case BoundId::CDY3:
            cdy_common();
            a.add("n prime", is_prime(n));
            a.add("n > 8k", n > 8 * k);
            break;
        case BoundId::CDY4:
        case BoundId::CDY5:
            cdy_common();
            a.add("n >= (7k+1)/3", 3 * n >= 7 * k + 1);
            mod3_clause();
            break;
        case BoundId::DiagBi:
            a.add("k = 3", k == 3);
            a.add("n >= 3", n >= 3);
            a.add("t in {1,2} with n = 1 mod 4, or t = 3 with n = 3 mod 4, or t in {n,2n} with n odd",
                  ((t == 1 || t == 2) && mod(n, 4) == 1) || (t == 3 && mod(n, 4) == 3) ||
                      ((t == n || t == 2 * n) && n % 2 == 1));
            break;
        case BoundId::DiagBi2:
            a.add("k in {5,7,9}", k == 5 || k == 7 || k == 9);
            a.add("n >= 120", n >= 120);
            diag_t_cases();
            break;
        case BoundId::DiagBi3:
            a.add("k > 9 odd", k > 9 && k % 2 == 1);
            a.add("n >= 4k - 3", n >= 4 * k - 3);
            a.add("gcd(n, k-1) = 1", std::gcd(n, k - 1) == 1);
            diag_t_cases();
            break;
        case BoundId::Prop3diag:
            a.add("k = 3", k == 3);
            a.add("n >= 3 odd", n >= 3 && n % 2 == 1);
            break;
        case BoundId::PropPower2:
            a.add("k odd", k >= 3 && k % 2 == 1);
            a.add("n odd", n % 2 == 1);
            a.add("n >= 4k - 3", n >= 4 * k - 3);
            a.add("gcd(n, k-1) = 1", std::gcd(n, k - 1) == 1);
            break;
        case BoundId::PropK7:
            a.add("k = 7", k == 7);
            a.add("n > 120 odd", n > 120 && n % 2 == 1);
            break;
        case BoundId::PropPrime:
            a.add("k odd", k >= 3 && k % 2 == 1);
            a.add("n prime", is_prime(n));
            a.add("n > 8k", n > 8 * k);
            break;
        case BoundId::PropPairs:
            a.add("k odd", k >= 3 && k % 2 == 1);
            a.add("gcd(n, 2) = 1", std::gcd(n, 2LL) == 1);
            if (q.s1) {
                a.add("gcd(n, s1) = 1", std::gcd(n, *q.s1) == 1);
                a.add("gcd(n, k + s1 - 1) = 1", std::gcd(n, k + *q.s1 - 1) == 1);
            }
            break;
    }
    return a;
}

/// Exact lower-bound term of the chosen theorem. Throws HypothesisError when a
/// hypothesis fails (unless forced) and DomainError when the formula is undefined.
inline BoundResult evaluate_bound(const BoundQuery& q) {
    if (q.n < 1 || q.k < 1 || q.subgroup_t < 1) throw DomainError("bound parameters must be positive");
    BoundResult r;
    r.id = q.id;
    r.n = q.n;
    r.k = q.k;
    r.subgroup_t = q.subgroup_t;
    r.v = 2 * q.n * q.k + q.subgroup_t;
    r.hypotheses = bound_hypotheses(q);
    if (!r.hypotheses.ok()) {
        if (!q.force) throw HypothesisError(to_string(q.id) + ": " + r.hypotheses.failures());
        r.forced = true;
    }

    const long long n = q.n, k = q.k;
    const double nd = static_cast<double>(n), kd = static_cast<double>(k);
    const double pi = std::numbers::pi, e = std::numbers::e;
    const BigInt nk2 = BigInt(2 * n * k) * (2 * n * k);

    // CDY-family: H(t-2) with t = (k-3)/4.
    auto derangement_term = [&]() -> BigInt {
        if (k < 3 || (k - 3) % 4 != 0) throw DomainError("k = " + std::to_string(k) + " is not of the form 4t + 3");
        r.cdy_t = (k - 3) / 4;
        if (*r.cdy_t < 2)
            throw DomainError("derangement term H(t-2) undefined for t = " + std::to_string(*r.cdy_t) + " (k = " + std::to_string(k) +
                              "); needs k >= 11");
        const BigInt h = derangements(*r.cdy_t - 2);
        return h * h;
    };
    auto lfact_t2 = [&] { return detail::lfact(*r.cdy_t - 2); };
    const BigInt prime_binom = binom(ceil_div(n, 2 * k), ceil_div(n, 8 * k));

    switch (q.id) {
        case BoundId::CDY: {
            r.formula = "(n-2) H(t-2)^2";
            detail::set_exact(r, BigRational(BigInt(n - 2) * derangement_term()));
            r.asymptotic_formula = "(n-2) ((t-2)!/e)^2";
            r.asymptotic = (nd - 2) * std::exp(2 * (lfact_t2() - 1));
            break;
        }
        case BoundId::GeneralBound: {
            r.formula = "(n-2) H(t-2)^2 / (2 (2nk)^2)";
            detail::set_exact(r, BigRational(BigInt(n - 2) * derangement_term(), 2 * nk2));
            const double t2 = static_cast<double>(*r.cdy_t - 2);
            r.asymptotic_formula = "pi (t-2)^(2t-5) / (64 e^(2t-2) n)";
            if (t2 > 0) r.asymptotic = pi * std::pow(t2, 2 * t2 - 1) / (64 * std::pow(e, 2 * t2 + 2) * nd);
            break;
        }
        case BoundId::CDY2: {
            r.formula = "2 (n-2) H(t-2)^2 C(ceil(n/2k), ceil(n/8k))";
            detail::set_exact(r, BigRational(2 * BigInt(n - 2) * derangement_term() * prime_binom));
            r.asymptotic_formula = "((t-2)!)^2 sqrt(kn) / (e^2 sqrt(3 pi)) 2^(n/(2k) H(1/4) + 3)";
            r.asymptotic = std::exp(2 * lfact_t2() - 2) * std::sqrt(kd * nd) / std::sqrt(3 * pi) *
                           std::exp2(nd / (2 * kd) * detail::H14() + 3);
            break;
        }
        case BoundId::CDY3: {
            r.formula = "(n-2) / (2nk)^2 H(t-2)^2 C(ceil(n/2k), ceil(n/8k))";
            detail::set_exact(r, BigRational(BigInt(n - 2) * derangement_term() * prime_binom, nk2));
            r.asymptotic_formula = "((t-2)!)^2 / (e^2 sqrt(3 pi (nk)^3)) 2^(n/(2k) H(1/4))";
            r.asymptotic = std::exp(2 * lfact_t2() - 2) / std::sqrt(3 * pi * std::pow(nd * kd, 3)) *
                           std::exp2(nd / (2 * kd) * detail::H14());
            break;
        }
        case BoundId::CDY4: {
            r.formula = "2 (n-2) C(n,2) H(t-2)^2";
            detail::set_exact(r, BigRational(2 * BigInt(n - 2) * binom(n, 2) * derangement_term()));
            r.asymptotic_formula = "n^3 ((t-2)!)^2 / e^2";
            r.asymptotic = nd * nd * nd * std::exp(2 * lfact_t2() - 2);
            break;
        }
        case BoundId::CDY5: {
            r.formula = "(n-2) / (2nk)^2 C(n,2) H(t-2)^2";
            detail::set_exact(r, BigRational(BigInt(n - 2) * binom(n, 2) * derangement_term(), nk2));
            r.asymptotic_formula = "n ((t-2)!)^2 / (8 (k e)^2)";
            r.asymptotic = nd * std::exp(2 * lfact_t2()) / (8 * kd * kd * e * e);
            break;
        }
        case BoundId::DiagBi: {
            r.formula = "2^(n/2) / (9 n^2)";
            r.v = 6 * n + q.subgroup_t;
            detail::set_sqrt(r, detail::pow2(n), BigInt(9) * n * n);
            break;
        }
        case BoundId::DiagBi2: {
            r.formula = "C(floor(n/(k-1)), floor(n/(4k-4))) / (nk)^2";
            if (k < 2) throw DomainError("k - 1 must be positive");
            detail::set_exact(r, BigRational(binom(n / (k - 1), n / (4 * k - 4)), BigInt(n * k) * (n * k)));
            r.asymptotic_formula = "sqrt(2(k-1)/(3 n pi)) 2^(floor(n/(k-1)) H(1/4) + 1) / (nk)^2";
            r.asymptotic = std::sqrt(2 * (kd - 1) / (3 * nd * pi)) *
                           std::exp2(static_cast<double>(n / (k - 1)) * detail::H14() + 1) / (nd * kd * nd * kd);
            break;
        }
        case BoundId::DiagBi3: {
            r.formula = "C(ceil(n/(k-1)), ceil(n/(4k-4))) / (nk)^2";
            if (k < 2) throw DomainError("k - 1 must be positive");
            detail::set_exact(r, BigRational(binom(ceil_div(n, k - 1), ceil_div(n, 4 * k - 4)), BigInt(n * k) * (n * k)));
            r.asymptotic_formula = "sqrt(2(k-1)/(3 n pi)) 2^(n/(k-1) H(1/4) + 1) / (nk)^2";
            r.asymptotic = std::sqrt(2 * (kd - 1) / (3 * nd * pi)) * std::exp2(nd / (kd - 1) * detail::H14() + 1) /
                           (nd * kd * nd * kd);
            break;
        }
        case BoundId::Prop3diag: {
            r.formula = "2^(n/2 + 2)";
            detail::set_sqrt(r, detail::pow2(n + 4), 1);
            break;
        }
        case BoundId::PropPower2: {
            r.formula = "4 C(ceil(n/(k-1)), ceil(n/(4k-4)))";
            if (k < 2) throw DomainError("k - 1 must be positive");
            detail::set_exact(r, BigRational(4 * binom(ceil_div(n, k - 1), ceil_div(n, 4 * k - 4))));
            r.asymptotic_formula = "sqrt(2(k-1)/(3 n pi)) 2^(n/(k-1) H(1/4) + 3)";
            r.asymptotic = std::sqrt(2 * (kd - 1) / (3 * nd * pi)) * std::exp2(nd / (kd - 1) * detail::H14() + 3);
            break;
        }
        case BoundId::PropK7: {
            r.formula = "4 C(floor(n/6), floor(n/24))";
            detail::set_exact(r, BigRational(4 * binom(n / 6, n / 24)));
            r.asymptotic_formula = "1/sqrt(n pi) 2^(floor(n/6) H(1/4) + 4)";
            r.asymptotic = std::exp2(static_cast<double>(n / 6) * detail::H14() + 4) / std::sqrt(nd * pi);
            break;
        }
        case BoundId::PropPrime: {
            r.formula = "2 C(ceil(n/2k), ceil(n/8k))";
            detail::set_exact(r, BigRational(2 * prime_binom));
            r.asymptotic_formula = "sqrt(k) / sqrt(3 pi n) 2^(n/(2k) H(1/4) + 3)";
            r.asymptotic = std::sqrt(kd) / std::sqrt(3 * pi * nd) * std::exp2(nd / (2 * kd) * detail::H14() + 3);
            break;
        }
        case BoundId::PropPairs: {
            r.formula = "2 C(n,2)";
            detail::set_exact(r, BigRational(2 * binom(n, 2)));
            break;
        }
    }
    return r;
}

} // namespace heffter
