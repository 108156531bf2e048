#include "gcdh/arith.hpp"
#include "gcdh/error.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace gcdh;

namespace {

// Reference: sum over the primes of both numerators computed from complete
// factorizations, independent of the gcd shortcut used by hgcd.
double hgcd_by_local_sums(const Rational& a, const Rational& b) {
    double total = 0;
    Factorization fa = factor(a.num());
    for (const auto& [p, e] : fa.factors) {
        (void)e;
        const double va = v_plus(a, Place::finite(p)).value;
        const double vb = v_plus(b, Place::finite(p)).value;
        total += std::min(va, vb);
    }
    total += std::min(v_plus(a, Place::archimedean()).value, v_plus(b, Place::archimedean()).value);
    return total;
}

Integer ipow(long base, unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

}  // namespace

TEST_CASE("rational canonical form") {
    Rational r(Integer(6), Integer(-4));
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational(Integer(0), Integer(-7)).den() == 1);
    CHECK(Rational::parse("10/-4") == Rational(Integer(-5), Integer(2)));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS_AS(Rational::parse("1/0"), ConfigError);
    CHECK_THROWS_AS(Rational::parse("3/x"), ConfigError);
    CHECK_THROWS_AS(Rational::parse(""), ConfigError);
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), MathError);
}

TEST_CASE("ord_p") {
    CHECK(ord_p(Rational(12), 2) == 2);
    CHECK(ord_p(Rational(Integer(5), Integer(8)), 2) == -3);
    CHECK(ord_p(Rational(7), 2) == 0);
    CHECK_THROWS_WITH_AS(ord_p(Rational(0), 2), "valuation of zero", MathError);
    CHECK_THROWS_AS(ord_p(Rational(12), 4), MathError);
}

TEST_CASE("v_plus") {
    CHECK(v_plus(Rational(12), Place::finite(2)).value == doctest::Approx(2 * std::log(2.0)));
    CHECK(*v_plus(Rational(12), Place::finite(2)).exact_arg == 4);
    CHECK(v_plus(Rational(12), Place::archimedean()).value == 0.0);
    CHECK(v_plus(Rational(Integer(1), Integer(2)), Place::archimedean()).value == doctest::Approx(std::log(2.0)));
    CHECK(v_plus(Rational(Integer(5), Integer(8)), Place::finite(2)).value == 0.0);
    CHECK_THROWS_AS(v_plus(Rational(0), Place::archimedean()), MathError);
}

TEST_CASE("weil_height") {
    CHECK(*weil_height(Rational(12)).exact_arg == 12);
    CHECK(*weil_height(Rational(Integer(5), Integer(12))).exact_arg == 12);
    CHECK(weil_height(Rational(1)).value == 0.0);
    CHECK(weil_height(Rational(0)).value == 0.0);
    CHECK(weil_height(Rational(-12)).value == doctest::Approx(std::log(12.0)));
}

TEST_CASE("hgcd examples") {
    const LogReal g = hgcd(Rational(12), Rational(18));
    CHECK(*g.exact_arg == 6);
    CHECK(g.value == doctest::Approx(std::log(6.0)));
    CHECK(hgcd(Rational(5), Rational(7)).value == 0.0);
    const LogReal h = hgcd(Rational(Integer(1), Integer(2)), Rational(Integer(1), Integer(3)));
    CHECK(h.value == doctest::Approx(std::log(2.0)));
    CHECK(*h.exact_arg == 2);
    CHECK_THROWS_WITH_AS(hgcd(Rational(0), Rational(0)), "infinite gcd height", MathError);
    // v+(0) is +inf everywhere, so hgcd(0, b) collapses to h(b).
    CHECK(*hgcd(Rational(0), Rational(Integer(3), Integer(7))).exact_arg == 7);
}

TEST_CASE("height identity over random rationals") {
    std::mt19937_64 rng(20260101);
    std::uniform_int_distribution<long> num(-1'000'000, 1'000'000);
    std::uniform_int_distribution<long> den(1, 1'000'000);
    for (int i = 0; i < 2000; ++i) {
        long n = num(rng);
        if (n == 0) n = 1;
        const Rational x(Integer(n), Integer(den(rng)));
        double sum = v_plus(x, Place::archimedean()).value;
        for (const auto& [p, e] : factor(x.num()).factors) {
            (void)e;
            sum += v_plus(x, Place::finite(p)).value;
        }
        // Primes of the denominator contribute v+ = 0.
        for (const auto& [p, e] : factor(x.den()).factors) {
            (void)e;
            CHECK(v_plus(x, Place::finite(p)).value == 0.0);
        }
        REQUIRE(std::fabs(sum - weil_height(x).value) <= 1e-9);
    }
}

TEST_CASE("gcd identity and symmetry over random integer pairs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-1'000'000, 1'000'000);
    for (int i = 0; i < 2000; ++i) {
        long a = dist(rng), b = dist(rng);
        if (a == 0) a = 3;
        if (b == 0) b = -5;
        const LogReal g = hgcd(Rational(a), Rational(b));
        REQUIRE(g.exact_arg.has_value());
        REQUIRE(*g.exact_arg == std::gcd(a, b));
        REQUIRE(*hgcd(Rational(b), Rational(a)).exact_arg == *g.exact_arg);
        REQUIRE(*hgcd(Rational(a), Rational(a)).exact_arg == std::labs(a));
    }
}

TEST_CASE("hgcd agrees with the factored local sum on rationals") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> num(-50'000, 50'000);
    std::uniform_int_distribution<long> den(1, 50'000);
    for (int i = 0; i < 500; ++i) {
        long n1 = num(rng), n2 = num(rng);
        if (n1 == 0) n1 = 1;
        if (n2 == 0) n2 = -1;
        const Rational a(Integer(n1), Integer(den(rng)));
        const Rational b(Integer(n2), Integer(den(rng)));
        const LogReal g = hgcd(a, b);
        REQUIRE(std::fabs(g.value - hgcd_by_local_sums(a, b)) <= 1e-9);
        if (g.exact_arg) REQUIRE(std::fabs(log_abs(*g.exact_arg) - g.value) <= 1e-12 * std::max(1.0, g.value));
    }
}

TEST_CASE("prime_to_S_part") {
    const PrimeSet s23({2, 3});
    CHECK(prime_to_S_part(720, s23) == 5);
    CHECK(prime_to_S_part(-8, PrimeSet({2})) == 1);
    CHECK(prime_to_S_part(35, s23) == 35);
    CHECK(is_S_unit(-8, PrimeSet({2})));
    CHECK_THROWS_AS(prime_to_S_part(0, s23), MathError);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> dist(1, 1'000'000);
    const PrimeSet s({2, 5, 7});
    for (int i = 0; i < 500; ++i) {
        const Integer x(dist(rng)), y(dist(rng));
        REQUIRE(prime_to_S_part(x, s) * S_part(x, s) == x);
        Integer g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        if (g == 1) REQUIRE(prime_to_S_part(x * y, s) == prime_to_S_part(x, s) * prime_to_S_part(y, s));
    }
}

TEST_CASE("prime set validation") {
    CHECK(PrimeSet({5, 2, 3, 2}).str() == "2,3,5");
    CHECK_THROWS_AS(PrimeSet({2, 4}), MathError);
    CHECK(PrimeSet::parse("").empty());
    CHECK_THROWS_AS(PrimeSet::parse("2,9"), ConfigError);
    CHECK(PrimeSet().includes_archimedean());
}

TEST_CASE("factor") {
    const Factorization f = factor(720);
    CHECK(f.complete);
    CHECK(f.factors == std::map<Integer, unsigned long>{{2, 4}, {3, 2}, {5, 1}});

    const Factorization g = factor(-17);
    CHECK(g.sign == -1);
    CHECK(g.factors == std::map<Integer, unsigned long>{{17, 1}});

    // Both factors exceed the trial bound, so this goes through rho.
    const Integer semi = Integer("1000003") * Integer("1000033");
    const Factorization h = factor(semi);
    CHECK(h.complete);
    CHECK(h.factors == std::map<Integer, unsigned long>{{Integer("1000003"), 1}, {Integer("1000033"), 1}});

    const Integer big = Integer("4294967311") * Integer("4294967357") * Integer("4294967357");
    const Factorization k = factor(big);
    CHECK(k.complete);
    CHECK(k.value() == big);
    CHECK(k.factors.at(Integer("4294967357")) == 2);

    Integer f128 = ipow(2, 128) + 1;
    const Factorization part = factor(f128, FactorBudget{100, 10});
    CHECK_FALSE(part.complete);
    CHECK(part.value() == f128);
    CHECK_THROWS_AS(factor(0), MathError);
}

TEST_CASE("factor round trip") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<unsigned long> dist(1, ~0UL >> 1);
    for (int i = 0; i < 200; ++i) {
        Integer n(static_cast<unsigned long>(dist(rng)));
        if (i % 2) n = -n;
        const Factorization f = factor(n);
        REQUIRE(f.complete);
        REQUIRE(f.value() == n);
        for (const auto& [p, e] : f.factors) {
            (void)e;
            REQUIRE(is_prime(p));
        }
    }
}

TEST_CASE("mult_independent examples") {
    CHECK(mult_independent(2, 3));
    CHECK_FALSE(mult_independent(4, 8));
    CHECK(mult_independent(12, 18));
    CHECK_THROWS_AS(mult_independent(1, 3), MathError);
    const Integer hard = ipow(2, 128) + 1;
    CHECK_THROWS_WITH_AS(mult_independent(hard, 3, FactorBudget{100, 10}), "independence undecidable at budget",
                         MathError);
}

TEST_CASE("mult_independent agrees with brute force") {
    for (long a = 2; a <= 50; ++a) {
        for (long b = 2; b <= 50; ++b) {
            bool related = false;
            for (unsigned long m = 1; m <= 20 && !related; ++m)
                for (unsigned long n = 1; n <= 20 && !related; ++n) related = ipow(a, m) == ipow(b, n);
            REQUIRE(mult_independent(a, b) == !related);
        }
    }
}
