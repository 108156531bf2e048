#include "gcdh/error.hpp"
#include "gcdh/gcd_height.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gcdh;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

PnPoint pn(std::initializer_list<long> xs) { return normalize_pn(ints(xs)); }

PolySystem diag_system(int r = 2) {
    return PolySystem({Polynomial::parse("X1-X0"), Polynomial::parse("X2-X0")}, r);
}

Point curve_point(const Curve& c, long x, long y) {
    const Point p = Point::affine(x, y);
    REQUIRE(on_curve(c, p));
    return p;
}

}  // namespace

TEST_CASE("polynomial parsing") {
    const Polynomial f = Polynomial::parse("3*X0^2*X1 - 2 X2^3 + X1*X0*X0");
    CHECK(f.is_homogeneous());
    CHECK(f.degree() == 3);
    CHECK(f.variables() == 3);
    CHECK(f.eval(ints({1, 2, 3})) == 3 * 2 - 2 * 27 + 2);
    CHECK(Polynomial::parse("7X1").eval(ints({0, 2})) == 14);
    CHECK(Polynomial::parse("X1-X1").is_zero());
    CHECK_FALSE(Polynomial::parse("X0^2 - X1").is_homogeneous());
    CHECK(Polynomial::parse(Polynomial::parse("-X0+4*X1^2*X2").str()).terms() ==
          Polynomial::parse("4*X1^2*X2-X0").terms());
    CHECK(Polynomial::parse("-5").str() == "-5");
    CHECK_THROWS_AS(Polynomial::parse(""), ConfigError);
    CHECK_THROWS_AS(Polynomial::parse("X"), ConfigError);
    CHECK_THROWS_AS(Polynomial::parse("X1 +"), ConfigError);
    CHECK_THROWS_AS(Polynomial::parse("Y1"), ConfigError);
    CHECK_THROWS_AS(Polynomial::parse("X1 X2 ^"), ConfigError);
    CHECK_THROWS_AS(Polynomial::parse("X0").eval(ints({})), MathError);
}

TEST_CASE("PolySystem validation") {
    CHECK_NOTHROW(diag_system());
    CHECK_THROWS_AS(PolySystem({}, 2), MathError);
    CHECK_THROWS_AS(PolySystem({Polynomial::parse("X1-X0")}, 1), MathError);
    CHECK_THROWS_AS(PolySystem({Polynomial::parse("X1^2-X0")}, 2), MathError);
    CHECK_THROWS_AS(PolySystem({Polynomial::parse("X1-X1")}, 2), MathError);
}

TEST_CASE("normalize_pn") {
    CHECK(pn({2, 4, 6}).coords() == ints({1, 2, 3}));
    CHECK(pn({-3, 6}).coords() == ints({1, -2}));
    CHECK(pn({0, 0, 5}).coords() == ints({0, 0, 1}));
    CHECK(pn({0, -4, 6}).coords() == ints({0, 2, -3}));
    CHECK_THROWS_AS(pn({0, 0, 0}), MathError);
    CHECK_THROWS_AS(pn({5}), MathError);
}

TEST_CASE("hgcd_pn_coordpoint") {
    CHECK(*hgcd_pn_coordpoint(pn({7, 6, 10})).exact_arg == 2);
    CHECK(hgcd_pn_coordpoint(pn({7, 6, 10})).value == doctest::Approx(std::log(2.0)));
    CHECK(hgcd_pn_coordpoint(pn({5, 2, 3})).value == 0.0);
    CHECK_THROWS_WITH_AS(hgcd_pn_coordpoint(pn({1, 0, 0})), doctest::Contains("blown-up locus"), MathError);
    // Scaling does not change the value.
    CHECK(*hgcd_pn_coordpoint(pn({14, 12, 20})).exact_arg == 2);
}

TEST_CASE("hgcd_pn_subvariety") {
    const PolySystem sys = diag_system();
    CHECK(*hgcd_pn_subvariety(pn({1, 3, 5}), sys).exact_arg == 2);
    CHECK(hgcd_pn_subvariety(pn({1, 2, 3}), sys).value == 0.0);
    CHECK_THROWS_WITH_AS(hgcd_pn_subvariety(pn({1, 1, 1}), sys), doctest::Contains("point on V"), MathError);
    // One vanishing f_i leaves the others.
    CHECK(*hgcd_pn_subvariety(pn({1, 1, 7}), sys).exact_arg == 6);
    CHECK_THROWS_AS(hgcd_pn_subvariety(pn({1, 3}), sys), MathError);
}

TEST_CASE("blowup identity over random integer pairs") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> dist(-1'000'000, 1'000'000);
    const PolySystem shifted = diag_system();
    const PolySystem axes({Polynomial::parse("X1"), Polynomial::parse("X2")}, 2);
    for (int i = 0; i < 500; ++i) {
        const long a = dist(rng);
        const long b = dist(rng);
        const PnPoint x = pn({1, a, b});
        if (a != 1 || b != 1) {
            const LogReal h = hgcd(Rational(a - 1), Rational(b - 1));
            REQUIRE(*h.exact_arg == *hgcd_pn_subvariety(x, shifted).exact_arg);
        }
        if (a != 0 || b != 0) {
            const LogReal h = hgcd(Rational(a), Rational(b));
            REQUIRE(*h.exact_arg == *hgcd_pn_subvariety(x, axes).exact_arg);
            REQUIRE(*h.exact_arg == *hgcd_pn_coordpoint(x).exact_arg);
        }
    }
}

TEST_CASE("counting_function_pn") {
    CHECK(counting_function_pn(pn({1, 2, 9}), PrimeSet({2, 3})).value == 0.0);
    CHECK(*counting_function_pn(pn({1, 2, 5}), PrimeSet({2})).exact_arg == 5);
    CHECK(counting_function_pn(pn({1, 2, 5}), PrimeSet({2})).value == doctest::Approx(std::log(5.0)));
    CHECK(counting_function_pn(pn({3, -8, 27}), PrimeSet({2, 3})).value == 0.0);
    CHECK(*counting_function_pn(pn({1, 6, 35}), PrimeSet()).exact_arg == 210);
    CHECK_THROWS_AS(counting_function_pn(pn({1, 0, 5}), PrimeSet({2})), MathError);
}

TEST_CASE("vojta_rhs") {
    const VojtaParams p{0.1, 1.0, 0.0, 2};
    CHECK(vojta_rhs(10, 0, p) == doctest::Approx(1.0));
    CHECK(vojta_rhs(10, 0, VojtaParams{0.1, 1.0, 3.0, 2}) == doctest::Approx(4.0));
    CHECK(vojta_rhs(0, 11, VojtaParams{0.1, 10.0, 0.0, 2}) == doctest::Approx(11.0 / 2.0));
    // Counting coefficient decays like 1/r.
    CHECK(vojta_rhs(0, 1, VojtaParams{0.1, 1.0, 0.0, 1'000'000}) < 1e-5);

    double previous = -1e300;
    for (double t = 0; t <= 5; t += 0.5) {
        const double v = vojta_rhs(t, t, VojtaParams{0.2 + t / 10, 1.0, t, 3});
        REQUIRE(v >= previous);
        previous = v;
    }

    CHECK_THROWS_AS(vojta_rhs(1, 1, VojtaParams{0.0, 1.0, 0.0, 2}), MathError);
    CHECK_THROWS_AS(vojta_rhs(1, 1, VojtaParams{1.0, 1.0, 0.0, 2}), MathError);
    CHECK_THROWS_AS(vojta_rhs(1, 1, VojtaParams{0.5, 0.0, 0.0, 2}), MathError);
    CHECK_THROWS_AS(vojta_rhs(1, 1, VojtaParams{0.5, 1.0, 0.0, 1}), MathError);
    CHECK_THROWS_AS(vojta_rhs(1, 1, VojtaParams{0.5, 1.0, NAN, 2}), MathError);
}

TEST_CASE("check_pn") {
    // eps = 1 needs r >= 3.
    const PolySystem sys3({Polynomial::parse("X1-X0"), Polynomial::parse("X2-X0")}, 3);
    const BoundRecord rec = check_pn(pn({1, 2, 3}), sys3, PrimeSet(), VojtaParams{1.0, 1.0, 10.0, 3});
    CHECK(rec.holds);
    CHECK(rec.lhs == 0.0);
    CHECK(rec.height_term == doctest::Approx(std::log(3.0)));
    CHECK(rec.counting_term == doctest::Approx(std::log(6.0) / 3.0));
    CHECK(rec.rhs == doctest::Approx(std::log(3.0) + std::log(6.0) / 3.0 + 10.0));
    CHECK(rec.descriptor.find("smooth") != std::string::npos);
    CHECK_THROWS_AS(check_pn(pn({1, 2, 3}), diag_system(), PrimeSet(), VojtaParams{1.0, 1.0, 10.0, 2}), MathError);
    CHECK_THROWS_AS(check_pn(pn({1, 2, 3}), diag_system(), PrimeSet(), VojtaParams{0.5, 1.0, 0.0, 3}), MathError);

    // G_m^2 instance: S-unit coordinates have zero counting term.
    const PrimeSet s({2, 3});
    const BoundRecord unit = check_pn(pn({1, 4, 9}), diag_system(), s, VojtaParams{0.5, 1.0, 0.0, 2});
    CHECK(unit.counting_term == 0.0);
    CHECK(*unit.lhs_witness == 1);
    const BoundRecord bad = check_pn(pn({1, 4, 16}), diag_system(), s, VojtaParams{0.1, 1.0, 0.0, 2});
    CHECK(*bad.lhs_witness == 3);
    CHECK(bad.rhs == doctest::Approx(0.1 * std::log(16.0)));
    CHECK_FALSE(bad.holds);

    // Scaling invariance.
    CHECK(check_pn(pn({2, 6, 10}), diag_system(), PrimeSet(), VojtaParams{0.5, 1.0, 0.0, 2}).lhs ==
          check_pn(pn({1, 3, 5}), diag_system(), PrimeSet(), VojtaParams{0.5, 1.0, 0.0, 2}).lhs);
    CHECK_THROWS_AS(check_pn(pn({1, 0, 5}), diag_system(), PrimeSet(), VojtaParams{0.5, 1.0, 0.0, 2}), MathError);
}

TEST_CASE("check_e2") {
    const Curve c(0, 0, 0, 0, -2);
    const Point p = curve_point(c, 3, 5);
    const Point p2 = scalar_mul(c, 2, p);
    const BoundRecord integral = check_e2(c, p, p, 0.1, 0.0);
    CHECK(integral.lhs == 0.0);
    CHECK(integral.holds);

    const BoundRecord rec = check_e2(c, p2, p2, 0.1, 1.0);
    CHECK(*rec.lhs_witness == 10);
    CHECK(rec.lhs == doctest::Approx(std::log(10.0)));
    CHECK(rec.rhs == doctest::Approx(2 * 0.1 * std::log(129.0) + 1.0));
    CHECK_FALSE(rec.holds);
    CHECK_THROWS_AS(check_e2(c, Point(), p, 0.1, 0.0), MathError);

    // Diagonal pairs violate for small eps.
    const Curve c37(0, 0, 1, -1, 0);
    const auto ms = multiples(c37, curve_point(c37, 0, 0), 20);
    int diagonal_violations = 0;
    for (std::size_t n = 10; n < 20; ++n) diagonal_violations += !check_e2(c37, ms[n], ms[n], 0.1, 0.0).holds;
    CHECK(diagonal_violations == 10);
}

TEST_CASE("check_mixed") {
    const Curve c(0, 0, 0, 0, -2);
    const Point p = curve_point(c, 3, 5);
    CHECK(check_mixed(c, p, 9, PrimeSet({3}), 0.1, 1.0).lhs == 0.0);

    const BoundRecord rec = check_mixed(c, scalar_mul(c, 2, p), 9, PrimeSet({3}), 0.1, 1.0);
    CHECK(*rec.lhs_witness == 2);
    CHECK(rec.lhs == doctest::Approx(std::log(2.0)));
    CHECK(rec.rhs == doctest::Approx(0.1 * std::log(10.0)));
    CHECK_THROWS_AS(check_mixed(c, p, 2, PrimeSet({3}), 0.1, 1.0), MathError);
    CHECK_THROWS_AS(check_mixed(c, p, 1, PrimeSet({3}), 0.1, 1.0), MathError);
    CHECK_THROWS_AS(check_mixed(c, p, 9, PrimeSet({3}), 0.1, 0.0), MathError);
    CHECK(check_mixed(c, scalar_mul(c, 2, p), -9, PrimeSet({3}), 0.1, 1.0).lhs_witness == 10);
}
