#include "gcdh/arith.hpp"

#include "gcdh/error.hpp"

#include <algorithm>
#include <limits>

namespace gcdh {
namespace {

long ord_integer(const Integer& n, const Integer& p) {
    Integer rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

// Archimedean v+(x) = max(-log|x|, 0); +inf at zero.
double arch_v_plus(const Rational& x) {
    if (x.is_zero()) return std::numeric_limits<double>::infinity();
    if (abs(x.num()) >= x.den()) return 0.0;
    return log_abs(x.den()) - log_abs(x.num());
}

}  // namespace

long ord_p(const Rational& x, const Integer& p) {
    if (x.is_zero()) throw MathError("valuation of zero");
    if (!is_prime(p)) throw MathError("ord_p needs a prime, got " + p.get_str());
    return ord_integer(x.num(), p) - ord_integer(x.den(), p);
}

LogReal v_plus(const Rational& x, const Place& place) {
    if (x.is_zero()) throw MathError("v+ of zero is infinite");
    if (place.is_archimedean()) {
        const double v = arch_v_plus(x);
        if (v == 0.0) return LogReal::of_integer(1);
        if (abs(x.num()) == 1) return LogReal::of_integer(x.den());
        return LogReal::of_real(v);
    }
    const long e = ord_p(x, place.prime);
    if (e <= 0) return LogReal::of_integer(1);
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), place.prime.get_mpz_t(), static_cast<unsigned long>(e));
    return LogReal::of_integer(pe);
}

LogReal weil_height(const Rational& x) {
    if (x.is_zero()) return LogReal::of_integer(1);
    return LogReal::of_integer(std::max<Integer>(abs(x.num()), x.den()));
}

LogReal hgcd(const Rational& a, const Rational& b) {
    if (a.is_zero() && b.is_zero()) throw MathError("infinite gcd height");

    // Finite places: v+(x) > 0 exactly at primes dividing the numerator, so
    // the sum of min(ord_p) log p over those primes is log gcd(num_a, num_b).
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());

    const double va = arch_v_plus(a);
    const double vb = arch_v_plus(b);
    const bool a_closer = va <= vb;
    const double arch = a_closer ? va : vb;
    if (arch == 0.0) return LogReal::of_integer(g);

    // The archimedean term is log(den / |num|) of the closer argument; keep
    // the witness when g * den / |num| is still an integer.
    const Rational& closer = a_closer ? a : b;
    Integer scaled = g * closer.den();
    const Integer n = abs(closer.num());
    if (mpz_divisible_p(scaled.get_mpz_t(), n.get_mpz_t())) {
        scaled /= n;
        return LogReal::of_integer(scaled);
    }
    return LogReal::of_real(log_abs(g) + arch);
}

}  // namespace gcdh
