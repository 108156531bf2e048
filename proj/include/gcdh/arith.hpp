#pragma once

// Exact integer/rational arithmetic over Q: valuations at each place, Weil
// heights, the generalized gcd height, and integer factorization.
//
// Valuation convention: for a place v of Q we use v(x) = -log|x|_v, so v(x)
// is large when x is v-adically close to 0. At a prime p this is
// ord_p(x) * log p; at the archimedean place it is -log|x|. With
// v+(x) = max(v(x), 0) the sum over all places of v+(x) is the absolute
// logarithmic Weil height log max(|num|, den).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gcdh {

using Integer = mpz_class;

Integer parse_integer(std::string_view token);

// Exact rational in lowest terms with positive denominator; zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(implicit)
    Rational(const Integer& value) : value_(value) {}  // NOLINT(implicit)
    Rational(const Integer& num, const Integer& den);

    // Accepts "n" or "n/d".
    static Rational parse(std::string_view token);

    const Integer& num() const { return value_.get_num(); }
    const Integer& den() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational inverse() const;
    Rational pow(unsigned long e) const;
    Rational abs() const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ + b.value_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ - b.value_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ * b.value_)); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string str() const;

private:
    explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }
    mpq_class value_;
};

// Natural log of |n|; n must be nonzero. Accurate to double precision for
// integers of any size.
double log_abs(const Integer& n);
double log_abs(const Rational& x);

// A real number interpreted as a natural logarithm. When the quantity is the
// log of a known positive integer, that integer is carried as exact_arg and
// all equality-type comparisons should use it.
struct LogReal {
    double value = 0.0;
    std::optional<Integer> exact_arg;

    static LogReal of_integer(const Integer& positive);
    static LogReal of_real(double v) { return LogReal{v, std::nullopt}; }
};

// A place of Q: a rational prime, or the archimedean place (prime == 0).
struct Place {
    Integer prime{0};

    static Place archimedean() { return Place{}; }
    static Place finite(const Integer& p) { return Place{p}; }
    bool is_archimedean() const { return prime == 0; }
};

// Finite set S of rational primes. The archimedean place is always in S.
class PrimeSet {
public:
    PrimeSet() = default;
    // Sorts and removes duplicates; rejects non-primes with MathError.
    explicit PrimeSet(std::vector<Integer> primes);
    // Comma-separated list, possibly empty.
    static PrimeSet parse(std::string_view csv);

    const std::vector<Integer>& primes() const { return primes_; }
    bool contains(const Integer& p) const;
    bool empty() const { return primes_.empty(); }
    bool includes_archimedean() const { return true; }
    std::string str() const;

private:
    std::vector<Integer> primes_;
};

struct FactorBudget {
    unsigned long trial_bound = 1'000'000;
    unsigned long rho_iterations = 1'000'000;
};

// sign * prod p^e * cofactor == n. When complete is false the cofactor is a
// composite that could not be split within the budget.
struct Factorization {
    int sign = 1;
    std::map<Integer, unsigned long> factors;
    bool complete = true;
    Integer cofactor{1};

    Integer value() const;
};

bool is_prime(const Integer& n);

Factorization factor(const Integer& n, const FactorBudget& budget = {});

// ord_p(num) - ord_p(den). Throws MathError for x == 0 or p not prime.
long ord_p(const Rational& x, const Integer& p);

// max(v(x), 0) at the given place. Throws MathError for x == 0.
LogReal v_plus(const Rational& x, const Place& place);

// log max(|num|, den). h(0) is defined as 0.
LogReal weil_height(const Rational& x);

// Sum over all places of min(v+(a), v+(b)) with v+(0) = +inf. For nonzero
// integers this is exactly log gcd(a, b).
LogReal hgcd(const Rational& a, const Rational& b);

// Largest divisor of |x| coprime to every prime of S.
Integer prime_to_S_part(const Integer& x, const PrimeSet& S);
// |x| / prime_to_S_part(x, S).
Integer S_part(const Integer& x, const PrimeSet& S);
bool is_S_unit(const Integer& x, const PrimeSet& S);

// True iff a^m == b^n has no solution with (m, n) != (0, 0). Requires
// a, b >= 2; decided from factorization exponent vectors.
bool mult_independent(const Integer& a, const Integer& b, const FactorBudget& budget = {});

}  // namespace gcdh
