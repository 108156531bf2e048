#pragma once

// Divisibility sequences attached to the multiplicative group G_m over Q:
// the sequences |a^n - b^n|, gcd(a^n - 1, b^n - 1) scans, S-unit
// enumeration, and the three-way classification of S-unit pairs.

#include "gcdh/arith.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gcdh {

// The point a/b of G_m(Q): gcd(a, b) = 1, b > 0, a/b not 0 or +-1.
class MulPoint {
public:
    MulPoint(Integer a, Integer b);
    static MulPoint from(const Rational& x) { return MulPoint(x.num(), x.den()); }

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }
    Rational value() const { return Rational(a_, b_); }
    // The point (a/b)^n, reduced.
    MulPoint power(unsigned long n) const;

private:
    Integer a_;
    Integer b_;
};

struct MulDivSeq {
    MulPoint point;
    std::vector<Integer> terms;  // terms[i] = D_{i+1}
};

// D_P = |a - b|, the numerator of a/b - 1 in lowest terms.
Integer mul_D(const MulPoint& p);

// D_1 .. D_count, each obtained from the reduced n-th power point.
MulDivSeq mul_seq(const MulPoint& p, std::size_t count);

// gcd(a^n - 1, b^n - 1).
Integer gcd_pair(const Integer& a, const Integer& b, unsigned long n);

struct BczScan {
    std::vector<unsigned long> violations;  // ascending
    std::optional<unsigned long> max_violator;
};

// All n <= n_max with log gcd(a^n - 1, b^n - 1) > eps * n * log 2 + 1e-9.
// Requires a, b >= 2 multiplicatively independent and 0 < eps < 1.
BczScan bcz_scan(const Integer& a, const Integer& b, double eps, unsigned long n_max, unsigned jobs = 1);

// All x with 2 <= |x| <= bound whose primes lie in S, ordered by (|x|, x).
std::vector<Integer> s_unit_enumerate(const PrimeSet& S, const Integer& bound);

struct CzVerdict {
    enum class Kind { PowerRelation, InequalityHolds, Exceptional };
    Kind kind = Kind::Exceptional;
    unsigned long m = 0;  // alpha^m = beta^n when kind == PowerRelation
    unsigned long n = 0;
    Integer gcd;          // gcd(alpha - 1, beta - 1)
    double lhs = 0.0;     // log gcd
    double rhs = 0.0;     // eps * log max(|alpha|, |beta|)
};

const char* to_string(CzVerdict::Kind kind);

// Largest exponent searched for a power relation: ceil(1/eps).
unsigned long cz_exponent_bound(double eps);

// Power relation with 1 <= max(m, n) <= ceil(1/eps) first (smallest max,
// then smallest m), else the gcd inequality, else Exceptional. Alpha and beta
// must be S-units with absolute value >= 2.
CzVerdict cz_classify(const Integer& alpha, const Integer& beta, const PrimeSet& S, double eps);

struct ArReturns {
    std::vector<unsigned long> returns;  // n with gcd_pair(a,b,n) == gcd(a-1,b-1)
    double density = 0.0;                // returns.size() / n_max
};

ArReturns ar_returns(const Integer& a, const Integer& b, unsigned long n_max, unsigned jobs = 1);

struct DivisibilityReport {
    bool holds = true;
    // First failing 1-based index pair (m, n), m | n, in (m, n) order.
    std::optional<std::pair<std::size_t, std::size_t>> counterexample;
};

// Checks m | n => seq[m] | seq[n] for all 1-based indices in range. Primes in
// `ignore` are stripped from every term first.
DivisibilityReport divisibility_check(std::span<const Integer> seq, const PrimeSet& ignore = {});

}  // namespace gcdh
