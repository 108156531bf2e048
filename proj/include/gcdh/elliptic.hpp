#pragma once

// Elliptic curves over Q in long Weierstrass form
//   y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6,   a_i in Z,
// with exact rational points, the denominator D_P of x_P = A_P / D_P^2,
// elliptic divisibility sequences, and naive/canonical heights.
//
// D_P here is the naive denominator on the given model. On a non-minimal
// model it can differ from the Neron-model definition at finitely many bad
// primes; divisibility checks accept a prime mask for that case.

#include "gcdh/arith.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gcdh {

class Curve {
public:
    // Throws MathError when the discriminant vanishes.
    Curve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);
    // "a1,a2,a3,a4,a6"
    static Curve parse(std::string_view csv);

    const Integer& a1() const { return a1_; }
    const Integer& a2() const { return a2_; }
    const Integer& a3() const { return a3_; }
    const Integer& a4() const { return a4_; }
    const Integer& a6() const { return a6_; }

    Integer discriminant() const;
    std::string str() const;

private:
    Integer a1_, a2_, a3_, a4_, a6_;
};

// The identity O, or an affine point whose x-denominator is D^2 and whose
// y-denominator is D^3 for one D > 0.
class Point {
public:
    Point() = default;  // identity
    static Point identity() { return Point(); }
    // Throws MathError when the denominators do not have the D^2, D^3 shape.
    static Point affine(Rational x, Rational y);
    // "x,y" with rational coordinates.
    static Point parse(std::string_view csv);

    bool is_identity() const { return identity_; }
    const Rational& x() const { return x_; }
    const Rational& y() const { return y_; }
    std::string str() const;

    friend bool operator==(const Point& p, const Point& q) {
        if (p.identity_ || q.identity_) return p.identity_ == q.identity_;
        return p.x_ == q.x_ && p.y_ == q.y_;
    }

private:
    bool identity_ = true;
    Rational x_;
    Rational y_;
};

bool on_curve(const Curve& c, const Point& p);

// Chord-and-tangent group law. Inputs must lie on the curve.
Point neg(const Curve& c, const Point& p);
Point add(const Curve& c, const Point& p, const Point& q);
Point scalar_mul(const Curve& c, long n, const Point& p);

// Positive square root of den(x_P). Throws for the identity.
Integer denominator_D(const Point& p);

// P, 2P, ..., count*P computed incrementally. Throws MathError("point has
// finite order n") if some multiple is the identity, and for off-curve P.
std::vector<Point> multiples(const Curve& c, const Point& p, std::size_t count);

struct EDS {
    Curve curve;
    Point base;
    std::vector<Integer> terms;  // terms[i] = D_{(i+1)P}
};

EDS eds(const Curve& c, const Point& p, std::size_t count);

// log max(|A_P|, D_P^2); 0 for the identity. This is log H(P) = 2 h_{E,O}(P).
LogReal naive_height(const Point& p);

struct CanonicalHeight {
    double value = 0.0;
    unsigned iterations = 0;  // doublings performed
    bool converged = false;
    bool possibly_torsion = false;
};

// Estimates lim naive_height(2^k P) / (2 * 4^k), normalized so it is the
// limit of h_{E,O}(nP)/n^2. Stops when successive estimates differ by less
// than tol and the bound on the remaining steps is below tol (from k = 3 on),
// or at k = 8.
CanonicalHeight canonical_height(const Curve& c, const Point& p, double tol);

// gcd(D_P, D_Q) for affine P, Q.
Integer gcd_D(const Point& p, const Point& q);
// log gcd(D_P, D_Q) with exact witness.
LogReal hgcd_e2(const Point& p, const Point& q);

// The local-sum form (1/2) sum_v min(v+(1/x_P), v+(1/x_Q)), split into the
// finite-place part (computed prime by prime from a factorization of D_P)
// and the archimedean term, which is reported separately.
struct E2LocalSum {
    LogReal finite;
    double archimedean = 0.0;
};
E2LocalSum hgcd_e2_local(const Point& p, const Point& q, const FactorBudget& budget = {});

// 2 log D_{nP} / naive_height(nP); 0 when the height vanishes.
double siegel_ratio(const Point& multiple);
double siegel_ratio(const Curve& c, const Point& p, unsigned long n);

// Coprime (m, n) with m, n >= 0, not both zero, m^2 + n^2 <= 1/(2 eps),
// ordered by m^2 + n^2 then m. Empty for eps > 1/2.
std::vector<std::pair<long, long>> exceptional_subgroups(double eps);

}  // namespace gcdh
