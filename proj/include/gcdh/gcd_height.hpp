#pragma once

// Generalized gcd heights for the explicit blowup cases over Q: a coordinate
// point or a subvariety V = {f_1 = ... = f_t = 0} of P^n, pairs of points on
// E^2, and E x G_m. The check_* functions evaluate one instance of the
// corresponding Vojta-type bound with a caller-supplied constant C.
//
// All O(1) terms of the height identities are taken to be 0.

#include "gcdh/arith.hpp"
#include "gcdh/elliptic.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gcdh {

// Integer-coefficient polynomial in X0, X1, ..., stored as a map from
// exponent vectors (trailing zeros trimmed) to nonzero coefficients.
class Polynomial {
public:
    using Exponents = std::vector<unsigned>;

    Polynomial() = default;
    explicit Polynomial(std::map<Exponents, Integer> terms);

    // Sums of monomials such as "X1-X0", "3*X0^2*X1 - 2*X2^3", "X0 + 7X1".
    // Throws ConfigError with the offending text.
    static Polynomial parse(std::string_view text);

    const std::map<Exponents, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const;
    // Degree of the first monomial; meaningful when homogeneous.
    unsigned degree() const;
    // One more than the largest variable index that occurs.
    std::size_t variables() const;

    // Throws MathError if x has too few coordinates.
    Integer eval(const std::vector<Integer>& x) const;
    std::string str() const;

private:
    std::map<Exponents, Integer> terms_;
};

// Homogeneous f_1..f_t cutting out V, with the caller-asserted codimension
// r = n - dim V >= 2.
class PolySystem {
public:
    // Throws MathError when empty, when some f_i is zero or inhomogeneous,
    // or when codim_r < 2.
    PolySystem(std::vector<Polynomial> polys, int codim_r);

    const std::vector<Polynomial>& polys() const { return polys_; }
    int codim_r() const { return codim_r_; }
    std::size_t variables() const;
    std::string str() const;

private:
    std::vector<Polynomial> polys_;
    int codim_r_ = 2;
};

// Primitive coordinates of a point of P^n(Q): gcd 1, first nonzero entry
// positive.
class PnPoint {
public:
    const std::vector<Integer>& coords() const { return coords_; }
    std::size_t dimension() const { return coords_.size() - 1; }
    std::string str() const;

    friend bool operator==(const PnPoint&, const PnPoint&) = default;

private:
    friend PnPoint normalize_pn(std::vector<Integer> raw);
    std::vector<Integer> coords_;
};

// Throws MathError for the zero vector or fewer than two coordinates.
PnPoint normalize_pn(std::vector<Integer> raw);

// log gcd(x_1, ..., x_n): the gcd height against Y = [1, 0, ..., 0].
LogReal hgcd_pn_coordpoint(const PnPoint& x);

// log gcd of the nonzero values f_i(x). Throws MathError("point on V") if every
// f_i vanishes at x.
LogReal hgcd_pn_subvariety(const PnPoint& x, const PolySystem& sys);

// log of the prime-to-S part of |x_0 x_1 ... x_n|. Needs every coordinate
// nonzero.
LogReal counting_function_pn(const PnPoint& x, const PrimeSet& S);

struct VojtaParams {
    double epsilon = 0.0;
    double delta = 1.0;
    double C = 0.0;
    int r = 2;

    // Throws MathError unless 0 < epsilon < r - 1, delta > 0, r >= 2 and all
    // values are finite.
    void validate() const;
};

// epsilon * hA + hCount / (r - 1 + delta * epsilon) + C.
double vojta_rhs(double hA, double hCount, const VojtaParams& p);

struct BoundRecord {
    double lhs = 0.0;
    std::optional<Integer> lhs_witness;  // the gcd when lhs is its log
    double rhs = 0.0;
    bool holds = false;  // lhs <= rhs + 1e-9
    double height_term = 0.0;
    double counting_term = 0.0;
    double constant = 0.0;
    std::string descriptor;

    // The part of rhs that does not depend on the constant.
    double rhs_without_constant() const { return height_term + counting_term; }
};

// P^n with V = sys: hA = log max |x_i|. V must be smooth and disjoint from
// the coordinate hyperplanes; this is not checked and is noted in the
// descriptor.
BoundRecord check_pn(const PnPoint& x, const PolySystem& sys, const PrimeSet& S, const VojtaParams& p);

// E^2 at (P, Q): log gcd(D_P, D_Q) <= eps * (h(P) + h(Q)) + C with h the
// naive height.
BoundRecord check_e2(const Curve& c, const Point& P, const Point& Q, double eps, double C);

// E x G_m at (Q, b): log gcd(D_Q, b - 1) <= log C + eps * log max(D_Q, |b|).
// b must be an S-unit with |b| >= 2 and C > 0.
BoundRecord check_mixed(const Curve& c, const Point& Q, const Integer& b, const PrimeSet& S, double eps,
                        double C);

}  // namespace gcdh
