#include "gcdh/elliptic.hpp"

#include "gcdh/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gcdh {
namespace {

std::vector<std::string> split_commas(std::string_view csv) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in{std::string(csv)};
    while (std::getline(in, item, ',')) parts.push_back(item);
    if (!csv.empty() && csv.back() == ',') parts.emplace_back();
    return parts;
}

// Exact square root of a perfect square, or nullopt.
std::optional<Integer> exact_sqrt(const Integer& n) {
    if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

constexpr unsigned kMaxDoublings = 8;
constexpr unsigned kMinDoublings = 3;

}  // namespace

Curve::Curve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)) {
    if (discriminant() == 0) throw MathError("singular Weierstrass equation (discriminant 0)");
}

Curve Curve::parse(std::string_view csv) {
    const auto parts = split_commas(csv);
    if (parts.size() != 5) throw ConfigError("curve needs a1,a2,a3,a4,a6, got '" + std::string(csv) + "'");
    try {
        return Curve(parse_integer(parts[0]), parse_integer(parts[1]), parse_integer(parts[2]),
                     parse_integer(parts[3]), parse_integer(parts[4]));
    } catch (const MathError& e) {
        throw ConfigError(std::string(e.what()) + " for curve '" + std::string(csv) + "'");
    } catch (const ConfigError&) {
        throw ConfigError("malformed curve '" + std::string(csv) + "'");
    }
}

Integer Curve::discriminant() const {
    const Integer b2 = a1_ * a1_ + 4 * a2_;
    const Integer b4 = 2 * a4_ + a1_ * a3_;
    const Integer b6 = a3_ * a3_ + 4 * a6_;
    const Integer b8 = a1_ * a1_ * a6_ + 4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

std::string Curve::str() const {
    return a1_.get_str() + "," + a2_.get_str() + "," + a3_.get_str() + "," + a4_.get_str() + "," +
           a6_.get_str();
}

Point Point::affine(Rational x, Rational y) {
    const auto d = exact_sqrt(x.den());
    if (!d) throw MathError("non-integral model pathology: den(x) = " + x.den().get_str() + " is not a square");
    if (y.den() != *d * *d * *d) {
        throw MathError("non-integral model pathology: den(y) = " + y.den().get_str() + " is not D^3");
    }
    Point p;
    p.identity_ = false;
    p.x_ = std::move(x);
    p.y_ = std::move(y);
    return p;
}

Point Point::parse(std::string_view csv) {
    const auto parts = split_commas(csv);
    if (parts.size() != 2) throw ConfigError("point needs x,y, got '" + std::string(csv) + "'");
    try {
        return affine(Rational::parse(parts[0]), Rational::parse(parts[1]));
    } catch (const MathError& e) {
        throw ConfigError(std::string(e.what()) + " in point '" + std::string(csv) + "'");
    }
}

std::string Point::str() const { return identity_ ? "O" : x_.str() + "," + y_.str(); }

bool on_curve(const Curve& c, const Point& p) {
    if (p.is_identity()) return true;
    const Rational& x = p.x();
    const Rational& y = p.y();
    const Rational lhs = y * y + Rational(c.a1()) * x * y + Rational(c.a3()) * y;
    const Rational rhs = x * x * x + Rational(c.a2()) * x * x + Rational(c.a4()) * x + Rational(c.a6());
    return lhs == rhs;
}

Point neg(const Curve& c, const Point& p) {
    if (p.is_identity()) return p;
    return Point::affine(p.x(), -p.y() - Rational(c.a1()) * p.x() - Rational(c.a3()));
}

Point add(const Curve& c, const Point& p, const Point& q) {
    if (p.is_identity()) return q;
    if (q.is_identity()) return p;
    const Rational a1(c.a1()), a2(c.a2()), a3(c.a3()), a4(c.a4()), a6(c.a6());
    const Rational& x1 = p.x();
    const Rational& y1 = p.y();
    const Rational& x2 = q.x();
    const Rational& y2 = q.y();

    if (x1 == x2 && (y1 + y2 + a1 * x2 + a3).is_zero()) return Point::identity();

    Rational slope, intercept;
    if (x1 != x2) {
        const Rational dx = x2 - x1;
        slope = (y2 - y1) / dx;
        intercept = (y1 * x2 - y2 * x1) / dx;
    } else {
        const Rational denom = Rational(2) * y1 + a1 * x1 + a3;
        slope = (Rational(3) * x1 * x1 + Rational(2) * a2 * x1 + a4 - a1 * y1) / denom;
        intercept = (-x1 * x1 * x1 + a4 * x1 + Rational(2) * a6 - a3 * y1) / denom;
    }
    const Rational x3 = slope * slope + a1 * slope - a2 - x1 - x2;
    const Rational y3 = -(slope + a1) * x3 - intercept - a3;
    return Point::affine(x3, y3);
}

Point scalar_mul(const Curve& c, long n, const Point& p) {
    if (n < 0) return neg(c, scalar_mul(c, -n, p));
    Point result;
    Point base = p;
    for (unsigned long k = static_cast<unsigned long>(n); k > 0; k >>= 1) {
        if (k & 1) result = add(c, result, base);
        if (k > 1) base = add(c, base, base);
    }
    return result;
}

Integer denominator_D(const Point& p) {
    if (p.is_identity()) throw MathError("D_P is undefined at the identity");
    const auto d = exact_sqrt(p.x().den());
    if (!d) throw MathError("non-integral model pathology");
    return *d;
}

std::vector<Point> multiples(const Curve& c, const Point& p, std::size_t count) {
    if (p.is_identity()) throw MathError("base point is the identity");
    if (!on_curve(c, p)) throw MathError("base point " + p.str() + " is not on the curve");
    std::vector<Point> out;
    out.reserve(count);
    Point q;
    for (std::size_t n = 1; n <= count; ++n) {
        q = add(c, q, p);
        if (q.is_identity()) throw MathError("point has finite order " + std::to_string(n));
        out.push_back(q);
    }
    return out;
}

EDS eds(const Curve& c, const Point& p, std::size_t count) {
    EDS seq{c, p, {}};
    for (const auto& q : multiples(c, p, count)) seq.terms.push_back(denominator_D(q));
    return seq;
}

LogReal naive_height(const Point& p) {
    if (p.is_identity()) return LogReal::of_integer(1);
    return weil_height(p.x());
}

CanonicalHeight canonical_height(const Curve& c, const Point& p, double tol) {
    if (!(tol > 0.0)) throw MathError("canonical height tolerance must be positive");
    if (p.is_identity()) throw MathError("canonical height needs an affine point");
    if (!on_curve(c, p)) throw MathError("point " + p.str() + " is not on the curve");

    CanonicalHeight out;
    Point r = p;
    double scale = 2.0;  // 2 * 4^k
    double naive = naive_height(r).value;
    double previous = naive / scale;
    out.value = previous;
    // naive(2R) - 4 naive(R) is bounded on the curve; the largest value seen
    // (at least 1) bounds what the remaining steps can add: B / (6 * 4^k).
    double step_bound = 1.0;
    for (unsigned k = 1; k <= kMaxDoublings; ++k) {
        r = add(c, r, r);
        out.iterations = k;
        if (r.is_identity()) {
            // Torsion: every further multiple has bounded height.
            out.value = 0.0;
            out.converged = true;
            break;
        }
        const double next = naive_height(r).value;
        step_bound = std::max(step_bound, std::fabs(next - 4.0 * naive));
        naive = next;
        scale *= 4.0;
        const double estimate = naive / scale;
        out.value = estimate;
        const double tail = step_bound / (3.0 * scale);
        if (k >= kMinDoublings && std::fabs(estimate - previous) < tol && tail < tol) {
            out.converged = true;
            break;
        }
        previous = estimate;
    }
    out.possibly_torsion = out.value < tol;
    return out;
}

Integer gcd_D(const Point& p, const Point& q) {
    if (p.is_identity() || q.is_identity()) throw MathError("gcd_D needs affine points");
    Integer g;
    const Integer dp = denominator_D(p);
    const Integer dq = denominator_D(q);
    mpz_gcd(g.get_mpz_t(), dp.get_mpz_t(), dq.get_mpz_t());
    return g;
}

LogReal hgcd_e2(const Point& p, const Point& q) { return LogReal::of_integer(gcd_D(p, q)); }

E2LocalSum hgcd_e2_local(const Point& p, const Point& q, const FactorBudget& budget) {
    if (p.is_identity() || q.is_identity()) throw MathError("local gcd sum needs affine points");
    // v+(1/x) at a prime p is positive exactly for p | den(x); for x = 0 the
    // inverse is the point at infinity where v+ vanishes.
    auto inv_vplus = [](const Rational& x, const Integer& prime) -> long {
        if (x.is_zero()) return 0;
        return std::max<long>(-ord_p(x, prime), 0);
    };

    const Factorization fd = factor(denominator_D(p), budget);
    if (!fd.complete) throw MathError("cannot factor D_P within budget");

    E2LocalSum out;
    Integer witness = 1;
    double finite = 0.0;
    for (const auto& [prime, e] : fd.factors) {
        (void)e;
        const long m = std::min(inv_vplus(p.x(), prime), inv_vplus(q.x(), prime));
        // m is even: both x-denominators are squares.
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), prime.get_mpz_t(), static_cast<unsigned long>(m / 2));
        witness *= pe;
        finite += 0.5 * static_cast<double>(m) * log_abs(prime);
    }
    out.finite = LogReal{finite, witness};

    auto arch_inv_vplus = [](const Rational& x) {
        if (x.is_zero()) return 0.0;
        return std::max(log_abs(x), 0.0);
    };
    out.archimedean = 0.5 * std::min(arch_inv_vplus(p.x()), arch_inv_vplus(q.x()));
    return out;
}

double siegel_ratio(const Point& multiple) {
    const double h = naive_height(multiple).value;
    const Integer d = denominator_D(multiple);
    if (h == 0.0) return 0.0;
    return 2.0 * log_abs(d) / h;
}

double siegel_ratio(const Curve& c, const Point& p, unsigned long n) {
    if (n == 0) throw MathError("siegel ratio index must be >= 1");
    const Point q = scalar_mul(c, static_cast<long>(n), p);
    if (q.is_identity()) throw MathError("point has finite order dividing " + std::to_string(n));
    return siegel_ratio(q);
}

std::vector<std::pair<long, long>> exceptional_subgroups(double eps) {
    if (!(eps > 0.0)) throw MathError("eps must be positive");
    const double bound = 1.0 / (2.0 * eps);
    const long limit = static_cast<long>(std::floor(std::sqrt(bound) + 1e-9));
    std::vector<std::pair<long, long>> out;
    for (long m = 0; m <= limit; ++m) {
        for (long n = 0; n <= limit; ++n) {
            if (m == 0 && n == 0) continue;
            if (std::gcd(m, n) != 1) continue;
            if (static_cast<double>(m * m + n * n) <= bound * (1.0 + 1e-12)) out.emplace_back(m, n);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& u, const auto& v) {
        const long nu = u.first * u.first + u.second * u.second;
        const long nv = v.first * v.first + v.second * v.second;
        return nu != nv ? nu < nv : u.first < v.first;
    });
    return out;
}

}  // namespace gcdh
