#include "gcdh/gcd_height.hpp"

#include "gcdh/error.hpp"

#include <cmath>
#include <sstream>

namespace gcdh {
namespace {

constexpr double kSlack = 1e-9;

std::string join(const std::vector<Integer>& xs) {
    std::string out;
    for (const auto& x : xs) {
        if (!out.empty()) out += ":";
        out += x.get_str();
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

BoundRecord finish(BoundRecord rec) {
    rec.rhs = rec.height_term + rec.counting_term + rec.constant;
    rec.holds = rec.lhs <= rec.rhs + kSlack;
    return rec;
}

}  // namespace

PnPoint normalize_pn(std::vector<Integer> raw) {
    if (raw.size() < 2) throw MathError("a point of P^n needs at least two coordinates");
    Integer g = 0;
    for (const auto& x : raw) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) throw MathError("the zero vector is not a point of P^n");
    int sign = 0;
    for (const auto& x : raw) {
        if (x != 0) {
            sign = x < 0 ? -1 : 1;
            break;
        }
    }
    for (auto& x : raw) {
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        if (sign < 0) x = -x;
    }
    PnPoint p;
    p.coords_ = std::move(raw);
    return p;
}

std::string PnPoint::str() const { return "[" + join(coords_) + "]"; }

LogReal hgcd_pn_coordpoint(const PnPoint& x) {
    Integer g = 0;
    for (std::size_t i = 1; i < x.coords().size(); ++i) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.coords()[i].get_mpz_t());
    }
    if (g == 0) throw MathError("point on blown-up locus: " + x.str() + " is the coordinate point");
    return LogReal::of_integer(g);
}

LogReal hgcd_pn_subvariety(const PnPoint& x, const PolySystem& sys) {
    if (sys.variables() > x.coords().size()) {
        throw MathError("system uses " + std::to_string(sys.variables()) + " variables but " + x.str() + " has " +
                        std::to_string(x.coords().size()) + " coordinates");
    }
    Integer g = 0;
    for (const auto& f : sys.polys()) {
        const Integer v = f.eval(x.coords());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    if (g == 0) throw MathError("point on V: every f_i vanishes at " + x.str());
    return LogReal::of_integer(g);
}

LogReal counting_function_pn(const PnPoint& x, const PrimeSet& S) {
    Integer prod = 1;
    for (const auto& c : x.coords()) {
        if (c == 0) throw MathError("counting function needs nonzero coordinates, got " + x.str());
        prod *= prime_to_S_part(c, S);
    }
    return LogReal::of_integer(prod);
}

void VojtaParams::validate() const {
    if (!std::isfinite(epsilon) || !std::isfinite(delta) || !std::isfinite(C)) {
        throw MathError("Vojta parameters must be finite");
    }
    if (r < 2) throw MathError("codimension r must be >= 2, got " + std::to_string(r));
    if (!(epsilon > 0.0)) throw MathError("eps must be positive");
    if (!(epsilon < r - 1)) throw MathError("eps must be < r - 1 = " + std::to_string(r - 1));
    if (!(delta > 0.0)) throw MathError("delta must be positive");
}

double vojta_rhs(double hA, double hCount, const VojtaParams& p) {
    p.validate();
    return p.epsilon * hA + hCount / (p.r - 1 + p.delta * p.epsilon) + p.C;
}

BoundRecord check_pn(const PnPoint& x, const PolySystem& sys, const PrimeSet& S, const VojtaParams& p) {
    p.validate();
    if (p.r != sys.codim_r()) {
        throw MathError("r = " + std::to_string(p.r) + " does not match the system codimension " +
                        std::to_string(sys.codim_r()));
    }
    const LogReal g = hgcd_pn_subvariety(x, sys);
    const LogReal count = counting_function_pn(x, S);
    Integer top = 0;
    for (const auto& c : x.coords()) {
        if (abs(c) > top) top = abs(c);
    }
    const double hA = log_abs(top);

    BoundRecord rec;
    rec.lhs = g.value;
    rec.lhs_witness = g.exact_arg;
    rec.height_term = p.epsilon * hA;
    rec.counting_term = count.value / (p.r - 1 + p.delta * p.epsilon);
    rec.constant = p.C;
    rec.descriptor = "pn x=" + x.str() + " V={" + sys.str() + "} r=" + std::to_string(p.r) + " S={" + S.str() +
                     "} eps=" + fmt(p.epsilon) + " delta=" + fmt(p.delta) +
                     " (assumes V smooth and disjoint from coordinate hyperplanes)";
    return finish(std::move(rec));
}

BoundRecord check_e2(const Curve& c, const Point& P, const Point& Q, double eps, double C) {
    if (P.is_identity() || Q.is_identity()) throw MathError("check_e2 needs affine points");
    if (!on_curve(c, P) || !on_curve(c, Q)) throw MathError("check_e2 point not on the curve");
    if (!(eps > 0.0) || !std::isfinite(C)) throw MathError("check_e2 needs eps > 0 and finite C");
    const LogReal g = hgcd_e2(P, Q);

    BoundRecord rec;
    rec.lhs = g.value;
    rec.lhs_witness = g.exact_arg;
    rec.height_term = eps * (naive_height(P).value + naive_height(Q).value);
    rec.constant = C;
    rec.descriptor = "e2 P=(" + P.str() + ") Q=(" + Q.str() + ") eps=" + fmt(eps);
    return finish(std::move(rec));
}

BoundRecord check_mixed(const Curve& c, const Point& Q, const Integer& b, const PrimeSet& S, double eps,
                        double C) {
    if (Q.is_identity()) throw MathError("check_mixed needs an affine point");
    if (!on_curve(c, Q)) throw MathError("check_mixed point not on the curve");
    if (abs(b) < 2) throw MathError("b must satisfy |b| >= 2");
    if (!is_S_unit(b, S)) throw MathError(b.get_str() + " is not an S-unit for S = {" + S.str() + "}");
    if (!(C > 0.0) || !std::isfinite(C)) throw MathError("check_mixed needs a finite constant C > 0");
    if (!(eps > 0.0)) throw MathError("eps must be positive");

    const Integer d = denominator_D(Q);
    Integer g;
    const Integer bm1 = b - 1;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), bm1.get_mpz_t());

    BoundRecord rec;
    rec.lhs = log_abs(g);
    rec.lhs_witness = g;
    rec.height_term = eps * std::max(log_abs(d), log_abs(b));
    rec.constant = std::log(C);
    rec.descriptor = "mixed Q=(" + Q.str() + ") b=" + b.get_str() + " S={" + S.str() + "} eps=" + fmt(eps);
    return finish(std::move(rec));
}

}  // namespace gcdh
