#include "gcdh/mulgrp.hpp"

#include "gcdh/error.hpp"
#include "gcdh/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gcdh {
namespace {

constexpr double kSlack = 1e-9;

Integer pow_int(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer gcd_int(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

void require_independent(const Integer& a, const Integer& b) {
    if (a < 2 || b < 2) throw MathError("hypothesis violated: need integers a, b >= 2");
    if (!mult_independent(a, b)) {
        throw MathError("hypothesis violated: " + a.get_str() + " and " + b.get_str() +
                        " are multiplicatively dependent");
    }
}

}  // namespace

MulPoint::MulPoint(Integer a, Integer b) : a_(std::move(a)), b_(std::move(b)) {
    if (b_ <= 0) throw MathError("G_m point needs a positive denominator");
    if (gcd_int(a_, b_) != 1) throw MathError("G_m point a/b must be in lowest terms");
    if (a_ == 0) throw MathError("0 is not a point of G_m");
    if (abs(a_) == b_) throw MathError("point equals identity or has finite order");
}

MulPoint MulPoint::power(unsigned long n) const {
    if (n == 0) throw MathError("zeroth power is the identity");
    return MulPoint::from(value().pow(n));
}

Integer mul_D(const MulPoint& p) { return abs(p.a() - p.b()); }

MulDivSeq mul_seq(const MulPoint& p, std::size_t count) {
    if (count == 0) throw MathError("sequence length must be at least 1");
    MulDivSeq seq{p, {}};
    seq.terms.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) seq.terms.push_back(mul_D(p.power(n)));
    return seq;
}

Integer gcd_pair(const Integer& a, const Integer& b, unsigned long n) {
    if (n == 0) throw MathError("gcd_pair index must be >= 1");
    return gcd_int(pow_int(a, n) - 1, pow_int(b, n) - 1);
}

BczScan bcz_scan(const Integer& a, const Integer& b, double eps, unsigned long n_max, unsigned jobs) {
    if (!(eps > 0.0 && eps < 1.0)) throw MathError("eps must lie in (0, 1)");
    require_independent(a, b);

    std::vector<char> violates(n_max, 0);
    parallel_for(n_max, jobs, [&](std::size_t i) {
        const unsigned long n = i + 1;
        const double lhs = log_abs(gcd_pair(a, b, n));
        violates[i] = lhs > eps * static_cast<double>(n) * std::numbers::ln2 + kSlack;
    });

    BczScan out;
    for (unsigned long n = 1; n <= n_max; ++n) {
        if (violates[n - 1]) out.violations.push_back(n);
    }
    if (!out.violations.empty()) out.max_violator = out.violations.back();
    return out;
}

std::vector<Integer> s_unit_enumerate(const PrimeSet& S, const Integer& bound) {
    if (bound < 1) throw MathError("S-unit bound must be >= 1");
    std::vector<Integer> positive{1};
    for (const auto& p : S.primes()) {
        const std::size_t existing = positive.size();
        for (std::size_t i = 0; i < existing; ++i) {
            for (Integer v = positive[i] * p; v <= bound; v *= p) positive.push_back(v);
        }
    }
    std::vector<Integer> out;
    for (const auto& v : positive) {
        if (v < 2) continue;
        out.push_back(-v);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [](const Integer& x, const Integer& y) {
        const int c = mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t());
        return c != 0 ? c < 0 : x < y;
    });
    return out;
}

const char* to_string(CzVerdict::Kind kind) {
    switch (kind) {
        case CzVerdict::Kind::PowerRelation: return "POWER_RELATION";
        case CzVerdict::Kind::InequalityHolds: return "INEQUALITY_HOLDS";
        case CzVerdict::Kind::Exceptional: return "EXCEPTIONAL";
    }
    return "?";
}

unsigned long cz_exponent_bound(double eps) {
    if (!(eps > 0.0)) throw MathError("eps must be positive");
    return static_cast<unsigned long>(std::ceil(1.0 / eps - 1e-12));
}

CzVerdict cz_classify(const Integer& alpha, const Integer& beta, const PrimeSet& S, double eps) {
    if (abs(alpha) < 2 || abs(beta) < 2) throw MathError("S-units must satisfy |alpha|, |beta| >= 2");
    if (!is_S_unit(alpha, S) || !is_S_unit(beta, S)) {
        throw MathError("input is not an S-unit for S = {" + S.str() + "}");
    }
    const unsigned long k = cz_exponent_bound(eps);

    CzVerdict v;
    v.gcd = gcd_int(alpha - 1, beta - 1);
    v.lhs = log_abs(v.gcd);
    v.rhs = eps * std::max(log_abs(alpha), log_abs(beta));

    for (unsigned long top = 1; top <= k; ++top) {
        // Pairs with max(m, n) == top, ordered by m.
        for (unsigned long m = 1; m <= top; ++m) {
            const unsigned long n_lo = (m == top) ? 1 : top;
            for (unsigned long n = n_lo; n <= top; ++n) {
                if (pow_int(alpha, m) == pow_int(beta, n)) {
                    v.kind = CzVerdict::Kind::PowerRelation;
                    v.m = m;
                    v.n = n;
                    return v;
                }
            }
        }
    }
    v.kind = v.lhs <= v.rhs + kSlack ? CzVerdict::Kind::InequalityHolds : CzVerdict::Kind::Exceptional;
    return v;
}

ArReturns ar_returns(const Integer& a, const Integer& b, unsigned long n_max, unsigned jobs) {
    require_independent(a, b);
    const Integer base = gcd_int(a - 1, b - 1);
    std::vector<char> hit(n_max, 0);
    parallel_for(n_max, jobs, [&](std::size_t i) { hit[i] = gcd_pair(a, b, i + 1) == base; });

    ArReturns out;
    for (unsigned long n = 1; n <= n_max; ++n) {
        if (hit[n - 1]) out.returns.push_back(n);
    }
    out.density = n_max == 0 ? 0.0 : static_cast<double>(out.returns.size()) / static_cast<double>(n_max);
    return out;
}

DivisibilityReport divisibility_check(std::span<const Integer> seq, const PrimeSet& ignore) {
    if (seq.empty()) throw MathError("divisibility check needs a nonempty sequence");
    std::vector<Integer> terms(seq.begin(), seq.end());
    if (!ignore.empty()) {
        for (auto& t : terms) {
            if (t != 0) t = prime_to_S_part(t, ignore);
        }
    }
    const std::size_t len = terms.size();
    for (std::size_t m = 1; m <= len; ++m) {
        const Integer& d = terms[m - 1];
        for (std::size_t n = 2 * m; n <= len; n += m) {
            const Integer& t = terms[n - 1];
            const bool divides = d == 0 ? t == 0 : mpz_divisible_p(t.get_mpz_t(), d.get_mpz_t()) != 0;
            if (!divides) return DivisibilityReport{false, std::make_pair(m, n)};
        }
    }
    return DivisibilityReport{};
}

}  // namespace gcdh
