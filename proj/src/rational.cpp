#include "gcdh/arith.hpp"

#include "gcdh/error.hpp"

#include <cmath>
#include <numbers>

namespace gcdh {

Integer parse_integer(std::string_view token) {
    std::string s(token);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) throw ConfigError("malformed integer '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw ConfigError("malformed integer '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw MathError("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view token) {
    const auto slash = token.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(parse_integer(token));
        Integer num = parse_integer(token.substr(0, slash));
        Integer den = parse_integer(token.substr(slash + 1));
        if (den == 0) throw ConfigError("zero denominator");
        return Rational(num, den);
    } catch (const ConfigError&) {
        throw ConfigError("malformed rational '" + std::string(token) + "'");
    }
}

Rational Rational::inverse() const {
    if (is_zero()) throw MathError("inverse of zero");
    return Rational(den(), num());
}

Rational Rational::pow(unsigned long e) const {
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), e);
    return Rational(n, d);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw MathError("division by zero");
    return Rational(mpq_class(a.value_ / b.value_));
}

std::string Rational::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

double log_abs(const Integer& n) {
    if (n == 0) throw MathError("log of zero");
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 53) return std::log(std::fabs(n.get_d()));
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

double log_abs(const Rational& x) { return log_abs(x.num()) - log_abs(x.den()); }

LogReal LogReal::of_integer(const Integer& positive) {
    if (positive <= 0) throw MathError("log witness must be positive");
    return LogReal{log_abs(positive), positive};
}

}  // namespace gcdh
