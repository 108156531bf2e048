#include "gcdh/error.hpp"
#include "gcdh/gcd_height.hpp"

#include <cctype>
#include <numeric>

namespace gcdh {
namespace {

void trim(Polynomial::Exponents& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::map<Polynomial::Exponents, Integer> run() {
        std::map<Polynomial::Exponents, Integer> terms;
        skip();
        if (at_end()) fail("empty polynomial");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [exps, coef] = monomial();
            terms[exps] += sign * coef;
            skip();
        }
        std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
        return terms;
    }

private:
    std::pair<Polynomial::Exponents, Integer> monomial() {
        Polynomial::Exponents exps;
        Integer coef = 1;
        bool any = false;
        while (true) {
            skip();
            if (at_end()) break;
            const char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coef *= Integer(digits());
            } else if (c == 'X' || c == 'x') {
                ++pos_;
                if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("variable needs an index");
                const unsigned long idx = std::stoul(digits());
                unsigned long power = 1;
                skip();
                if (!at_end() && peek() == '^') {
                    ++pos_;
                    skip();
                    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent expected");
                    power = std::stoul(digits());
                }
                if (idx > 64) fail("variable index too large");
                if (exps.size() <= idx) exps.resize(idx + 1, 0);
                exps[idx] += static_cast<unsigned>(power);
            } else {
                fail(std::string("unexpected '") + c + "'");
            }
            any = true;
            skip();
            if (at_end() || peek() == '+' || peek() == '-') break;
            if (peek() == '*') {
                ++pos_;
                skip();
                if (at_end()) fail("dangling '*'");
            }
        }
        if (!any) fail("missing term");
        trim(exps);
        return {exps, coef};
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ - start > 18) fail("number too long");
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    [[noreturn]] void fail(const std::string& why) const {
        throw ConfigError("bad polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + why);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial::Polynomial(std::map<Exponents, Integer> terms) {
    for (auto& [e, c] : terms) {
        if (c == 0) continue;
        Exponents key = e;
        trim(key);
        terms_[key] += c;
    }
    std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

Polynomial Polynomial::parse(std::string_view text) { return Polynomial(Parser(text).run()); }

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = degree();
    for (const auto& [e, c] : terms_) {
        if (std::accumulate(e.begin(), e.end(), 0u) != d) return false;
    }
    return true;
}

unsigned Polynomial::degree() const {
    if (terms_.empty()) return 0;
    const auto& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0u);
}

std::size_t Polynomial::variables() const {
    std::size_t n = 0;
    for (const auto& [e, c] : terms_) n = std::max(n, e.size());
    return n;
}

Integer Polynomial::eval(const std::vector<Integer>& x) const {
    if (x.size() < variables()) {
        throw MathError("polynomial in " + std::to_string(variables()) + " variables evaluated at a point with " +
                        std::to_string(x.size()) + " coordinates");
    }
    Integer sum = 0;
    for (const auto& [e, c] : terms_) {
        Integer t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            Integer p;
            mpz_pow_ui(p.get_mpz_t(), x[i].get_mpz_t(), e[i]);
            t *= p;
        }
        sum += t;
    }
    return sum;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool constant = e.empty();
        Integer mag = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? "-" : "+";
        }
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "X" + std::to_string(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (constant || mag != 1) out += mag.get_str() + (constant ? "" : "*");
        out += mono;
    }
    return out;
}

PolySystem::PolySystem(std::vector<Polynomial> polys, int codim_r) : polys_(std::move(polys)), codim_r_(codim_r) {
    if (polys_.empty()) throw MathError("polynomial system needs at least one polynomial");
    if (codim_r_ < 2) throw MathError("codimension r must be >= 2, got " + std::to_string(codim_r_));
    for (const auto& f : polys_) {
        if (f.is_zero()) throw MathError("zero polynomial in system");
        if (!f.is_homogeneous()) throw MathError("polynomial " + f.str() + " is not homogeneous");
    }
}

std::size_t PolySystem::variables() const {
    std::size_t n = 0;
    for (const auto& f : polys_) n = std::max(n, f.variables());
    return n;
}

std::string PolySystem::str() const {
    std::string out;
    for (const auto& f : polys_) {
        if (!out.empty()) out += ";";
        out += f.str();
    }
    return out;
}

}  // namespace gcdh
