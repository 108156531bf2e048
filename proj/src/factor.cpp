#include "gcdh/arith.hpp"

#include "gcdh/error.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

namespace gcdh {
namespace {

using PrimeTable = std::vector<unsigned long>;

std::shared_ptr<const PrimeTable> small_primes(unsigned long bound) {
    static std::mutex mu;
    static std::shared_ptr<const PrimeTable> cached;
    static unsigned long cached_bound = 0;

    std::lock_guard lock(mu);
    if (cached && cached_bound >= bound) return cached;

    std::vector<bool> composite(bound + 1, false);
    auto table = std::make_shared<PrimeTable>();
    for (unsigned long i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        table->push_back(i);
        for (unsigned long j = i * i; j <= bound; j += i) composite[j] = true;
    }
    cached = std::move(table);
    cached_bound = bound;
    return cached;
}

Integer step(const Integer& x, const Integer& c, const Integer& n) {
    Integer r = x * x + c;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Brent's variant of Pollard rho. Returns a nontrivial divisor of the
// composite n, or nullopt once the iteration budget is spent.
std::optional<Integer> rho_split(const Integer& n, unsigned long& budget) {
    if (mpz_even_p(n.get_mpz_t())) return Integer(2);
    constexpr unsigned long kBatch = 128;

    for (unsigned long c_seed = 1; budget > 0; ++c_seed) {
        const Integer c(c_seed);
        Integer y = 2, x, ys, q = 1, g = 1;
        unsigned long r = 1;
        while (g == 1 && budget > 0) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = step(y, c, n);
            unsigned long k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                const unsigned long lim = std::min(kBatch, r - k);
                for (unsigned long i = 0; i < lim && budget > 0; ++i, --budget) {
                    y = step(y, c, n);
                    Integer diff = x - y;
                    q = q * abs(diff);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // The batch overshot; replay one step at a time.
            do {
                ys = step(ys, c, n);
                Integer diff = x - ys;
                diff = abs(diff);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    return std::nullopt;
}

}  // namespace

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Integer Factorization::value() const {
    Integer v = cofactor;
    for (const auto& [p, e] : factors) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return sign < 0 ? Integer(-v) : v;
}

Factorization factor(const Integer& n, const FactorBudget& budget) {
    if (n == 0) throw MathError("factorization of zero");
    Factorization out;
    out.sign = sgn(n) < 0 ? -1 : 1;
    Integer m = abs(n);

    const auto primes = small_primes(std::max(budget.trial_bound, 2UL));
    bool exhausted_table = true;
    for (unsigned long p : *primes) {
        if (p > budget.trial_bound) break;
        if (Integer(p) * p > m) {
            exhausted_table = false;
            break;
        }
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned long e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            out.factors[Integer(p)] = e;
        }
    }
    if (m == 1) return out;

    const Integer bound(budget.trial_bound);
    if (!exhausted_table || m <= bound * bound) {
        out.factors[m] += 1;
        return out;
    }

    unsigned long iterations = budget.rho_iterations;
    std::vector<Integer> pending{m};
    while (!pending.empty()) {
        Integer c = std::move(pending.back());
        pending.pop_back();
        if (c == 1) continue;
        if (is_prime(c)) {
            out.factors[c] += 1;
            continue;
        }
        if (auto d = rho_split(c, iterations)) {
            Integer rest = c / *d;
            pending.push_back(*d);
            pending.push_back(std::move(rest));
        } else {
            out.complete = false;
            out.cofactor *= c;
        }
    }
    return out;
}

PrimeSet::PrimeSet(std::vector<Integer> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (const auto& p : primes_) {
        if (!is_prime(p)) throw MathError("prime set element " + p.get_str() + " is not prime");
    }
}

PrimeSet PrimeSet::parse(std::string_view csv) {
    std::vector<Integer> primes;
    std::string item;
    std::istringstream in{std::string(csv)};
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        primes.push_back(parse_integer(item));
    }
    try {
        return PrimeSet(std::move(primes));
    } catch (const MathError& e) {
        throw ConfigError(e.what());
    }
}

bool PrimeSet::contains(const Integer& p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

std::string PrimeSet::str() const {
    std::string s;
    for (const auto& p : primes_) {
        if (!s.empty()) s += ',';
        s += p.get_str();
    }
    return s;
}

Integer prime_to_S_part(const Integer& x, const PrimeSet& S) {
    if (x == 0) throw MathError("prime-to-S part of zero");
    Integer m = abs(x);
    for (const auto& p : S.primes()) mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    return m;
}

Integer S_part(const Integer& x, const PrimeSet& S) {
    Integer m = abs(x);
    return m / prime_to_S_part(x, S);
}

bool is_S_unit(const Integer& x, const PrimeSet& S) { return x != 0 && prime_to_S_part(x, S) == 1; }

bool mult_independent(const Integer& a, const Integer& b, const FactorBudget& budget) {
    if (a < 2 || b < 2) throw MathError("multiplicative independence needs a, b >= 2");
    const Factorization fa = factor(a, budget);
    const Factorization fb = factor(b, budget);
    if (!fa.complete || !fb.complete) throw MathError("independence undecidable at budget");
    if (fa.factors.size() != fb.factors.size()) return true;

    // a^m = b^n with m, n > 0 iff the exponent vectors are proportional.
    const unsigned long a0 = fa.factors.begin()->second;
    const unsigned long b0 = fb.factors.begin()->second;
    for (auto ia = fa.factors.begin(), ib = fb.factors.begin(); ia != fa.factors.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return true;
        if (Integer(ia->second) * b0 != Integer(ib->second) * a0) return true;
    }
    return false;
}

}  // namespace gcdh
