#include "gcdh/experiments.hpp"

#include "gcdh/elliptic.hpp"
#include "gcdh/error.hpp"
#include "gcdh/gcd_height.hpp"
#include "gcdh/mulgrp.hpp"
#include "gcdh/parallel.hpp"
#include "gcdh/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

namespace gcdh {
namespace {

using json = nlohmann::json;

constexpr double kSlack = 1e-9;

struct KindInfo {
    SweepKind kind;
    const char* name;
    std::vector<std::string> index_cols;
    bool has_verdict;
    std::vector<std::string> witness_cols;
    std::vector<std::string> extra_cols;
};

const std::vector<KindInfo>& kinds() {
    static const std::vector<KindInfo> table = {
        {SweepKind::BCZ, "BCZ", {"n"}, false, {"gcd"}, {}},
        {SweepKind::CZ_TRICHOTOMY, "CZ_TRICHOTOMY", {"alpha", "beta"}, true, {"m", "n", "gcd"}, {}},
        {SweepKind::AR_RETURNS, "AR_RETURNS", {"n"}, false, {"gcd", "base"}, {}},
        {SweepKind::EDS_GCD, "EDS_GCD", {"m", "n"}, false, {"gcd"}, {}},
        {SweepKind::PN_CHECK, "PN_CHECK", {"x"}, false, {"gcd", "count"}, {}},
        {SweepKind::MIXED_CHECK, "MIXED_CHECK", {"n", "b"}, false, {"gcd"}, {}},
        {SweepKind::SIEGEL, "SIEGEL", {"n"}, false, {"D"}, {"ratio"}},
        {SweepKind::ABELIAN_GROWTH, "ABELIAN_GROWTH", {"n"}, false, {"gcd"}, {}},
    };
    return table;
}

const KindInfo& info(SweepKind kind) {
    for (const auto& k : kinds()) {
        if (k.kind == kind) return k;
    }
    throw ConfigError("unknown sweep kind");
}

// Typed access to the params object; remembers which keys were read so
// leftovers can be reported as unknown.
class Params {
public:
    Params(const json& j, SweepKind kind) : j_(j), kind_(to_string(kind)) {
        if (!j_.is_object()) throw ConfigError(kind_ + ": params must be a JSON object");
    }

    bool has(const std::string& key) {
        used_.insert(key);
        return j_.contains(key) && !j_.at(key).is_null();
    }

    Integer integer(const std::string& key) {
        const json& v = need(key);
        if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<unsigned long>()) : Integer(v.get<long>());
        if (v.is_string()) {
            try {
                return parse_integer(v.get<std::string>());
            } catch (const ConfigError&) {
            }
        }
        throw bad(key, "an integer");
    }

    unsigned long count(const std::string& key) {
        const Integer v = integer(key);
        if (v < 0 || !v.fits_ulong_p()) throw bad(key, "a non-negative integer");
        return v.get_ui();
    }
    unsigned long count_or(const std::string& key, unsigned long def) { return has(key) ? count(key) : def; }

    double real(const std::string& key) {
        const json& v = need(key);
        if (!v.is_number()) throw bad(key, "a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw bad(key, "a finite number");
        return d;
    }
    double real_or(const std::string& key, double def) { return has(key) ? real(key) : def; }

    std::string text(const std::string& key) {
        const json& v = need(key);
        if (!v.is_string()) throw bad(key, "a string");
        return v.get<std::string>();
    }

    bool boolean(const std::string& key) {
        const json& v = need(key);
        if (!v.is_boolean()) throw bad(key, "true or false");
        return v.get<bool>();
    }

    PrimeSet primes(const std::string& key) {
        const json& v = need(key);
        try {
            if (v.is_string()) return PrimeSet::parse(v.get<std::string>());
            if (v.is_array()) {
                std::vector<Integer> ps;
                for (const auto& e : v) {
                    if (e.is_number_integer()) {
                        ps.emplace_back(e.get<long>());
                    } else if (e.is_string()) {
                        ps.push_back(parse_integer(e.get<std::string>()));
                    } else {
                        throw bad(key, "a list of primes");
                    }
                }
                return PrimeSet(std::move(ps));
            }
        } catch (const MathError& e) {
            throw ConfigError(kind_ + ": key '" + key + "': " + e.what());
        }
        throw bad(key, "a prime list like \"2,3\"");
    }
    PrimeSet primes_or_empty(const std::string& key) { return has(key) ? primes(key) : PrimeSet(); }

    Curve curve(const std::string& key) { return Curve::parse(text(key)); }
    Point point(const std::string& key) { return Point::parse(text(key)); }

    std::vector<std::string> strings(const std::string& key) {
        const json& v = need(key);
        if (v.is_string()) return {v.get<std::string>()};
        if (!v.is_array() || v.empty()) throw bad(key, "a nonempty list of strings");
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string()) throw bad(key, "a nonempty list of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    void finish() {
        for (const auto& [key, value] : j_.items()) {
            if (!used_.count(key)) throw ConfigError(kind_ + ": unknown parameter '" + key + "'");
        }
    }

private:
    const json& need(const std::string& key) {
        if (!has(key)) throw ConfigError(kind_ + ": missing required parameter '" + key + "'");
        return j_.at(key);
    }
    ConfigError bad(const std::string& key, const std::string& what) const {
        return ConfigError(kind_ + ": parameter '" + key + "' must be " + what + ", got " + j_.at(key).dump());
    }

    const json& j_;
    std::string kind_;
    std::set<std::string> used_;
};

// A validated sweep ready to evaluate: count cells, each producing a record
// or nothing (skipped).
struct Prepared {
    std::size_t count = 0;
    std::function<std::vector<Integer>(std::size_t)> index;
    std::function<std::optional<Record>(std::size_t)> eval;
    std::size_t error_budget = 0;
};

Integer gcd_int(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

void require_eps(double eps) {
    if (!(eps > 0.0)) throw MathError("eps must be positive");
}

Record from_bound(std::vector<Integer> index, const BoundRecord& b) {
    Record r;
    r.index = std::move(index);
    r.lhs = b.lhs;
    r.rhs = b.rhs;
    r.holds = b.holds;
    r.height_term = b.height_term;
    r.counting_term = b.counting_term;
    r.constant = b.constant;
    if (b.lhs_witness) r.witnesses.push_back(*b.lhs_witness);
    return r;
}

std::vector<Integer> idx1(unsigned long n) { return {Integer(n)}; }
std::vector<Integer> idx2(const Integer& m, const Integer& n) { return {m, n}; }

Prepared prepare_bcz(Params& p) {
    const Integer a = p.integer("a");
    const Integer b = p.integer("b");
    const double eps = p.real("eps");
    const unsigned long nmax = p.count("nmax");
    Prepared out;
    out.error_budget = p.count_or("error_budget", 0);
    p.finish();
    if (!(eps > 0.0 && eps < 1.0)) throw MathError("eps must lie in (0, 1)");
    if (a < 2 || b < 2) throw MathError("hypothesis violated: need integers a, b >= 2");
    if (!mult_independent(a, b)) {
        throw MathError("hypothesis violated: " + a.get_str() + " and " + b.get_str() + " are multiplicatively dependent");
    }
    out.count = nmax;
    out.index = [](std::size_t i) { return idx1(i + 1); };
    out.eval = [=](std::size_t i) -> std::optional<Record> {
        const unsigned long n = i + 1;
        Record r;
        r.index = idx1(n);
        const Integer g = gcd_pair(a, b, n);
        r.witnesses = {g};
        r.lhs = log_abs(g);
        r.height_term = eps * static_cast<double>(n) * std::numbers::ln2;
        r.rhs = r.height_term;
        r.holds = r.lhs <= r.rhs + kSlack;
        return r;
    };
    return out;
}

Prepared prepare_cz(Params& p) {
    const PrimeSet S = p.primes("primes");
    const Integer bound = p.integer("bound");
    const double eps = p.real("eps");
    Prepared out;
    out.error_budget = p.count_or("error_budget", 0);
    p.finish();
    require_eps(eps);
    if (bound < 1) throw MathError("S-unit bound must be >= 1");
    auto units = std::make_shared<const std::vector<Integer>>(s_unit_enumerate(S, bound));
    const std::size_t k = units->size();
    out.count = k * k;
    out.index = [units, k](std::size_t i) { return idx2((*units)[i / k], (*units)[i % k]); };
    out.eval = [units, k, S, eps](std::size_t i) -> std::optional<Record> {
        const Integer& x = (*units)[i / k];
        const Integer& y = (*units)[i % k];
        const CzVerdict v = cz_classify(x, y, S, eps);
        Record r;
        r.index = idx2(x, y);
        r.verdict = to_string(v.kind);
        r.witnesses = {Integer(v.m), Integer(v.n), v.gcd};
        r.lhs = v.lhs;
        r.rhs = v.rhs;
        r.height_term = v.rhs;
        r.holds = r.lhs <= r.rhs + kSlack;
        return r;
    };
    return out;
}

Prepared prepare_ar(Params& p) {
    const Integer a = p.integer("a");
    const Integer b = p.integer("b");
    const unsigned long nmax = p.count("nmax");
    Prepared out;
    out.error_budget = p.count_or("error_budget", 0);
    p.finish();
    if (a < 2 || b < 2) throw MathError("hypothesis violated: need integers a, b >= 2");
    if (!mult_independent(a, b)) {
        throw MathError("hypothesis violated: " + a.get_str() + " and " + b.get_str() + " are multiplicatively dependent");
    }
    const Integer base = gcd_int(a - 1, b - 1);
    out.count = nmax;
    out.index = [](std::size_t i) { return idx1(i + 1); };
    out.eval = [=](std::size_t i) -> std::optional<Record> {
        const unsigned long n = i + 1;
        Record r;
        r.index = idx1(n);
        const Integer g = gcd_pair(a, b, n);
        r.witnesses = {g, base};
        r.lhs = log_abs(g);
        r.rhs = log_abs(base);
        r.height_term = r.rhs;
        r.holds = g == base;
        return r;
    };
    return out;
}

using PointList = std::shared_ptr<const std::vector<Point>>;

PointList multiples_of(const Curve& c, const Point& p, unsigned long count) {
    return std::make_shared<const std::vector<Point>>(multiples(c, p, count));
}

Prepared prepare_eds_gcd(Params& p) {
    const Curve c = p.curve("curve");
    const Point P = p.point("point");
    const Point Q = p.has("point2") ? p.point("point2") : P;
    const double eps = p.real("eps");
    const unsigned long nmax = p.count("nmax");
    const unsigned long mmax = p.count_or("mmax", nmax);
    const double C = p.real_or("C", 0.0);
    Prepared out;
    out.error_budget = p.count_or("error_budget", 0);
    p.finish();
    require_eps(eps);
    if (!on_curve(c, P) || !on_curve(c, Q)) throw MathError("base point not on the curve");
    const PointList ps = multiples_of(c, P, mmax);
    const PointList qs = P == Q && nmax <= mmax ? ps : multiples_of(c, Q, nmax);
    out.count = static_cast<std::size_t>(mmax) * nmax;
    out.index = [nmax](std::size_t i) { return idx2(Integer(i / nmax + 1), Integer(i % nmax + 1)); };
    out.eval = [=](std::size_t i) -> std::optional<Record> {
        const std::size_t m = i / nmax + 1;
        const std::size_t n = i % nmax + 1;
        return from_bound(idx2(Integer(m), Integer(n)), check_e2(c, (*ps)[m - 1], (*qs)[n - 1], eps, C));
    };
    return out;
}

Prepared prepare_pn(Params& p, std::uint64_t seed) {
    std::vector<Polynomial> polys;
    for (const auto& s : p.strings("polys")) polys.push_back(Polynomial::parse(s));
    const Integer r_raw = p.integer("r");
    const double eps = p.real("eps");
    const Integer bound_raw = p.integer("bound");
    const PrimeSet S = p.primes_or_empty("primes");
    const double delta = p.real_or("delta", 1.0);
    const double C = p.real_or("C", 0.0);
    const bool has_dim = p.has("dim");
    const unsigned long dim_raw = has_dim ? p.count("dim") : 0;
    const bool has_x0 = p.has("x0");
    const Integer x0 = has_x0 ? p.integer("x0") : Integer(0);
    const bool has_samples = p.has("samples");
    const unsigned long samples = has_samples ? p.count("samples") : 0;
    Prepared out;
    out.error_budget = p.count_or("error_budget", 0);
    p.finish();

    if (!r_raw.fits_sint_p()) throw MathError("codimension r out of range");
    const int r = static_cast<int>(r_raw.get_si());
    const PolySystem sys(std::move(polys), r);
    const VojtaParams vp{eps, delta, C, r};
    vp.validate();
    if (bound_raw < 1 || bound_raw > 1'000'000) throw MathError("PN_CHECK bound must lie in [1, 10^6]");
    const long bound = bound_raw.get_si();
    const std::size_t vars = std::max<std::size_t>(sys.variables(), 2);
    const std::size_t dim = has_dim ? dim_raw : vars - 1;
    if (dim < 1) throw MathError("PN_CHECK needs dimension >= 1");
    if (dim + 1 < sys.variables()) throw MathError("dim is smaller than the number of variables in the system");
    if (has_x0 && (x0 < 1 || x0 > bound)) throw MathError("x0 must lie in [1, bound]");

    // Sorted, deduplicated primitive points with nonzero coordinates and
    // positive x_0.
    std::set<std::vector<Integer>> points;
    auto add_primitive = [&](const std::vector<long>& v) {
        long g = 0;
        for (long c : v) g = std::gcd(g, c);
        if (g != 1) return;
        points.insert(std::vector<Integer>(v.begin(), v.end()));
    };
    if (has_samples) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> coord(1, 2 * bound);
        std::uniform_int_distribution<long> first(1, bound);
        for (unsigned long s = 0; s < samples; ++s) {
            std::vector<long> v(dim + 1);
            v[0] = has_x0 ? x0.get_si() : first(rng);
            for (std::size_t i = 1; i <= dim; ++i) {
                const long t = coord(rng);
                v[i] = t <= bound ? -t : t - bound;
            }
            add_primitive(v);
        }
    } else {
        // Product of the coordinate ranges must stay modest.
        double cells = has_x0 ? 1.0 : static_cast<double>(bound);
        for (std::size_t i = 1; i <= dim; ++i) cells *= 2.0 * static_cast<double>(bound);
        if (cells > 5e7) throw MathError("PN_CHECK grid too large; lower bound or use samples");
        std::vector<long> v(dim + 1);
        std::function<void(std::size_t)> fill = [&](std::size_t i) {
            if (i > dim) {
                add_primitive(v);
                return;
            }
            for (long t = -bound; t <= bound; ++t) {
                if (t == 0) continue;
                v[i] = t;
                fill(i + 1);
            }
        };
        const long lo = has_x0 ? x0.get_si() : 1;
        const long hi = has_x0 ? x0.get_si() : bound;
        for (long t = lo; t <= hi; ++t) {
            v[0] = t;
            fill(1);
        }
    }
    auto list = std::make_shared<const std::vector<std::vector<Integer>>>(points.begin(), points.end());
    out.count = list->size();
    out.index = [list](std::size_t i) { return (*list)[i]; };
    out.eval = [list, sys, S, vp](std::size_t i) -> std::optional<Record> {
        const auto& coords = (*list)[i];
        bool on_v = true;
        for (const auto& f : sys.polys()) on_v = on_v && f.eval(coords) == 0;
        if (on_v) return std::nullopt;
        const PnPoint x = normalize_pn(coords);
        const BoundRecord b = check_pn(x, sys, S, vp);
        Record r = from_bound(coords, b);
        r.witnesses.push_back(*counting_function_pn(x, S).exact_arg);
        return r;
    };
    return out;
}

Prepared prepare_mixed(Params& p) {
    const Curve c = p.curve("curve");
    const Point Q = p.point("point");
    const PrimeSet S = p.primes("primes");
    const double eps = p.real("eps");
    const unsigned long nmax = p.count("nmax");
    const Integer bound = p.integer("bound");
    const double C = p.real_or("C", 1.0);
    Prepared out;
    out.error_budget = p.count_or("error_budget", 0);
    p.finish();
    require_eps(eps);
    if (!(C > 0.0)) throw MathError("MIXED_CHECK needs C > 0");
    if (bound < 1) throw MathError("S-unit bound must be >= 1");
    if (!on_curve(c, Q)) throw MathError("base point not on the curve");
    const PointList qs = multiples_of(c, Q, nmax);
    auto bs = std::make_shared<const std::vector<Integer>>(s_unit_enumerate(S, bound));
    const std::size_t k = bs->size();
    out.count = k == 0 ? 0 : static_cast<std::size_t>(nmax) * k;
    out.index = [bs, k](std::size_t i) { return idx2(Integer(i / k + 1), (*bs)[i % k]); };
    out.eval = [=](std::size_t i) -> std::optional<Record> {
        const std::size_t n = i / k + 1;
        const Integer& b = (*bs)[i % k];
        return from_bound(idx2(Integer(n), b), check_mixed(c, (*qs)[n - 1], b, S, eps, C));
    };
    return out;
}

Prepared prepare_siegel(Params& p) {
    const Curve c = p.curve("curve");
    const Point P = p.point("point");
    const unsigned long nmax = p.count("nmax");
    const unsigned long nmin = p.count_or("nmin", 1);
    Prepared out;
    out.error_budget = p.count_or("error_budget", 0);
    p.finish();
    if (nmin < 1) throw MathError("nmin must be >= 1");
    if (!on_curve(c, P)) throw MathError("base point not on the curve");
    const PointList ps = multiples_of(c, P, nmax);
    out.count = nmax >= nmin ? nmax - nmin + 1 : 0;
    out.index = [nmin](std::size_t i) { return idx1(nmin + i); };
    out.eval = [=](std::size_t i) -> std::optional<Record> {
        const unsigned long n = nmin + i;
        const Point& q = (*ps)[n - 1];
        Record r;
        r.index = idx1(n);
        const Integer d = denominator_D(q);
        r.witnesses = {d};
        r.lhs = 2.0 * log_abs(d);
        r.rhs = naive_height(q).value;
        r.height_term = r.rhs;
        r.extras = {siegel_ratio(q)};
        r.holds = r.lhs <= r.rhs + kSlack;
        return r;
    };
    return out;
}

Prepared prepare_abelian(Params& p) {
    const Curve c = p.curve("curve");
    const Point P = p.point("point");
    const Point Q = p.point("point2");
    const bool independent = p.boolean("independent");
    const double eps = p.real("eps");
    const unsigned long nmax = p.count("nmax");
    const double C = p.real_or("C", 0.0);
    Prepared out;
    out.error_budget = p.count_or("error_budget", 0);
    p.finish();
    require_eps(eps);
    if (!independent) throw MathError("ABELIAN_GROWTH needs the caller to assert that point and point2 are independent");
    if (P == Q) throw MathError("point and point2 coincide, so they are not independent");
    if (!on_curve(c, P) || !on_curve(c, Q)) throw MathError("base point not on the curve");
    const PointList ps = multiples_of(c, P, nmax);
    const PointList qs = multiples_of(c, Q, nmax);
    out.count = nmax;
    out.index = [](std::size_t i) { return idx1(i + 1); };
    out.eval = [=](std::size_t i) -> std::optional<Record> {
        const unsigned long n = i + 1;
        Record r;
        r.index = idx1(n);
        const Integer g = gcd_D((*ps)[i], (*qs)[i]);
        r.witnesses = {g};
        r.lhs = log_abs(g);
        const double nn = static_cast<double>(n);
        r.height_term = eps * nn * nn;
        r.constant = C;
        r.rhs = r.height_term + C;
        r.holds = r.lhs <= r.rhs + kSlack;
        return r;
    };
    return out;
}

Prepared prepare(const SweepConfig& config) {
    Params p(config.params, config.kind);
    switch (config.kind) {
        case SweepKind::BCZ: return prepare_bcz(p);
        case SweepKind::CZ_TRICHOTOMY: return prepare_cz(p);
        case SweepKind::AR_RETURNS: return prepare_ar(p);
        case SweepKind::EDS_GCD: return prepare_eds_gcd(p);
        case SweepKind::PN_CHECK: return prepare_pn(p, config.seed);
        case SweepKind::MIXED_CHECK: return prepare_mixed(p);
        case SweepKind::SIEGEL: return prepare_siegel(p);
        case SweepKind::ABELIAN_GROWTH: return prepare_abelian(p);
    }
    throw ConfigError("unknown sweep kind");
}

json integer_json(const Integer& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

std::string csv_field(std::string s) {
    for (char& ch : s) {
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
    }
    return s;
}

std::string join_index(const std::vector<Integer>& xs, const char* sep) {
    std::string out;
    for (const auto& x : xs) {
        if (!out.empty()) out += sep;
        out += x.get_str();
    }
    return out;
}

// Per-record exceptional flags.
std::vector<char> exceptional_mask(const SweepResult& result) {
    std::vector<char> mask(result.records.size(), 0);
    if (result.config.kind == SweepKind::CZ_TRICHOTOMY) {
        for (std::size_t i = 0; i < mask.size(); ++i) {
            mask[i] = result.records[i].verdict == to_string(CzVerdict::Kind::PowerRelation);
        }
    } else if (result.config.kind == SweepKind::EDS_GCD) {
        const json& params = result.config.params;
        const Point P = Point::parse(params.at("point").get<std::string>());
        const Point Q = params.contains("point2") && !params.at("point2").is_null()
                            ? Point::parse(params.at("point2").get<std::string>())
                            : P;
        if (!(P == Q)) return mask;
        const auto subgroups = exceptional_subgroups(params.at("eps").get<double>());
        for (std::size_t i = 0; i < mask.size(); ++i) {
            const Record& r = result.records[i];
            if (r.index.size() != 2) continue;
            const long m = r.index[0].get_si();
            const long n = r.index[1].get_si();
            const long g = std::gcd(m, n);
            const std::pair<long, long> dir{m / g, n / g};
            mask[i] = std::find(subgroups.begin(), subgroups.end(), dir) != subgroups.end();
        }
    }
    return mask;
}

}  // namespace

const char* to_string(SweepKind kind) { return info(kind).name; }

SweepKind parse_kind(std::string_view name) {
    for (const auto& k : kinds()) {
        if (name == k.name) return k.kind;
    }
    throw ConfigError("unknown sweep kind '" + std::string(name) + "'");
}

SweepConfig SweepConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (j.contains("config")) return from_json(j.at("config"));
    for (const auto& [key, value] : j.items()) {
        if (key != "kind" && key != "params" && key != "seed") throw ConfigError("unknown config key '" + key + "'");
    }
    if (!j.contains("kind") || !j.at("kind").is_string()) throw ConfigError("config needs a string 'kind'");
    SweepConfig c;
    c.kind = parse_kind(j.at("kind").get<std::string>());
    if (j.contains("params")) {
        if (!j.at("params").is_object()) throw ConfigError("config 'params' must be an object");
        c.params = j.at("params");
    }
    if (j.contains("seed")) {
        const json& seed = j.at("seed");
        if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<long long>() < 0)) {
            throw ConfigError("config 'seed' must be a non-negative integer");
        }
        c.seed = seed.get<std::uint64_t>();
    }
    return c;
}

json SweepConfig::to_json() const { return json{{"kind", to_string(kind)}, {"params", params}, {"seed", seed}}; }

void validate(const SweepConfig& config) { (void)prepare(config); }

bool SweepResult::within_error_budget() const { return summary.errors <= error_budget; }

SweepResult run(const SweepConfig& config, unsigned jobs) {
    const Prepared prep = prepare(config);
    std::vector<std::optional<Record>> slots(prep.count);
    parallel_for(prep.count, jobs, [&](std::size_t i) {
        try {
            slots[i] = prep.eval(i);
        } catch (const std::exception& e) {
            Record r;
            r.index = prep.index(i);
            r.error = e.what();
            slots[i] = std::move(r);
        }
    });

    SweepResult result;
    result.config = config;
    result.error_budget = prep.error_budget;
    result.records.reserve(slots.size());
    std::size_t skipped = 0;
    for (auto& s : slots) {
        if (s) {
            result.records.push_back(std::move(*s));
        } else {
            ++skipped;
        }
    }
    result.summary.skipped = skipped;
    result.summary = summarize(result);
    return result;
}

SweepSummary summarize(const SweepResult& result) {
    SweepSummary s;
    s.skipped = result.summary.skipped;
    s.records = result.records.size();
    std::size_t returns = 0;
    for (const auto& r : result.records) {
        if (!r.error.empty()) {
            ++s.errors;
            continue;
        }
        if (!r.verdict.empty()) ++s.verdicts[r.verdict];
        if (!r.holds) {
            ++s.violations;
            s.max_violator = r.index;
        } else {
            ++returns;
        }
    }
    if (result.config.kind == SweepKind::AR_RETURNS) {
        s.return_density = s.records == 0 ? 0.0 : static_cast<double>(returns) / static_cast<double>(s.records);
    } else {
        try {
            s.fitted_constant = fit_constant(result);
        } catch (const MathError&) {
        }
    }
    return s;
}

bool is_exceptional(const SweepResult& result, const Record& rec) {
    const auto mask = exceptional_mask(result);
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        if (&result.records[i] == &rec) return mask[i] != 0;
    }
    return false;
}

std::vector<std::size_t> exceptional_records(const SweepResult& result) {
    const auto mask = exceptional_mask(result);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) out.push_back(i);
    }
    return out;
}

double fit_constant(const SweepResult& result) {
    if (result.config.kind == SweepKind::AR_RETURNS) throw MathError("AR_RETURNS has no constant to fit");
    if (result.records.empty()) throw MathError("no records to fit");
    const auto mask = exceptional_mask(result);
    std::optional<double> best;
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const Record& r = result.records[i];
        if (!r.error.empty() || mask[i]) continue;
        const double need = r.lhs - r.rhs_without_constant();
        if (!best || need > *best) best = need;
    }
    if (!best) throw MathError("every record is exceptional or an error; nothing to fit");
    return *best;
}

std::vector<ExceptionalGroup> detect_exceptional(const SweepResult& result) {
    std::vector<ExceptionalGroup> groups;
    if (result.config.kind == SweepKind::PN_CHECK) {
        for (std::size_t i = 0; i < result.records.size(); ++i) {
            const Record& r = result.records[i];
            if (r.error.empty() && !r.holds) groups.push_back(ExceptionalGroup{r.index, {i}, false});
        }
        return groups;
    }
    if (result.config.kind != SweepKind::EDS_GCD) {
        throw MathError(std::string("detect_exceptional needs EDS_GCD or PN_CHECK records, got ") +
                        to_string(result.config.kind));
    }
    const auto mask = exceptional_mask(result);
    std::map<std::pair<long, long>, ExceptionalGroup> by_dir;
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const Record& r = result.records[i];
        if (!r.error.empty() || r.holds) continue;
        const long m = r.index[0].get_si();
        const long n = r.index[1].get_si();
        const long g = std::gcd(m, n);
        auto& grp = by_dir[{m / g, n / g}];
        grp.key = {Integer(m / g), Integer(n / g)};
        grp.members.push_back(i);
        grp.predicted = mask[i] != 0;
    }
    for (auto& [dir, grp] : by_dir) groups.push_back(std::move(grp));
    return groups;
}

std::vector<std::string> csv_header(SweepKind kind) {
    const KindInfo& k = info(kind);
    std::vector<std::string> cols = k.index_cols;
    if (k.has_verdict) cols.emplace_back("verdict");
    cols.insert(cols.end(), k.witness_cols.begin(), k.witness_cols.end());
    cols.emplace_back("lhs");
    cols.emplace_back("rhs");
    cols.insert(cols.end(), k.extra_cols.begin(), k.extra_cols.end());
    cols.emplace_back("holds");
    cols.emplace_back("error");
    return cols;
}

std::string format_real(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(std::ostream& out, const SweepResult& result) {
    const KindInfo& k = info(result.config.kind);
    out << "# gcdh " << kVersion << " config=" << result.config.to_json().dump() << "\n";
    const auto header = csv_header(result.config.kind);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";

    const bool joined_index = result.config.kind == SweepKind::PN_CHECK;
    for (const auto& r : result.records) {
        std::vector<std::string> cells;
        if (joined_index) {
            cells.push_back(join_index(r.index, ":"));
        } else {
            for (const auto& x : r.index) cells.push_back(x.get_str());
        }
        const std::size_t rest = header.size() - cells.size();
        if (!r.error.empty()) {
            for (std::size_t i = 0; i + 1 < rest; ++i) cells.emplace_back();
            cells.push_back(csv_field(r.error));
        } else {
            if (k.has_verdict) cells.push_back(r.verdict);
            for (const auto& w : r.witnesses) cells.push_back(w.get_str());
            cells.push_back(format_real(r.lhs));
            cells.push_back(format_real(r.rhs));
            for (double e : r.extras) cells.push_back(format_real(e));
            cells.emplace_back(r.holds ? "true" : "false");
            cells.emplace_back();
        }
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << "\n";
    }
}

json summary_json(const SweepResult& result) {
    const SweepSummary& s = result.summary;
    json summary = {
        {"records", s.records},
        {"violations", s.violations},
        {"errors", s.errors},
        {"skipped", s.skipped},
        {"within_error_budget", result.within_error_budget()},
    };
    if (s.max_violator) {
        json idx = json::array();
        for (const auto& x : *s.max_violator) idx.push_back(integer_json(x));
        summary["max_violator"] = idx;
    } else {
        summary["max_violator"] = nullptr;
    }
    summary["fitted_constant"] = s.fitted_constant ? json(*s.fitted_constant) : json(nullptr);
    summary["return_density"] = s.return_density ? json(*s.return_density) : json(nullptr);
    if (!s.verdicts.empty()) summary["verdicts"] = s.verdicts;
    if (result.config.kind == SweepKind::EDS_GCD || result.config.kind == SweepKind::PN_CHECK) {
        json groups = json::array();
        for (const auto& g : detect_exceptional(result)) {
            json key = json::array();
            for (const auto& x : g.key) key.push_back(integer_json(x));
            groups.push_back({{"key", key}, {"count", g.members.size()}, {"predicted", g.predicted}});
        }
        summary["exceptional"] = groups;
    }
    return json{{"config", result.config.to_json()}, {"version", kVersion}, {"summary", summary}};
}

}  // namespace gcdh
