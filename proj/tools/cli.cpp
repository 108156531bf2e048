#include "cli.hpp"

#include "gcdh/elliptic.hpp"
#include "gcdh/error.hpp"
#include "gcdh/experiments.hpp"
#include "gcdh/gcd_height.hpp"
#include "gcdh/mulgrp.hpp"
#include "gcdh/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

namespace gcdh::cli {
namespace {

using json = nlohmann::json;

enum class FlagType { Int, Real, Text, List, Switch };

struct FlagSpec {
    std::string flag;  // without leading dashes
    std::string key;   // params key
    FlagType type;
    std::string help;
};

// Values bound to CLI11 options. std::map keeps references stable.
struct Bound {
    std::map<std::string, std::string> text;
    std::map<std::string, std::vector<std::string>> lists;
    std::map<std::string, bool> switches;
    std::map<std::string, CLI::Option*> opts;

    bool given(const std::string& flag) const {
        auto it = opts.find(flag);
        return it != opts.end() && it->second->count() > 0;
    }
};

struct Common {
    std::string out;
    std::string format = "csv";
    unsigned jobs = 1;
    std::string config;
    std::string baseline;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
};

const FlagSpec kA{"a", "a", FlagType::Int, "first integer a"};
const FlagSpec kB{"b", "b", FlagType::Int, "second integer b"};
const FlagSpec kEps{"eps", "eps", FlagType::Real, "epsilon"};
const FlagSpec kDelta{"delta", "delta", FlagType::Real, "delta in 1/(r-1+delta*eps)"};
const FlagSpec kC{"C", "C", FlagType::Real, "constant C"};
const FlagSpec kNmax{"nmax", "nmax", FlagType::Int, "largest index n"};
const FlagSpec kMmax{"mmax", "mmax", FlagType::Int, "largest index m"};
const FlagSpec kNmin{"nmin", "nmin", FlagType::Int, "smallest index n"};
const FlagSpec kBound{"bound", "bound", FlagType::Int, "size bound"};
const FlagSpec kPrimes{"primes", "primes", FlagType::Text, "prime set S, e.g. 2,3,5"};
const FlagSpec kCurve{"curve", "curve", FlagType::Text, "a1,a2,a3,a4,a6"};
const FlagSpec kPoint{"point", "point", FlagType::Text, "x,y with rationals num/den"};
const FlagSpec kPoint2{"point2", "point2", FlagType::Text, "second point x,y"};
const FlagSpec kPoly{"poly", "polys", FlagType::List, "homogeneous polynomial, e.g. X1-X0 (repeatable)"};
const FlagSpec kR{"r", "r", FlagType::Int, "codimension r of V"};
const FlagSpec kSamples{"samples", "samples", FlagType::Int, "random points instead of the full grid"};
const FlagSpec kX0{"x0", "x0", FlagType::Int, "fix the first coordinate"};
const FlagSpec kIndependent{"independent", "independent", FlagType::Switch, "assert that point and point2 are independent"};
const FlagSpec kErrorBudget{"error-budget", "error_budget", FlagType::Int, "allowed error rows"};

struct SweepCommand {
    std::string name;
    SweepKind kind;
    std::string description;
    std::vector<FlagSpec> flags;
    json defaults;
};

std::vector<SweepCommand> sweep_commands() {
    return {
        {"gcdpow", SweepKind::BCZ, "gcd(a^n - 1, b^n - 1) against 2^(eps n) for n <= nmax",
         {kA, kB, kEps, kNmax}, {{"eps", 0.5}}},
        {"trichotomy", SweepKind::CZ_TRICHOTOMY, "classify all pairs of S-units with 2 <= |x| <= bound",
         {kPrimes, kBound, kEps}, {{"eps", 0.25}}},
        {"returns", SweepKind::AR_RETURNS, "n with gcd(a^n - 1, b^n - 1) == gcd(a - 1, b - 1)", {kA, kB, kNmax}, {}},
        {"edsgcd", SweepKind::EDS_GCD, "log gcd(D_mP, D_nQ) against eps (h(mP) + h(nQ)) + C over an m x n grid",
         {kCurve, kPoint, kPoint2, kEps, kNmax, kMmax, kC}, {}},
        {"mixed", SweepKind::MIXED_CHECK, "log gcd(D_nQ, b - 1) against log C + eps log max(D_nQ, |b|)",
         {kCurve, kPoint, kPrimes, kEps, kNmax, kBound, kC}, {}},
        {"pncheck", SweepKind::PN_CHECK, "Vojta-type gcd bound on P^n for primitive points with |x_i| <= bound",
         {kPoly, kR, kEps, kDelta, kC, kBound, kPrimes, kSamples, kX0}, {{"delta", 1.0}}},
        {"siegel", SweepKind::SIEGEL, "2 log D_nP / h(nP) for nmin <= n <= nmax", {kCurve, kPoint, kNmax, kNmin}, {}},
        {"abelian", SweepKind::ABELIAN_GROWTH, "log gcd(D_nP, D_nQ) against eps n^2 + C for independent P, Q",
         {kCurve, kPoint, kPoint2, kIndependent, kEps, kNmax, kC}, {}},
    };
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
    return out;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json integer_value(const std::string& flag, const std::string& token) {
    Integer v;
    try {
        v = parse_integer(token);
    } catch (const ConfigError&) {
        throw ConfigError("--" + flag + ": malformed integer '" + token + "'");
    }
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

double real_value(const std::string& flag, const std::string& token) {
    double v = 0.0;
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc() || ptr != end || token.empty()) {
        throw ConfigError("--" + flag + ": malformed number '" + token + "'");
    }
    return v;
}

void add_flag(CLI::App* sub, Bound& b, const FlagSpec& f) {
    const std::string name = "--" + f.flag;
    switch (f.type) {
        case FlagType::List: b.opts[f.flag] = sub->add_option(name, b.lists[f.flag], f.help)->allow_extra_args(false); break;
        case FlagType::Switch: b.opts[f.flag] = sub->add_flag(name, b.switches[f.flag], f.help); break;
        case FlagType::Int: b.opts[f.flag] = sub->add_option(name, b.text[f.flag], f.help)->type_name("INT"); break;
        case FlagType::Real: b.opts[f.flag] = sub->add_option(name, b.text[f.flag], f.help)->type_name("REAL"); break;
        case FlagType::Text: b.opts[f.flag] = sub->add_option(name, b.text[f.flag], f.help); break;
    }
}

void add_common(CLI::App* sub, Common& c, bool seeded) {
    sub->add_option("--out", c.out, "write output to this path instead of stdout");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--config", c.config, "JSON config file; flags override its values");
    sub->add_option("--baseline", c.baseline, "compare output byte for byte; exit 3 on mismatch");
    if (seeded) c.seed_opt = sub->add_option("--seed", c.seed, "seed for random sampling");
}

// Writes the output, then applies --baseline.
int emit(const std::string& text, const Common& c, std::ostream& out, std::ostream& err) {
    if (c.out.empty()) {
        out << text;
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) throw ConfigError("cannot write '" + c.out + "'");
        f << text;
    }
    if (!c.baseline.empty()) {
        if (read_text(c.baseline) != text) {
            err << "baseline mismatch: output differs from " << c.baseline << "\n";
            return kBaselineMismatch;
        }
    }
    return kOk;
}

SweepConfig effective_config(const SweepCommand& cmd, const Bound& b, const Common& c) {
    SweepConfig config;
    config.kind = cmd.kind;
    config.params = cmd.defaults;
    if (!c.config.empty()) {
        json file;
        try {
            file = json::parse(read_text(c.config));
        } catch (const json::parse_error& e) {
            throw ConfigError("config '" + c.config + "' is not valid JSON: " + e.what());
        }
        const SweepConfig from_file = SweepConfig::from_json(file);
        if (from_file.kind != cmd.kind) {
            throw ConfigError("config kind " + std::string(to_string(from_file.kind)) + " does not match subcommand " +
                              cmd.name);
        }
        config.params.update(from_file.params);
        config.seed = from_file.seed;
    }
    for (const auto& f : cmd.flags) {
        if (!b.given(f.flag)) continue;
        switch (f.type) {
            case FlagType::Int: config.params[f.key] = integer_value(f.flag, b.text.at(f.flag)); break;
            case FlagType::Real: config.params[f.key] = real_value(f.flag, b.text.at(f.flag)); break;
            case FlagType::Text: config.params[f.key] = b.text.at(f.flag); break;
            case FlagType::List: config.params[f.key] = b.lists.at(f.flag); break;
            case FlagType::Switch: config.params[f.key] = b.switches.at(f.flag); break;
        }
    }
    if (b.given("error-budget")) config.params["error_budget"] = integer_value("error-budget", b.text.at("error-budget"));
    if (c.seed_opt && c.seed_opt->count() > 0) config.seed = c.seed;
    return config;
}

int run_sweep(const SweepCommand& cmd, const Bound& b, const Common& c, std::ostream& out, std::ostream& err) {
    const SweepConfig config = effective_config(cmd, b, c);
    const SweepResult result = gcdh::run(config, c.jobs);
    std::string text;
    if (c.format == "json") {
        text = summary_json(result).dump(2) + "\n";
    } else {
        std::ostringstream os;
        write_csv(os, result);
        text = os.str();
    }
    const int code = emit(text, c, out, err);
    if (!result.within_error_budget()) {
        err << "error: " << result.summary.errors << " error rows exceed the budget of " << result.error_budget << "\n";
        return kCompute;
    }
    return code;
}

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

std::string metadata(const std::string& command, const json& params) {
    return "# gcdh " + std::string(kVersion) + " config=" + json{{"command", command}, {"params", params}}.dump() + "\n";
}

// Rows of (quantity, value, witness) rendered as CSV or a JSON object.
struct Table {
    std::vector<std::array<std::string, 3>> rows;
    json object = json::object();

    void add(const std::string& name, double value, const std::optional<Integer>& witness = std::nullopt) {
        rows.push_back({name, format_real(value), witness ? witness->get_str() : ""});
        object[name] = witness ? json{{"value", value}, {"witness", witness->get_str()}} : json{{"value", value}};
    }
    void add_text(const std::string& name, const std::string& value) {
        rows.push_back({name, value, ""});
        object[name] = value;
    }
    std::string render(const std::string& command, const json& params, const std::string& format) const {
        if (format == "json") {
            return json{{"config", {{"command", command}, {"params", params}}}, {"version", kVersion}, {"result", object}}
                       .dump(2) +
                   "\n";
        }
        std::string s = metadata(command, params) + "quantity,value,witness\n";
        for (const auto& r : rows) s += quote(r[0]) + "," + quote(r[1]) + "," + r[2] + "\n";
        return s;
    }
};

std::vector<Integer> parse_coords(const std::string& text) {
    std::vector<Integer> xs;
    std::string item;
    std::istringstream in(text);
    const char sep = text.find(':') != std::string::npos ? ':' : ',';
    while (std::getline(in, item, sep)) xs.push_back(parse_integer(item));
    if (xs.empty()) throw ConfigError("--coords: empty list");
    return xs;
}

json given_params(const Bound& b, const std::vector<FlagSpec>& flags) {
    json p = json::object();
    for (const auto& f : flags) {
        if (!b.given(f.flag)) continue;
        if (f.type == FlagType::List) {
            p[f.key] = b.lists.at(f.flag);
        } else if (f.type == FlagType::Switch) {
            p[f.key] = b.switches.at(f.flag);
        } else {
            p[f.key] = b.text.at(f.flag);
        }
    }
    return p;
}

const FlagSpec kIgnore{"ignore-primes", "ignore_primes", FlagType::Text,
                       "primes stripped from every term before the divisibility check"};
const FlagSpec kTol{"tol", "tol", FlagType::Real, "canonical height tolerance"};
const FlagSpec kCoords{"coords", "coords", FlagType::Text, "projective coordinates, e.g. 1,3,5"};
const FlagSpec kBq{"b", "b", FlagType::Text, "integer or rational b"};
const FlagSpec kAq{"a", "a", FlagType::Text, "integer or rational a"};

int run_eds(const Bound& b, const Common& c, std::ostream& out, std::ostream& err) {
    const json params = given_params(b, {kCurve, kPoint, kNmax, kIgnore});
    if (!b.given("curve") || !b.given("point") || !b.given("nmax")) {
        throw ConfigError("eds needs --curve, --point and --nmax");
    }
    const Curve curve = Curve::parse(b.text.at("curve"));
    const Point p = Point::parse(b.text.at("point"));
    const json n = integer_value("nmax", b.text.at("nmax"));
    if (!n.is_number_integer() || n.get<long>() < 1) throw ConfigError("--nmax must be a positive integer");
    const PrimeSet ignore = b.given("ignore-primes") ? PrimeSet::parse(b.text.at("ignore-primes")) : PrimeSet();
    const EDS seq = eds(curve, p, n.get<std::size_t>());
    const DivisibilityReport div = divisibility_check(seq.terms, ignore);

    std::string text;
    if (c.format == "json") {
        json terms = json::array();
        for (const auto& t : seq.terms) terms.push_back(t.get_str());
        json report = {{"holds", div.holds}};
        if (div.counterexample) report["counterexample"] = {div.counterexample->first, div.counterexample->second};
        text = json{{"config", {{"command", "eds"}, {"params", params}}},
                    {"version", kVersion},
                    {"result", {{"terms", terms}, {"divisibility", report}}}}
                   .dump(2) +
               "\n";
    } else {
        text = metadata("eds", params) + "n,D\n";
        for (std::size_t i = 0; i < seq.terms.size(); ++i) text += std::to_string(i + 1) + "," + seq.terms[i].get_str() + "\n";
        text += div.holds ? std::string("# divisibility holds\n")
                          : "# divisibility fails at m=" + std::to_string(div.counterexample->first) +
                                " n=" + std::to_string(div.counterexample->second) + "\n";
    }
    return emit(text, c, out, err);
}

int run_heights(const Bound& b, const Common& c, std::ostream& out, std::ostream& err) {
    const json params = given_params(b, {kAq, kBq, kCurve, kPoint, kPoint2, kTol, kCoords, kPoly, kR, kPrimes});
    Table t;
    bool any = false;
    if (b.given("a")) {
        any = true;
        const Rational a = Rational::parse(b.text.at("a"));
        t.add("weil_height(a)", weil_height(a).value, weil_height(a).exact_arg);
        if (b.given("b")) {
            const Rational bb = Rational::parse(b.text.at("b"));
            const LogReal h = hgcd(a, bb);
            t.add("hgcd(a,b)", h.value, h.exact_arg);
        }
    }
    if (b.given("curve") || b.given("point")) {
        if (!b.given("curve") || !b.given("point")) throw ConfigError("elliptic heights need both --curve and --point");
        any = true;
        const Curve curve = Curve::parse(b.text.at("curve"));
        const Point p = Point::parse(b.text.at("point"));
        if (!on_curve(curve, p)) throw MathError("point " + p.str() + " is not on the curve");
        const double tol = b.given("tol") ? real_value("tol", b.text.at("tol")) : 1e-4;
        t.add("naive_height(P)", naive_height(p).value, naive_height(p).exact_arg);
        t.add_text("D_P", p.is_identity() ? "" : denominator_D(p).get_str());
        const CanonicalHeight ch = canonical_height(curve, p, tol);
        t.add("canonical_height(P)", ch.value);
        t.add_text("canonical_iterations", std::to_string(ch.iterations));
        t.add_text("canonical_converged", ch.converged ? "true" : "false");
        t.add_text("possibly_torsion", ch.possibly_torsion ? "true" : "false");
        if (b.given("point2")) {
            const Point q = Point::parse(b.text.at("point2"));
            if (!on_curve(curve, q)) throw MathError("point " + q.str() + " is not on the curve");
            const LogReal g = hgcd_e2(p, q);
            t.add("hgcd_e2(P,Q)", g.value, g.exact_arg);
        }
    }
    if (b.given("coords")) {
        any = true;
        const PnPoint x = normalize_pn(parse_coords(b.text.at("coords")));
        t.add_text("x", x.str());
        const bool coordinate_point = [&] {
            for (std::size_t i = 1; i < x.coords().size(); ++i)
                if (x.coords()[i] != 0) return false;
            return true;
        }();
        if (!coordinate_point) {
            const LogReal g = hgcd_pn_coordpoint(x);
            t.add("hgcd_pn_coordpoint(x)", g.value, g.exact_arg);
        }
        if (b.given("poly")) {
            std::vector<Polynomial> polys;
            for (const auto& s : b.lists.at("poly")) polys.push_back(Polynomial::parse(s));
            const int r = b.given("r") ? static_cast<int>(integer_value("r", b.text.at("r")).get<long>()) : 2;
            const LogReal g = hgcd_pn_subvariety(x, PolySystem(std::move(polys), r));
            t.add("hgcd_pn_subvariety(x)", g.value, g.exact_arg);
        }
        if (b.given("primes")) {
            const LogReal cnt = counting_function_pn(x, PrimeSet::parse(b.text.at("primes")));
            t.add("counting_function_pn(x)", cnt.value, cnt.exact_arg);
        }
    }
    if (!any) throw ConfigError("heights needs --a, --curve/--point or --coords");
    return emit(t.render("heights", params, c.format), c, out, err);
}

int run_vojta(const Bound& b, const Common& c, std::ostream& out, std::ostream& err) {
    const json params =
        given_params(b, {kCoords, kPoly, kR, kPrimes, kEps, kDelta, kC, kCurve, kPoint, kPoint2, kBq});
    if (!b.given("eps")) throw ConfigError("vojta-check needs --eps");
    const double eps = real_value("eps", b.text.at("eps"));
    const double C = b.given("C") ? real_value("C", b.text.at("C")) : 0.0;
    BoundRecord rec;
    std::string mode;
    if (b.given("coords")) {
        mode = "pn";
        if (!b.given("poly")) throw ConfigError("vojta-check on P^n needs --poly");
        std::vector<Polynomial> polys;
        for (const auto& s : b.lists.at("poly")) polys.push_back(Polynomial::parse(s));
        const int r = b.given("r") ? static_cast<int>(integer_value("r", b.text.at("r")).get<long>()) : 2;
        const double delta = b.given("delta") ? real_value("delta", b.text.at("delta")) : 1.0;
        const PrimeSet S = b.given("primes") ? PrimeSet::parse(b.text.at("primes")) : PrimeSet();
        rec = check_pn(normalize_pn(parse_coords(b.text.at("coords"))), PolySystem(std::move(polys), r), S,
                       VojtaParams{eps, delta, C, r});
    } else if (b.given("curve") && b.given("point") && b.given("b")) {
        mode = "mixed";
        if (!b.given("primes")) throw ConfigError("vojta-check on E x G_m needs --primes");
        rec = check_mixed(Curve::parse(b.text.at("curve")), Point::parse(b.text.at("point")),
                          parse_integer(b.text.at("b")), PrimeSet::parse(b.text.at("primes")), eps,
                          b.given("C") ? C : 1.0);
    } else if (b.given("curve") && b.given("point")) {
        mode = "e2";
        const Point p = Point::parse(b.text.at("point"));
        const Point q = b.given("point2") ? Point::parse(b.text.at("point2")) : p;
        rec = check_e2(Curve::parse(b.text.at("curve")), p, q, eps, C);
    } else {
        throw ConfigError("vojta-check needs --coords with --poly, or --curve and --point");
    }

    std::string text;
    if (c.format == "json") {
        text = json{{"config", {{"command", "vojta-check"}, {"params", params}}},
                    {"version", kVersion},
                    {"result",
                     {{"mode", mode},
                      {"lhs", rec.lhs},
                      {"rhs", rec.rhs},
                      {"holds", rec.holds},
                      {"gcd", rec.lhs_witness ? rec.lhs_witness->get_str() : ""},
                      {"height_term", rec.height_term},
                      {"counting_term", rec.counting_term},
                      {"constant", rec.constant},
                      {"descriptor", rec.descriptor}}}}
                   .dump(2) +
               "\n";
    } else {
        text = metadata("vojta-check", params) +
               "mode,lhs,rhs,holds,gcd,height_term,counting_term,constant,descriptor\n" + mode + "," +
               format_real(rec.lhs) + "," + format_real(rec.rhs) + "," + (rec.holds ? "true" : "false") + "," +
               (rec.lhs_witness ? rec.lhs_witness->get_str() : "") + "," + format_real(rec.height_term) + "," +
               format_real(rec.counting_term) + "," + format_real(rec.constant) + "," + quote(rec.descriptor) + "\n";
    }
    return emit(text, c, out, err);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalized gcd heights: sweeps and queries over Q, E and P^n.", "gcdh"};
    app.set_version_flag("--version", std::string("gcdh ") + kVersion);
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 success, 1 usage error, 2 computation error, 3 baseline mismatch.\n"
        "Reals are printed with 12 significant digits; exact integers in decimal.");

    const auto sweeps = sweep_commands();
    std::vector<std::unique_ptr<Bound>> bounds;
    std::vector<std::unique_ptr<Common>> commons;
    std::function<int()> action;

    for (const auto& cmd : sweeps) {
        auto* sub = app.add_subcommand(cmd.name, cmd.description);
        auto& b = *bounds.emplace_back(std::make_unique<Bound>());
        auto& c = *commons.emplace_back(std::make_unique<Common>());
        for (const auto& f : cmd.flags) add_flag(sub, b, f);
        add_flag(sub, b, kErrorBudget);
        add_common(sub, c, cmd.kind == SweepKind::PN_CHECK);
        std::string defaults;
        for (const auto& [k, v] : cmd.defaults.items()) defaults += " " + k + "=" + v.dump();
        sub->footer("Sweep kind " + std::string(to_string(cmd.kind)) + "." +
                    (defaults.empty() ? "" : " Defaults:" + defaults + ".") +
                    "\nCSV columns: " + join(csv_header(cmd.kind), ",") +
                    "\nThe first line is a comment carrying the version and effective config.");
        sub->callback([&, cmd] { action = [&, cmd] { return run_sweep(cmd, b, c, out, err); }; });
    }

    {
        auto* sub = app.add_subcommand("eds", "elliptic divisibility sequence D_P, D_2P, ..., D_nmaxP");
        auto& b = *bounds.emplace_back(std::make_unique<Bound>());
        auto& c = *commons.emplace_back(std::make_unique<Common>());
        for (const auto& f : {kCurve, kPoint, kNmax, kIgnore}) add_flag(sub, b, f);
        add_common(sub, c, false);
        sub->footer("CSV columns: n,D\nA trailing comment reports the divisibility check m | n => D_m | D_n.");
        sub->callback([&] { action = [&] { return run_eds(b, c, out, err); }; });
    }
    {
        auto* sub = app.add_subcommand("heights", "Weil, gcd, naive and canonical height queries");
        auto& b = *bounds.emplace_back(std::make_unique<Bound>());
        auto& c = *commons.emplace_back(std::make_unique<Common>());
        for (const auto& f : {kAq, kBq, kCurve, kPoint, kPoint2, kTol, kCoords, kPoly, kR, kPrimes}) add_flag(sub, b, f);
        add_common(sub, c, false);
        sub->footer(
            "--a [--b]: weil_height(a), hgcd(a,b). --curve --point [--point2] [--tol]: naive and canonical\n"
            "heights, D_P, hgcd_e2. --coords [--poly ... --r] [--primes]: P^n gcd heights and counting function.\n"
            "CSV columns: quantity,value,witness");
        sub->callback([&] { action = [&] { return run_heights(b, c, out, err); }; });
    }
    {
        auto* sub = app.add_subcommand("vojta-check", "evaluate one gcd bound and report its components");
        auto& b = *bounds.emplace_back(std::make_unique<Bound>());
        auto& c = *commons.emplace_back(std::make_unique<Common>());
        for (const auto& f : {kCoords, kPoly, kR, kPrimes, kEps, kDelta, kC, kCurve, kPoint, kPoint2, kBq})
            add_flag(sub, b, f);
        add_common(sub, c, false);
        sub->footer(
            "Modes: --coords + --poly (P^n), --curve --point --b --primes (E x G_m, C defaults to 1),\n"
            "--curve --point [--point2] (E^2).\n"
            "CSV columns: mode,lhs,rhs,holds,gcd,height_term,counting_term,constant,descriptor");
        sub->callback([&] { action = [&] { return run_vojta(b, c, out, err); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        return action ? action() : kUsage;
    } catch (const ConfigError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const MathError& e) {
        err << "error: " << e.what() << "\n";
        return kCompute;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kCompute;
    }
}

}  // namespace gcdh::cli
