#pragma once

// Declarative sweeps over the library checks. A SweepConfig names a kind and
// a JSON parameter object; run() validates every parameter before computing,
// evaluates the cells (optionally in parallel) and merges them in index
// order, so output is identical for any job count.
//
// Parameters per kind (defaults in brackets):
//   BCZ             a, b, eps, nmax
//   CZ_TRICHOTOMY   primes, bound, eps
//   AR_RETURNS      a, b, nmax
//   EDS_GCD         curve, point, eps, nmax, [point2 = point], [mmax = nmax], [C = 0]
//   PN_CHECK        polys, r, eps, bound, [primes = ""], [delta = 1], [C = 0],
//                   [dim = variables - 1], [x0], [samples]
//   MIXED_CHECK     curve, point, primes, eps, nmax, bound, [C = 1]
//   SIEGEL          curve, point, nmax, [nmin = 1]
//   ABELIAN_GROWTH  curve, point, point2, independent (must be true), eps, nmax, [C = 0]
// Every kind also accepts error_budget [0]. Integers may be given as JSON
// numbers or decimal strings; curve/point/primes use the CLI text forms.

#include "gcdh/arith.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gcdh {

enum class SweepKind { BCZ, CZ_TRICHOTOMY, AR_RETURNS, EDS_GCD, PN_CHECK, MIXED_CHECK, SIEGEL, ABELIAN_GROWTH };

const char* to_string(SweepKind kind);
// Throws ConfigError for unknown names.
SweepKind parse_kind(std::string_view name);

struct SweepConfig {
    SweepKind kind = SweepKind::BCZ;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;

    // Accepts {"kind", "params", "seed"} or an emitted summary object that
    // carries such a config under "config".
    static SweepConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// Throws ConfigError for missing, unknown or mistyped keys and MathError for
// violated hypotheses (dependent a, b, singular curve, torsion points, ...).
void validate(const SweepConfig& config);

// One sweep cell. Which fields are meaningful depends on the kind; see
// csv_header().
struct Record {
    std::vector<Integer> index;      // primary index columns
    std::string verdict;             // CZ_TRICHOTOMY only
    std::vector<Integer> witnesses;  // exact integers, decimal in output
    double lhs = 0.0;
    double rhs = 0.0;
    std::vector<double> extras;      // SIEGEL ratio
    bool holds = false;
    double height_term = 0.0;        // eps-dependent part of rhs
    double counting_term = 0.0;
    double constant = 0.0;
    std::string error;               // nonempty for a captured per-record failure

    double rhs_without_constant() const { return height_term + counting_term; }
};

struct SweepSummary {
    std::size_t records = 0;
    std::size_t violations = 0;
    std::size_t errors = 0;
    std::size_t skipped = 0;  // PN_CHECK points lying on V
    std::optional<std::vector<Integer>> max_violator;
    std::optional<double> fitted_constant;
    std::optional<double> return_density;
    std::map<std::string, std::size_t> verdicts;
};

struct SweepResult {
    SweepConfig config;
    std::vector<Record> records;
    SweepSummary summary;
    std::size_t error_budget = 0;

    bool within_error_budget() const;
};

SweepResult run(const SweepConfig& config, unsigned jobs = 1);

// Recomputes the summary from records (skipped is carried over).
SweepSummary summarize(const SweepResult& result);

// Exceptional records: CZ power relations, and EDS_GCD cells (m, n) with
// point == point2 whose reduced direction lies in exceptional_subgroups(eps).
bool is_exceptional(const SweepResult& result, const Record& rec);

// Smallest C with lhs <= rhs_without_constant + C on every non-exceptional,
// non-error record. Throws MathError when no such record exists or for
// AR_RETURNS, which has no constant.
double fit_constant(const SweepResult& result);
std::vector<std::size_t> exceptional_records(const SweepResult& result);

struct ExceptionalGroup {
    std::vector<Integer> key;      // reduced direction (m, n), or PN point coordinates
    std::vector<std::size_t> members;  // record positions
    bool predicted = false;        // direction is in exceptional_subgroups(eps)
};

// EDS_GCD: violating cells grouped by (m, n) / gcd(m, n). PN_CHECK: one group
// per violating point, no structure asserted. Throws MathError for other
// kinds.
std::vector<ExceptionalGroup> detect_exceptional(const SweepResult& result);

std::vector<std::string> csv_header(SweepKind kind);
// "# gcdh <version> config=<json>" then the header and one row per record.
void write_csv(std::ostream& out, const SweepResult& result);
nlohmann::json summary_json(const SweepResult& result);

// Reals in output: 12 significant digits.
std::string format_real(double v);

}  // namespace gcdh
