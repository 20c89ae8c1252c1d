#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "argvar/bounds.hpp"

namespace argvar::cli {

inline constexpr const char* kToolVersion = "argvar 0.1.0";

/// One verification request: a function, the geometry it lives on, and the
/// inequality checks to run. Serialized as JSON with complex numbers as
/// [re, im] arrays.
struct Scenario {
    std::string id;
    uint64_t seed = 0;
    std::vector<std::string> checks;
    holo::ExprPtr f;
    std::optional<cover::CoverSpec> cov;  // absent = planar geometry
    std::map<std::string, geom::Region> regions;            // K, U, U1, U2
    std::map<std::string, cover::SurfaceRegion> sregions;   // surface K, U, U1, U2
    std::optional<geom::Curve> gamma;
    int gamma_start_sheet = 0;
    std::vector<Cx> p_roots;     // lemma2 / eq14 divisor polynomial (monic)
    std::optional<Cx> basepoint; // lemma3 / koebe conformal basepoint
    geom::GridParams grid;
    double check_tol = 1e-6;     // multiplicative slack in "holds"
};

struct CheckRecord {
    std::string check;    // requested check name
    std::string status;   // "ok" or "hypothesis_error"
    std::string message;  // error text when status != "ok"
    std::optional<bounds::BoundCheck> result;
};

struct Report {
    std::string scenario_id;
    uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    double elapsed_seconds = 0.0;
    std::map<std::string, double> measured;  // epsilon, D, gamma_length, kappa
    std::vector<CheckRecord> records;
};

const std::vector<std::string>& known_checks();

/// Parses and eagerly validates a scenario file. Throws ParseError with field
/// context on malformed input, ValidationError on violated invariants
/// (incompatible check/geometry, K not contained in U, ...).
Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text, const std::string& origin);

/// Canonical JSON serialization (deterministic key order and formatting).
std::string serialize_scenario(const Scenario& s);

/// Runs every requested check in declaration order. Hypothesis failures are
/// recorded, never skipped; only internal nonconvergence propagates.
Report run_scenario(const Scenario& s);

/// n deterministic pseudo-random scenarios of the given kind whose hypotheses
/// hold by construction. Same (seed, n, kind) -> identical scenarios. The
/// draw-by-draw generator recipe is documented in the README.
std::vector<Scenario> generate_suite(uint64_t seed, int n, const std::string& kind);

std::string report_json(const Report& r);
std::string report_csv(const Report& r);

/// Writes <id>.<format>, <id>_plot.csv and <id>_plot.svg into out_dir.
void emit_report(const Report& r, const std::string& format,
                 const std::string& out_dir);

struct SuiteSummary {
    std::string kind;
    uint64_t seed = 0;
    int n = 0;
    int holds = 0;
    int fails = 0;
    int hypothesis_errors = 0;
    double median_log10_slack = 0.0;
    std::vector<Scenario> scenarios;
    std::vector<Report> reports;
};

SuiteSummary run_suite(uint64_t seed, int n, const std::string& kind);

/// Writes scenarios/, reports/, summary.json, plot.csv and plot.svg.
void emit_suite(const SuiteSummary& s, const std::string& out_dir);

/// Exit code aggregation: 0 all hold, 1 some check fails, 2 hypothesis or
/// validation errors present (2 wins over 1).
int exit_code_for(const std::vector<Report>& reports);

/// Scenario counts per kind used by the check-all battery.
const std::vector<std::pair<std::string, int>>& check_all_battery();

}  // namespace argvar::cli
