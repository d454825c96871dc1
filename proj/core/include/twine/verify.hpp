#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twine/group.hpp"

namespace twine {

/// Outcome of one named check inside a verification suite.
struct CheckResult {
    std::string name;     ///< stable identifier, e.g. "Theorem 1(b) A(p=3)"
    bool pass = false;
    std::string details;  ///< what was checked, with the measured values
    std::string witness;  ///< concrete counterexample data when the check fails
    std::string replay;   ///< command line that reproduces a failed check
};

/// Result of one suite run. Checks are sorted by name and overall_pass is
/// the conjunction of the per-check verdicts. timings_ms is diagnostic only:
/// it is excluded from rendering and from equality, so rendered reports are
/// byte-deterministic and survive a render/parse round trip unchanged.
struct Report {
    std::string suite;
    std::vector<std::string> inputs;  ///< labels of the groups examined
    std::uint64_t seed = 0;
    std::string tool_version;
    bool overall_pass = false;
    std::vector<CheckResult> checks;
    std::map<std::string, double> timings_ms;
};

bool operator==(const CheckResult& a, const CheckResult& b);
bool operator!=(const CheckResult& a, const CheckResult& b);
bool operator==(const Report& a, const Report& b);
bool operator!=(const Report& a, const Report& b);

struct VerifyOptions {
    /// Odd prime the built-in fixture families are constructed at.
    Exp p = 3;
    /// Optional explicit fixture replacing the built-in set, for the suites
    /// that accept one (theorem, lemma-s, lemma-center, associativity).
    GroupPtr group;
    /// Textual spec of `group`, echoed into replay commands.
    std::string group_spec;
    /// Seed for sampled associativity triples.
    std::uint64_t seed = 0x5EED5EEDull;
    /// Triple sample size used above the exhaustive cutoff.
    std::size_t sampled_triples = 1'000'000;
    /// Node budget for isomorphism searches.
    std::size_t node_budget = 50'000'000;
};

/// Names of the available suites, in canonical order.
std::vector<std::string> verify_suite_names();

/// Runs one suite: "lemma-s", "lemma-center", "theorem", "p4-classification",
/// "corollary", or "associativity". Throws ConfigError for unknown suite
/// names or invalid options; SearchBudgetExceeded escapes so callers can
/// distinguish an exhausted search from a failed check.
Report run_verify_suite(const std::string& suite, const VerifyOptions& opts = {});

/// Renders a report as "json" or "text". Byte-deterministic for a fixed
/// report: object keys are sorted and no timestamps or timings appear. A
/// default-constructed report renders to the minimal json document "{}".
std::string render_report(const Report& r, const std::string& format);

/// Parses a report back from its json rendering; report_from_json(render) is
/// the identity on every report this library produces.
Report report_from_json(const std::string& text);

}  // namespace twine
