#pragma once

// Cross-route and oracle verification suites. Each suite bundles a batch of
// named checks (route equivalences, closed-form identities, randomized
// inequality sweeps, seeded coverage experiments) and reports them
// pass/fail with a one-line detail, so the CLI `verify` subcommand and the
// acceptance runner share one implementation. The "goldens" suite compares
// canonical serializations byte for byte against checked-in reference files;
// golden_payloads exposes the same serializations so a generator tool can
// (re)write those files from the identical code path.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wishart {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail; // short numeric evidence, empty when uninteresting
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    bool pass() const;
    int failed() const;
};

struct VerifyConfig {
    std::string golden_dir;   // directory holding the reference serializations
    std::uint64_t seed = 414; // base seed for the randomized suites
    int n_cap = 0;            // optional order override for the route suites
    long trials = 0;          // optional trial-count override for the sampling suites
};

// Suites: goldens, routes, sigma-routes, counting, isotropic, limits,
// montecarlo, bounds, coverage. "all" runs the eight headline suites in
// order (sigma-routes is a configurable slice of routes and not repeated).
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg);
std::vector<SuiteResult> run_all(const VerifyConfig& cfg);

// (file name, canonical content) for every golden reference, freshly built.
std::vector<std::pair<std::string, std::string>> golden_payloads();

} // namespace wishart
