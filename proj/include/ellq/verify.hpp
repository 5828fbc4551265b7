#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ellq/serialize.hpp"

namespace ellq {

struct RunConfig {
    std::uint64_t seed = 20260809u;
    cplx eta{0.0, 1.0};
    std::vector<std::pair<int, int>> pairs = {{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 3}, {5, 1},
                                              {5, 2}, {5, 3}, {5, 4}, {6, 1}, {6, 5}};
    int tau_samples = 20;
    double tol_scale = 1.0; // multiplies residual-type thresholds
    int workers = 0;        // 0 = library default
    double trunc_eps = 1e-12;

    void validate() const; // Im(eta) > 0, pairs coprime
};

struct CheckResult {
    std::string check_id;
    json params;
    std::string status; // "pass" | "fail" | "ambiguous"
    std::map<std::string, double> metrics;
    std::int64_t runtime_ms = 0;
};

const std::vector<std::string>& check_registry();

// Deterministic given cfg.seed; unknown ids throw UnknownCheck.
CheckResult run_check(const std::string& id, const RunConfig& cfg);

struct RunAllResult {
    std::vector<CheckResult> results;
    bool all_pass = false; // no check has status "fail"
};

// Runs every registered check; failures (including thrown module errors) are
// captured as failed results and never abort the batch.
RunAllResult run_all(const RunConfig& cfg);

// One JSON document; wall-clock data only with with_timing so that identical
// configs produce bit-identical reports by default. The determinism hash
// covers check ids, params, metrics, and statuses only.
json report_json(const RunAllResult& run, const RunConfig& cfg, bool with_timing = false);

std::uint64_t report_hash(const RunAllResult& run);

// Seeded sampling helpers shared with tests.
struct Rng {
    explicit Rng(std::uint64_t seed);
    double uniform();            // [0, 1)
    std::uint64_t next();
    std::uint64_t state;
};

std::uint64_t fnv1a(const std::string& s);

/// Seed for one check, derived from the config seed and the check id.
std::uint64_t check_seed(std::uint64_t base, const std::string& id);

/// Point u + v*eta with u, v uniform in [0, 1).
cplx random_point(Rng& rng, cplx eta);

// Uniform in the fundamental parallelogram, rejecting points within 1e-3 of
// (1/2n)(Z + Z eta).
cplx random_tau_generic(Rng& rng, cplx eta, int n);

} // namespace ellq
