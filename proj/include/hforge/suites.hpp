#pragma once

#include "hforge/serialize.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hforge {

enum class CaseStatus { pass, fail, skip };
std::string status_name(CaseStatus s);

struct CaseResult {
    CaseStatus status = CaseStatus::pass;
    Json witness = Json::object();
};

// One verification case; run receives a seed derived from the run seed and the case id.
struct CaseSpec {
    std::string suite;
    std::string id;
    std::function<CaseResult(uint64_t)> run;
};

struct CaseRecord {
    std::string suite;
    std::string id;
    CaseStatus status = CaseStatus::pass;
    Json witness;
    double time_ms = 0;
    Json to_json() const;  // {suite, case, status, witness, time_ms}
};

const std::vector<std::string>& suite_names();

struct SuiteConfig {
    uint64_t seed = 1;
    int jobs = 1;
    std::string json_out;
    std::map<std::string, bool> enabled;  // every suite of suite_names()

    // shared grid for the coset and matrix suites
    int n_min = 2, n_max = 3;
    std::vector<long> primes{2, 3};
    int r_min = 1, r_max = 1;

    int symbolic_n_max = 5;      // matrices: symbolic contragredient relation
    int numeric_samples = 10;    // matrices: random (p, r, x)
    long max_vp_cosets = 128;    // hecke: larger (n, p, r) get skip records
    int coverage_samples = 200;
    int satake_n_max = 4;
    int projection_trials = 100;
    int recisums_n_max = 20;
    long gauss_max_modulus = 27;
    int weight_pairs = 500;
    int weight_n_max = 5;
    std::vector<long> distribution_primes{2, 3, 5};
    long distribution_depth = 4;
    std::vector<long> dual_primes{3, 5};
    std::string distribution_fixture;  // serialized distribution checked for the relation

    SuiteConfig();
    // Throws std::invalid_argument naming the offending key.
    void validate() const;
};

// Flat "key = value" lines; '#' starts a comment; lists are comma separated. Unknown keys and bad
// values throw std::invalid_argument with the line number.
void apply_config_text(SuiteConfig& cfg, const std::string& text, const std::string& origin = "config");
void apply_config_value(SuiteConfig& cfg, const std::string& key, const std::string& value);
std::string default_config_text();

// Cases in report order; disabled suites contribute a single skip case.
std::vector<CaseSpec> build_cases(const SuiteConfig& cfg);

uint64_t case_seed(uint64_t run_seed, const std::string& suite, const std::string& id);

// Runs on a pool of jobs workers; the sink sees records in case order as soon as a prefix is complete.
std::vector<CaseRecord> run_cases(const std::vector<CaseSpec>& cases, uint64_t seed, int jobs,
                                  const std::function<void(const CaseRecord&)>& sink = {});

}  // namespace hforge
