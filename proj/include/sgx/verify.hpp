#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sgx/extrema.hpp"

namespace sgx {

struct VerifyConfig {
    std::uint64_t rng_seed = 20261016;
    CountOptions count;
    int condition_a_samples = 1000;
    int ueps_samples = 20;
    int ueps_max_n = 6;
    int growth_samples = 5;
    int decimation_max_level = 4;
    int derivative_samples = 200;
    int projective_samples = 1000;
    int region_samples = 10000;
    double psi_tol = 1e-13;
    double eig_tol = 1e-8;
};

struct SuiteReport {
    std::string suite;
    bool pass = true;
    std::int64_t checks = 0;
    std::vector<std::string> failures;  // first witnesses only
    std::map<std::string, double> metrics;
    std::int64_t samples = 0, flagged = 0;
    std::int64_t equivalence_checked = 0, equivalence_mismatches = 0;
    std::int64_t sign_checked = 0, sign_violations = 0;

    void check(bool ok, const std::string& what);
    void merge(const SuiteReport& o);
    std::string json() const;
};

// decimation, psi, thm34, conditionA, thm35, thm1, prop13, prop14, signs, gaussgreen,
// derivatives, projective, equivalence
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const VerifyConfig& cfg = {});

SuiteReport verify_decimation(const VerifyConfig& cfg, int max_level);
SuiteReport verify_psi(const VerifyConfig& cfg);
SuiteReport verify_condition_a(const VerifyConfig& cfg, bool locator_checks);
SuiteReport verify_ueps_bracket(const VerifyConfig& cfg);
SuiteReport verify_growth_bracket(const VerifyConfig& cfg);
SuiteReport verify_partition(const VerifyConfig& cfg);
SuiteReport verify_prelocalized(const VerifyConfig& cfg);
SuiteReport verify_derivatives(const VerifyConfig& cfg);
SuiteReport verify_gaussgreen(const VerifyConfig& cfg);
SuiteReport verify_projective(const VerifyConfig& cfg);

}  // namespace sgx
