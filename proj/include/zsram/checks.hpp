#pragma once

// Exhaustive and randomized invariant suites: the theorem-shaped properties
// the library must never violate, runnable from the CLI and the acceptance
// tests.

#include <optional>
#include <string>
#include <vector>

#include "zsram/abelian.hpp"

namespace zsram {

struct SuiteOptions {
    int max_order = 0;        // 0 = suite default
    int max_x = 3;            // generated_bound_check exhaustive set size
    long long random_cases = 0;
    int count = 0;            // instances for seeded suites
    int degree = 3;
    int vertices = 3000;
    unsigned long long seed = 1;
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    long long cases = 0;
    double seconds = 0;
    std::string detail;  // first counterexample, or a short summary
};

// Every abelian group of order <= max_order, one per isomorphism class, in
// invariant-factor form.
std::vector<AbelianGroup> all_groups_up_to(int max_order);

SuiteResult check_kneser(const SuiteOptions& opt = {});              // default order <= 8
SuiteResult check_psi(const SuiteOptions& opt = {});                 // default order <= 16
SuiteResult check_algebra2(const SuiteOptions& opt = {});            // default order <= 16
SuiteResult check_egz(const SuiteOptions& opt = {});                 // 4^7 + random m = 5, 6
SuiteResult check_lemma33(const SuiteOptions& opt = {});             // default order <= 12
SuiteResult check_invariant_factors(const SuiteOptions& opt = {});   // default order <= 64
SuiteResult check_blueprints(const SuiteOptions& opt = {});          // 20 seeded 3-regular
SuiteResult check_realization_oracle(const SuiteOptions& opt = {});  // 200 seeded instances

// Dispatch by suite name; unknown names are a validation error.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt = {});
std::vector<std::string> suite_names();

}  // namespace zsram
