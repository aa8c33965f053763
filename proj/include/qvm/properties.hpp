#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qvm {

struct SuiteOptions {
    std::uint64_t seed = 1;
    int points = 3;    // level points per Painleve star
    int trials = 100;  // random inputs for the cheap suites
};

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string counterexample; // first failure, empty when none

    bool passed() const { return cases > 0 && failures == 0; }
};

const std::vector<std::string>& suite_names();

// Throws ShapeMismatch for an unknown name. Failures inside a case, thrown errors included, are
// counted, never propagated.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opt);

} // namespace qvm
