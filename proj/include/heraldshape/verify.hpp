#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace herald::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // empty on pass; failing property and inputs otherwise
};

struct Options {
    std::string filter;     // substring match on check names; empty runs all
    std::uint64_t seed = 1; // drives every random draw; same seed, same output
};

// Names of all registered checks, in execution order.
std::vector<std::string> check_names();

// Run the built-in invariant suite (dimension grid n in {2,3,4,8} plus the
// per-property extremes) and collect one result per check.
std::vector<CheckResult> run_checks(const Options& options);

// Print the pass/fail table to `out`; returns 0 iff every check passed.
int run_and_print(const Options& options, std::ostream& out);

}  // namespace herald::verify
