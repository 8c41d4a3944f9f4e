#pragma once

#include "heraldshape/scenario.hpp"

#include <cstdint>
#include <vector>

namespace herald {

// Used when neither the command line, the environment, nor the scenario
// provides a seed. Always echoed in reports.
inline constexpr std::uint64_t default_seed = 42;

// Empirical click statistics for one scenario at a fixed seed.
// Σ clicks_per_outcome + discards == trials; a "click" is any detector
// outcome, a discard is the aggregated no-click event.
struct ClickStats {
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> clicks_per_outcome;
    std::uint64_t discards = 0;
    double empirical_rate = 0.0;  // Σ clicks / trials
    double rate_std_error = 0.0;  // √(r (1-r) / trials)
    std::uint64_t seed = 0;

    bool operator==(const ClickStats&) const = default;
};

namespace mc {

// Draw per-trial outcomes from the exact distribution of solve_scenario via
// inverse CDF. Bit-identical for identical (scenario, trials, seed); trials
// use independent counter-derived streams, so evaluation order cannot matter.
ClickStats simulate_clicks(const Scenario& scenario, std::uint64_t trials,
                           std::uint64_t seed);

// Same sampler on a precomputed solution (used by the CLI to avoid solving
// the pipeline twice).
ClickStats simulate_clicks(const ExactSolution& solution, std::uint64_t trials,
                           std::uint64_t seed);

}  // namespace mc
}  // namespace herald
