#include "heraldshape/montecarlo.hpp"

#include "heraldshape/rng.hpp"

#include <cmath>

namespace herald::mc {

ClickStats simulate_clicks(const ExactSolution& solution, std::uint64_t trials,
                           std::uint64_t seed) {
    // Build a CDF over detector outcomes. Outcome probabilities are absolute
    // (they already include modulator pass and loss), so everything past the
    // click mass is a discard.
    std::vector<double> cdf;
    cdf.reserve(solution.outcomes.size());
    double mass = 0.0;
    Index n_outcomes = 0;
    for (const auto& out : solution.outcomes) {
        if (out.outcome < 0) continue;  // no-click row: handled by the tail
        mass += out.probability;
        cdf.push_back(mass);
        ++n_outcomes;
    }

    ClickStats stats;
    stats.trials = trials;
    stats.seed = seed;
    stats.clicks_per_outcome.assign(static_cast<std::size_t>(n_outcomes), 0);

    for (std::uint64_t t = 0; t < trials; ++t) {
        const double u = rng::uniform01(seed, t);
        if (u >= mass) {
            ++stats.discards;
            continue;
        }
        // First outcome whose cumulative mass exceeds u.
        std::size_t j = 0;
        while (j + 1 < cdf.size() && u >= cdf[j]) ++j;
        ++stats.clicks_per_outcome[j];
    }

    const std::uint64_t clicks = trials - stats.discards;
    if (trials > 0) {
        const double r = static_cast<double>(clicks) / static_cast<double>(trials);
        stats.empirical_rate = r;
        stats.rate_std_error = std::sqrt(r * (1.0 - r) / static_cast<double>(trials));
    }
    return stats;
}

ClickStats simulate_clicks(const Scenario& scenario, std::uint64_t trials,
                           std::uint64_t seed) {
    return simulate_clicks(solve_scenario(scenario), trials, seed);
}

}  // namespace herald::mc
