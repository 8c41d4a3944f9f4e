#include "heraldshape/montecarlo.hpp"
#include "heraldshape/rng.hpp"
#include "heraldshape/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numeric>

using namespace herald;
using doctest::Approx;

namespace {

Scenario uniform_scenario(Index n) {
    Scenario sc;
    sc.dims = {n};
    sc.target_shape = Vec::Ones(n);
    return sc;
}

}  // namespace

TEST_CASE("counter rng is deterministic, order free and in range") {
    CHECK(rng::uniform01(1, 0) == rng::uniform01(1, 0));
    CHECK(rng::uniform01(1, 0) != rng::uniform01(1, 1));
    CHECK(rng::uniform01(1, 5) != rng::uniform01(2, 5));
    for (std::uint64_t c = 0; c < 1000; ++c) {
        const double u = rng::uniform01(3, c);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }

    // streams decouple consumers that share a seed
    rng::Stream a(7, 0);
    rng::Stream b(7, 1);
    CHECK(a.next_uniform() != b.next_uniform());
    rng::Stream a2(7, 0);
    a2.next_uniform();
    CHECK(a.next_uniform() == a2.next_uniform());
}

TEST_CASE("click sampling is reproducible and conserves trials") {
    const ExactSolution sol = solve_scenario(uniform_scenario(4));
    const ClickStats once = mc::simulate_clicks(sol, 20000, 11);
    const ClickStats again = mc::simulate_clicks(sol, 20000, 11);
    CHECK(once == again);
    CHECK(mc::simulate_clicks(sol, 20000, 12) != once);

    const std::uint64_t clicks = std::accumulate(
        once.clicks_per_outcome.begin(), once.clicks_per_outcome.end(),
        std::uint64_t{0});
    CHECK(clicks + once.discards == once.trials);
    CHECK(once.trials == 20000);
    CHECK(once.seed == 11);
    CHECK(once.empirical_rate ==
          Approx(double(clicks) / 20000.0).epsilon(1e-15));
    const double r = once.empirical_rate;
    CHECK(once.rate_std_error ==
          Approx(std::sqrt(r * (1.0 - r) / 20000.0)).epsilon(1e-12));
}

TEST_CASE("sampled frequencies track the exact distribution") {
    Scenario sc = uniform_scenario(2);
    sc.loss_eta = 0.5;  // exact click mass per outcome: 0.25
    const ClickStats stats = mc::simulate_clicks(solve_scenario(sc), 100000, 3);
    REQUIRE(stats.clicks_per_outcome.size() == 2);
    for (const std::uint64_t c : stats.clicks_per_outcome) {
        const double freq = double(c) / double(stats.trials);
        const double sigma = std::sqrt(0.25 * 0.75 / 100000.0);
        CHECK(std::abs(freq - 0.25) < 4.0 * sigma + 1e-12);
    }
    CHECK(stats.discards > 0);
}

TEST_CASE("scenario and solution overloads agree") {
    const Scenario sc = uniform_scenario(3);
    CHECK(mc::simulate_clicks(sc, 5000, 2) ==
          mc::simulate_clicks(solve_scenario(sc), 5000, 2));
}

TEST_CASE("zero trials produce an empty but well formed record") {
    const ClickStats stats =
        mc::simulate_clicks(solve_scenario(uniform_scenario(2)), 0, 1);
    CHECK(stats.trials == 0);
    CHECK(stats.discards == 0);
    CHECK(stats.empirical_rate == 0.0);
    CHECK(stats.rate_std_error == 0.0);
    for (const std::uint64_t c : stats.clicks_per_outcome) CHECK(c == 0);
}

TEST_CASE("a blocked mode never registers a click") {
    Scenario sc;
    sc.dims = {2};
    Vec nu(2);
    nu << 0.0, 1.0;
    sc.target_shape = nu;
    sc.detector.basis = DetectorBasis::computational;
    const ClickStats stats = mc::simulate_clicks(solve_scenario(sc), 50000, 8);
    REQUIRE(stats.clicks_per_outcome.size() == 2);
    CHECK(stats.clicks_per_outcome[0] == 0);
    CHECK(stats.clicks_per_outcome[1] > 0);
}
