#pragma once

#include "heraldshape/metrics.hpp"
#include "heraldshape/montecarlo.hpp"
#include "heraldshape/scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace herald {

// One detector outcome as it appears in a report. Flagged-null outcomes
// (probability below the floor) carry empty fidelity/purity.
struct OutcomeReport {
    Index f = 0;
    double probability = 0.0;  // absolute, includes modulator pass and loss
    std::optional<double> fidelity;
    std::optional<double> purity;
    bool accepted = false;
    bool discarded = false;  // true only for the aggregated no-click row
};

struct RunReport {
    Scenario scenario;  // echo; re-parses to an identical value
    std::vector<OutcomeReport> per_outcome;  // click outcomes, f ascending
    double discard_probability = 0.0;        // aggregated no-click mass
    MetricsReport totals;
    // False when no outcome is accepted (e.g. all accepted modes blocked);
    // totals.fidelity/purity are then emitted as null.
    bool totals_defined = false;
    std::optional<ClickStats> montecarlo;
    double timing_ms = 0.0;
    std::uint64_t seed = default_seed;  // resolved seed, echoed always
    double tolerance = tol::eq;         // report-level comparison tolerance
    bool probability_sum_ok = false;    // |Σ outcomes + discard - 1| ≤ tolerance
};

namespace cli {

struct RunOptions {
    std::optional<std::uint64_t> trials;  // --trials: force/override MC
    std::optional<std::uint64_t> seed;    // --seed
    double tolerance = tol::eq;           // --tolerance
};

// HERALDSHAPE_SEED when set; a malformed value is a parse error.
std::optional<std::uint64_t> seed_from_env();

// Seed precedence: --seed, then HERALDSHAPE_SEED, then the scenario's
// montecarlo.seed, then default_seed.
std::uint64_t resolve_seed(const Scenario& scenario,
                           const std::optional<std::uint64_t>& cli_seed);

// Exact pipeline (plus Monte Carlo when configured) on one scenario.
RunReport run_scenario(const Scenario& scenario, const RunOptions& options = {});
RunReport run_file(const std::string& path, const RunOptions& options = {});

// One report per value, in the given order. param is "eta" or "p"; sweeping
// p requires a werner source.
std::vector<RunReport> sweep_scenario(const Scenario& scenario,
                                      const std::string& param,
                                      const std::vector<double>& values,
                                      const RunOptions& options = {});
std::vector<RunReport> sweep_file(const std::string& path,
                                  const std::string& param,
                                  const std::vector<double>& values,
                                  const RunOptions& options = {});

// Serialization. JSON keys are order-insensitive; complex numbers are
// (re, im) pairs; absent optional blocks are null.
std::string report_to_json_text(const RunReport& report, int indent = 2);
std::string sweep_to_json_text(const std::vector<RunReport>& reports,
                               int indent = 2);

// CSV, fixed column order.
//   run:   f,probability,fidelity,purity,accepted,discarded
//   sweep: param,value,total_herald_rate,fidelity,purity
std::string run_report_csv(const RunReport& report);
std::string sweep_csv(const std::string& param, const std::vector<double>& values,
                      const std::vector<RunReport>& reports);

// Scenario text in, report text out; the pybind entry point.
std::string run_json_text(const std::string& scenario_text,
                          const RunOptions& options = {});

}  // namespace cli
}  // namespace herald
