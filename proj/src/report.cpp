#include "heraldshape/report.hpp"

#include "heraldshape/linalg.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace herald::cli {
namespace {

using nlohmann::json;

// Lossless double formatting for CSV cells.
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(const std::optional<double>& x) {
    return x ? fmt(*x) : std::string{};
}

json outcome_to_json(const OutcomeReport& row) {
    json j;
    j["f"] = row.f;
    j["probability"] = row.probability;
    j["fidelity"] = row.fidelity ? json(*row.fidelity) : json(nullptr);
    j["purity"] = row.purity ? json(*row.purity) : json(nullptr);
    j["accepted"] = row.accepted;
    return j;
}

json report_to_json(const RunReport& report) {
    json j;
    j["scenario"] = json::parse(scenario_to_json_text(report.scenario));
    if (report.scenario.mode_labels)
        j["modes"] = flat_mode_labels(report.scenario);

    j["per_outcome"] = json::array();
    for (const auto& row : report.per_outcome)
        j["per_outcome"].push_back(outcome_to_json(row));
    j["discard"] = {{"probability", report.discard_probability}};

    json totals;
    totals["fidelity"] =
        report.totals_defined ? json(report.totals.fidelity) : json(nullptr);
    totals["purity"] =
        report.totals_defined ? json(report.totals.purity) : json(nullptr);
    totals["total_herald_rate"] = report.totals.total_herald_rate;
    totals["per_outcome_rates"] = report.totals.per_outcome_rates;
    totals["entanglement_entropy_bits"] =
        report.totals.entanglement_entropy_bits
            ? json(*report.totals.entanglement_entropy_bits)
            : json(nullptr);
    j["totals"] = totals;

    if (report.montecarlo) {
        const ClickStats& mc = *report.montecarlo;
        j["montecarlo"] = {{"trials", mc.trials},
                           {"clicks_per_outcome", mc.clicks_per_outcome},
                           {"discards", mc.discards},
                           {"empirical_rate", mc.empirical_rate},
                           {"rate_std_error", mc.rate_std_error},
                           {"seed", mc.seed}};
    } else {
        j["montecarlo"] = nullptr;
    }

    j["seed"] = report.seed;
    j["timing_ms"] = report.timing_ms;
    j["checks"] = {{"tolerance", report.tolerance},
                   {"probability_sum_ok", report.probability_sum_ok}};
    return j;
}

}  // namespace

std::optional<std::uint64_t> seed_from_env() {
    const char* env = std::getenv("HERALDSHAPE_SEED");
    if (!env) return std::nullopt;
    std::uint64_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc{} || ptr != end)
        throw ScenarioParseError("HERALDSHAPE_SEED: not an unsigned integer");
    return value;
}

std::uint64_t resolve_seed(const Scenario& scenario,
                           const std::optional<std::uint64_t>& cli_seed) {
    if (cli_seed) return *cli_seed;
    if (const auto env = seed_from_env()) return *env;
    if (scenario.montecarlo && scenario.montecarlo->seed)
        return *scenario.montecarlo->seed;
    return default_seed;
}

RunReport run_scenario(const Scenario& scenario, const RunOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();

    RunReport report;
    report.scenario = scenario;
    report.tolerance = options.tolerance;
    report.seed = resolve_seed(scenario, options.seed);

    const ExactSolution solution = solve_scenario(scenario);
    const Index n = scenario.total_dim();
    const Shape target = scenario.target();
    const bool correct_all =
        scenario.detector.accept_policy == AcceptPolicy::phase_corrected_all;

    // Per-outcome rows plus the accepted ensemble ρ = Σ (p_i / P) ρ_i.
    Mat ensemble = Mat::Zero(n, n);
    double accepted_rate = 0.0;
    double total_mass = 0.0;
    for (const auto& out : solution.outcomes) {
        total_mass += out.probability;
        if (out.outcome < 0) {
            report.discard_probability = out.probability;
            continue;
        }
        OutcomeReport row;
        row.f = out.outcome;
        row.probability = out.probability;
        if (out.has_state()) {
            const HeraldOutcome used =
                correct_all ? protocol::phase_correct(out, n) : out;
            row.fidelity = metrics::fidelity(used.signal_state, target);
            row.purity = metrics::purity(used.signal_state);
            row.accepted = correct_all || out.outcome == 0;
            if (row.accepted) {
                ensemble += out.probability * used.signal_state;
                accepted_rate += out.probability;
                report.totals.per_outcome_rates.push_back(out.probability);
            }
        }
        report.per_outcome.push_back(row);
    }

    report.totals.total_herald_rate = accepted_rate;
    if (accepted_rate > tol::prob_floor) {
        ensemble /= accepted_rate;
        report.totals.fidelity = metrics::fidelity(ensemble, target);
        report.totals.purity = metrics::purity(ensemble);
        report.totals_defined = true;
    }
    if (solution.source.pure)
        report.totals.entanglement_entropy_bits =
            metrics::entanglement_entropy(solution.source);

    report.probability_sum_ok =
        std::abs(total_mass - 1.0) <= options.tolerance;

    if (options.trials || scenario.montecarlo) {
        const std::uint64_t trials =
            options.trials ? *options.trials : scenario.montecarlo->trials;
        report.montecarlo = mc::simulate_clicks(solution, trials, report.seed);
    }

    const auto t1 = std::chrono::steady_clock::now();
    report.timing_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    return report;
}

RunReport run_file(const std::string& path, const RunOptions& options) {
    return run_scenario(scenario_from_file(path), options);
}

std::vector<RunReport> sweep_scenario(const Scenario& scenario,
                                      const std::string& param,
                                      const std::vector<double>& values,
                                      const RunOptions& options) {
    if (param != "eta" && param != "p")
        throw ScenarioParseError("sweep: unknown parameter '" + param +
                                 "' (expected 'eta' or 'p')");
    if (param == "p" && scenario.source.kind != SourceKind::werner)
        throw std::invalid_argument(
            "sweep: parameter 'p' requires a werner source");

    std::vector<RunReport> reports;
    reports.reserve(values.size());
    for (double v : values) {
        Scenario point = scenario;
        if (param == "eta")
            point.loss_eta = v;
        else
            point.source.p = v;
        reports.push_back(run_scenario(point, options));
    }
    return reports;
}

std::vector<RunReport> sweep_file(const std::string& path,
                                  const std::string& param,
                                  const std::vector<double>& values,
                                  const RunOptions& options) {
    return sweep_scenario(scenario_from_file(path), param, values, options);
}

std::string report_to_json_text(const RunReport& report, int indent) {
    return report_to_json(report).dump(indent);
}

std::string sweep_to_json_text(const std::vector<RunReport>& reports,
                               int indent) {
    json arr = json::array();
    for (const auto& report : reports) arr.push_back(report_to_json(report));
    return arr.dump(indent);
}

std::string run_report_csv(const RunReport& report) {
    std::string csv = "f,probability,fidelity,purity,accepted,discarded\n";
    for (const auto& row : report.per_outcome) {
        csv += std::to_string(row.f) + ',' + fmt(row.probability) + ',' +
               fmt(row.fidelity) + ',' + fmt(row.purity) + ',' +
               (row.accepted ? "true" : "false") + ",false\n";
    }
    csv += "-1," + fmt(report.discard_probability) + ",,,false,true\n";
    return csv;
}

std::string sweep_csv(const std::string& param, const std::vector<double>& values,
                      const std::vector<RunReport>& reports) {
    std::string csv = "param,value,total_herald_rate,fidelity,purity\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const RunReport& r = reports[i];
        csv += param + ',' + fmt(values[i]) + ',' +
               fmt(r.totals.total_herald_rate) + ',';
        if (r.totals_defined)
            csv += fmt(r.totals.fidelity) + ',' + fmt(r.totals.purity);
        else
            csv += ",";
        csv += '\n';
    }
    return csv;
}

std::string run_json_text(const std::string& scenario_text,
                          const RunOptions& options) {
    return report_to_json_text(
        run_scenario(scenario_from_json_text(scenario_text), options));
}

}  // namespace herald::cli
