#include "heraldshape/report.hpp"
#include "heraldshape/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace herald;

// Flags shared by run and sweep.
struct CommonFlags {
    std::string out, csv;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double tolerance = tol::eq;
    CLI::Option* trials_opt = nullptr;
    CLI::Option* seed_opt = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--out", out, "Write the report here instead of stdout");
        cmd->add_option("--csv", csv, "Also write a CSV table to this path");
        trials_opt = cmd->add_option(
            "--trials", trials, "Monte Carlo trial count (overrides the scenario)");
        seed_opt = cmd->add_option(
            "--seed", seed, "Random seed (overrides HERALDSHAPE_SEED and the scenario)");
        cmd->add_option("--tolerance", tolerance,
                        "Tolerance for report-level comparisons")
            ->capture_default_str();
    }

    cli::RunOptions options() const {
        cli::RunOptions o;
        if (trials_opt->count() > 0) o.trials = trials;
        if (seed_opt->count() > 0) o.seed = seed;
        o.tolerance = tolerance;
        return o;
    }
};

// Nothing is written on a nonzero exit, so all output goes through here last.
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    file << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "heraldshape: exact simulation and analysis of heralded single-photon\n"
        "shaping with entangled sources, idler modulation and Fourier-conjugate\n"
        "detection.\n\n"
        "Seed precedence: --seed, then the HERALDSHAPE_SEED environment\n"
        "variable, then the scenario's montecarlo.seed, then 42. The effective\n"
        "seed is echoed in every report.\n\n"
        "Exit codes: 0 success, 1 verification failure, 2 parse error,\n"
        "3 physics-construction error."};
    app.require_subcommand(1);

    std::string run_file_path, sweep_file_path, param, filter;
    std::vector<double> values;
    std::uint64_t verify_seed = 1;
    CommonFlags run_flags, sweep_flags;

    CLI::App* run_cmd = app.add_subcommand(
        "run", "Evaluate one scenario file (exact pipeline plus optional Monte Carlo)");
    run_cmd->add_option("file", run_file_path, "Scenario file")->required();
    run_flags.attach(run_cmd);

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Re-run one scenario across a list of parameter values");
    sweep_cmd->add_option("file", sweep_file_path, "Scenario file")->required();
    sweep_cmd->add_option("--param", param, "Swept parameter: eta or p")->required();
    sweep_cmd->add_option("--values", values, "Parameter values, in output order")
        ->delimiter(',');
    sweep_flags.attach(sweep_cmd);

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Run the built-in invariant suite and print a pass/fail table");
    verify_cmd->add_option("--filter", filter, "Run only checks whose name contains this");
    CLI::Option* verify_seed_opt =
        verify_cmd->add_option("--seed", verify_seed, "Seed for the randomized checks")
            ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // exit 0 covers --help and --version
    }

    try {
        if (run_cmd->parsed()) {
            const RunReport report =
                cli::run_file(run_file_path, run_flags.options());
            const std::string csv_text =
                run_flags.csv.empty() ? std::string{} : cli::run_report_csv(report);
            emit(cli::report_to_json_text(report), run_flags.out);
            if (!run_flags.csv.empty()) emit(csv_text, run_flags.csv);
            return 0;
        }
        if (sweep_cmd->parsed()) {
            const auto reports =
                cli::sweep_file(sweep_file_path, param, values, sweep_flags.options());
            const std::string csv_text =
                sweep_flags.csv.empty() ? std::string{}
                                        : cli::sweep_csv(param, values, reports);
            emit(cli::sweep_to_json_text(reports), sweep_flags.out);
            if (!sweep_flags.csv.empty()) emit(csv_text, sweep_flags.csv);
            return 0;
        }
        verify::Options options;
        options.filter = filter;
        if (verify_seed_opt->count() > 0)
            options.seed = verify_seed;
        else if (const auto env = cli::seed_from_env())
            options.seed = *env;
        return verify::run_and_print(options, std::cout);
    } catch (const ScenarioParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
