#pragma once

#include "heraldshape/protocol.hpp"
#include "heraldshape/states.hpp"
#include "heraldshape/types.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace herald {

// Raised for malformed scenario files (syntax, schema, unknown fields).
// Distinct from std::invalid_argument, which signals a physically invalid
// but well-formed scenario.
class ScenarioParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class SourceKind {
    max_entangled,
    werner,
    shaped,
    generalized_bell,
    hyperentangled
};

enum class DetectorBasis { fourier, computational, custom };

enum class AcceptPolicy { f0_only, phase_corrected_all };

struct SourceSpec {
    SourceKind kind = SourceKind::max_entangled;
    double p = 1.0;        // werner only
    Index m = 0;           // generalized_bell only
    Index phase_index = 0; // generalized_bell only

    bool operator==(const SourceSpec&) const = default;
};

struct DetectorSpec {
    DetectorBasis basis = DetectorBasis::fourier;
    std::optional<Mat> custom_unitary;        // custom only
    AcceptPolicy accept_policy = AcceptPolicy::f0_only;

    bool operator==(const DetectorSpec& other) const;
};

struct MonteCarloSpec {
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;

    bool operator==(const MonteCarloSpec&) const = default;
};

// Declarative description of one pipeline run: source, modulation, loss,
// detection, and optional click sampling.
struct Scenario {
    std::vector<Index> dims;  // per-DOF mode counts
    Vec target_shape;         // flattened ν, length Π dims
    SourceSpec source;
    bool modulator_enabled = true;
    double loss_eta = 1.0;
    DetectorSpec detector;
    std::optional<MonteCarloSpec> montecarlo;
    // cosmetic per-DOF mode names echoed into reports
    std::optional<std::vector<std::vector<std::string>>> mode_labels;

    ModeSpace mode_space() const { return ModeSpace{dims}; }
    Index total_dim() const { return mode_space().total_dim(); }
    Shape target() const { return Shape(target_shape); }

    bool operator==(const Scenario& other) const;
};

// Strict parsing: unknown or ill-typed fields raise ScenarioParseError naming
// the offending field. Value-domain violations surface later, at construction.
Scenario scenario_from_json_text(const std::string& text);
Scenario scenario_from_file(const std::string& path);
std::string scenario_to_json_text(const Scenario& scenario, int indent = 2);

// Human-readable labels for the flattened modes ("left,V"), cosmetic only.
std::vector<std::string> flat_mode_labels(const Scenario& scenario);

// ---------------------------------------------------------------------------
// Exact pipeline evaluation
// ---------------------------------------------------------------------------

struct ExactSolution {
    JointState source;                    // before modulation
    std::optional<Modulator> modulator;
    DetectionBasis basis;
    double pass_probability = 1.0;        // modulator pass × loss transmission
    // one row per detector outcome (absolute probability) plus the aggregated
    // no-click row; probabilities sum to 1
    std::vector<HeraldOutcome> outcomes;
};

// Build every stage from the scenario and evaluate the exact outcome
// distribution. Throws std::invalid_argument for physically invalid settings.
ExactSolution solve_scenario(const Scenario& scenario);

// The policy-filtered view: the outcomes that count as successful heralds,
// phase-corrected when the policy says so. Excludes the no-click row and
// flagged-null rows.
std::vector<HeraldOutcome> accepted_outcomes(const ExactSolution& solution,
                                             const Scenario& scenario);

}  // namespace herald
