#include "heraldshape/scenario.hpp"

#include "heraldshape/linalg.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace herald {

using nlohmann::json;

bool DetectorSpec::operator==(const DetectorSpec& other) const {
    if (basis != other.basis || accept_policy != other.accept_policy)
        return false;
    if (custom_unitary.has_value() != other.custom_unitary.has_value())
        return false;
    if (!custom_unitary) return true;
    return custom_unitary->rows() == other.custom_unitary->rows() &&
           custom_unitary->cols() == other.custom_unitary->cols() &&
           *custom_unitary == *other.custom_unitary;
}

bool Scenario::operator==(const Scenario& other) const {
    return dims == other.dims && target_shape.size() == other.target_shape.size() &&
           target_shape == other.target_shape && source == other.source &&
           modulator_enabled == other.modulator_enabled &&
           loss_eta == other.loss_eta && detector == other.detector &&
           montecarlo == other.montecarlo && mode_labels == other.mode_labels;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ScenarioParseError("scenario field '" + field + "': " + what);
}

void reject_unknown_keys(const json& object, const std::string& prefix,
                         const std::set<std::string>& allowed) {
    for (const auto& item : object.items()) {
        if (!allowed.count(item.key()))
            throw ScenarioParseError("scenario: unknown field '" + prefix +
                                     item.key() + "'");
    }
}

const json& require(const json& object, const std::string& prefix,
                    const std::string& key) {
    auto it = object.find(key);
    if (it == object.end()) fail(prefix + key, "missing");
    return *it;
}

double as_number(const json& value, const std::string& field) {
    if (!value.is_number()) fail(field, "expected a number");
    return value.get<double>();
}

std::int64_t as_integer(const json& value, const std::string& field) {
    if (!value.is_number_integer()) fail(field, "expected an integer");
    return value.get<std::int64_t>();
}

bool as_bool(const json& value, const std::string& field) {
    if (!value.is_boolean()) fail(field, "expected a boolean");
    return value.get<bool>();
}

std::string as_string(const json& value, const std::string& field) {
    if (!value.is_string()) fail(field, "expected a string");
    return value.get<std::string>();
}

Cx as_complex(const json& value, const std::string& field) {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
        !value[1].is_number())
        fail(field, "expected a [re, im] pair");
    return Cx{value[0].get<double>(), value[1].get<double>()};
}

Vec as_complex_vector(const json& value, const std::string& field) {
    if (!value.is_array() || value.empty()) fail(field, "expected a non-empty array");
    Vec out(static_cast<Index>(value.size()));
    for (std::size_t i = 0; i < value.size(); ++i)
        out(static_cast<Index>(i)) =
            as_complex(value[i], field + "[" + std::to_string(i) + "]");
    return out;
}

Mat as_complex_matrix(const json& value, const std::string& field) {
    if (!value.is_array() || value.empty()) fail(field, "expected a non-empty array");
    const std::size_t rows = value.size();
    std::size_t cols = 0;
    Mat out;
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_field = field + "[" + std::to_string(r) + "]";
        if (!value[r].is_array() || value[r].empty())
            fail(row_field, "expected a non-empty array");
        if (r == 0) {
            cols = value[r].size();
            out.resize(static_cast<Index>(rows), static_cast<Index>(cols));
        } else if (value[r].size() != cols) {
            fail(row_field, "ragged rows");
        }
        for (std::size_t c = 0; c < cols; ++c)
            out(static_cast<Index>(r), static_cast<Index>(c)) = as_complex(
                value[r][c], row_field + "[" + std::to_string(c) + "]");
    }
    return out;
}

json complex_to_json(const Cx& z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const Vec& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

json matrix_to_json(const Mat& m) {
    json out = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

SourceKind source_kind_from_string(const std::string& text) {
    if (text == "max_entangled") return SourceKind::max_entangled;
    if (text == "werner") return SourceKind::werner;
    if (text == "shaped") return SourceKind::shaped;
    if (text == "generalized_bell") return SourceKind::generalized_bell;
    if (text == "hyperentangled") return SourceKind::hyperentangled;
    fail("source.kind", "unknown kind '" + text + "'");
}

std::string to_string(SourceKind kind) {
    switch (kind) {
        case SourceKind::max_entangled: return "max_entangled";
        case SourceKind::werner: return "werner";
        case SourceKind::shaped: return "shaped";
        case SourceKind::generalized_bell: return "generalized_bell";
        case SourceKind::hyperentangled: return "hyperentangled";
    }
    return "max_entangled";
}

SourceSpec parse_source(const json& value) {
    if (!value.is_object()) fail("source", "expected an object");
    SourceSpec spec;
    spec.kind = source_kind_from_string(
        as_string(require(value, "source.", "kind"), "source.kind"));

    std::set<std::string> allowed{"kind"};
    if (spec.kind == SourceKind::werner) {
        allowed.insert("p");
        spec.p = as_number(require(value, "source.", "p"), "source.p");
    }
    if (spec.kind == SourceKind::generalized_bell) {
        allowed.insert("m");
        allowed.insert("phase_index");
        spec.m = as_integer(require(value, "source.", "m"), "source.m");
        spec.phase_index = as_integer(require(value, "source.", "phase_index"),
                                      "source.phase_index");
    }
    reject_unknown_keys(value, "source.", allowed);
    return spec;
}

DetectorSpec parse_detector(const json& value) {
    if (!value.is_object()) fail("detector", "expected an object");
    DetectorSpec spec;
    std::set<std::string> allowed{"basis", "accept_policy"};

    const std::string basis =
        as_string(require(value, "detector.", "basis"), "detector.basis");
    if (basis == "fourier") spec.basis = DetectorBasis::fourier;
    else if (basis == "computational") spec.basis = DetectorBasis::computational;
    else if (basis == "custom") spec.basis = DetectorBasis::custom;
    else fail("detector.basis", "unknown basis '" + basis + "'");

    if (spec.basis == DetectorBasis::custom) {
        allowed.insert("custom_unitary");
        spec.custom_unitary = as_complex_matrix(
            require(value, "detector.", "custom_unitary"),
            "detector.custom_unitary");
    }

    if (value.contains("accept_policy")) {
        const std::string policy =
            as_string(value["accept_policy"], "detector.accept_policy");
        if (policy == "f0_only") spec.accept_policy = AcceptPolicy::f0_only;
        else if (policy == "phase_corrected_all")
            spec.accept_policy = AcceptPolicy::phase_corrected_all;
        else fail("detector.accept_policy", "unknown policy '" + policy + "'");
    }

    reject_unknown_keys(value, "detector.", allowed);
    return spec;
}

MonteCarloSpec parse_montecarlo(const json& value) {
    if (!value.is_object()) fail("montecarlo", "expected an object");
    MonteCarloSpec spec;
    const std::int64_t trials =
        as_integer(require(value, "montecarlo.", "trials"), "montecarlo.trials");
    if (trials < 1) fail("montecarlo.trials", "must be >= 1");
    spec.trials = static_cast<std::uint64_t>(trials);
    if (value.contains("seed")) {
        const std::int64_t seed =
            as_integer(value["seed"], "montecarlo.seed");
        if (seed < 0) fail("montecarlo.seed", "must be >= 0");
        spec.seed = static_cast<std::uint64_t>(seed);
    }
    reject_unknown_keys(value, "montecarlo.", {"trials", "seed"});
    return spec;
}

std::vector<std::vector<std::string>> parse_mode_labels(
    const json& value, const std::vector<Index>& dims) {
    if (!value.is_array() || value.size() != dims.size())
        fail("mode_labels", "expected one label list per degree of freedom");
    std::vector<std::vector<std::string>> labels(value.size());
    for (std::size_t d = 0; d < value.size(); ++d) {
        const std::string field = "mode_labels[" + std::to_string(d) + "]";
        if (!value[d].is_array() ||
            value[d].size() != static_cast<std::size_t>(dims[d]))
            fail(field, "expected one label per mode");
        for (const auto& entry : value[d])
            labels[d].push_back(as_string(entry, field));
    }
    return labels;
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ScenarioParseError(std::string("scenario: ") + err.what());
    }
    if (!root.is_object())
        throw ScenarioParseError("scenario: expected a JSON object");

    reject_unknown_keys(root, "",
                        {"dims", "target_shape", "source", "modulator_enabled",
                         "loss_eta", "detector", "montecarlo", "mode_labels"});

    Scenario scenario;

    const json& dims = require(root, "", "dims");
    if (!dims.is_array() || dims.empty()) fail("dims", "expected a non-empty array");
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const std::int64_t d =
            as_integer(dims[i], "dims[" + std::to_string(i) + "]");
        if (d < 1) fail("dims[" + std::to_string(i) + "]", "must be >= 1");
        scenario.dims.push_back(static_cast<Index>(d));
    }

    scenario.target_shape =
        as_complex_vector(require(root, "", "target_shape"), "target_shape");
    if (scenario.target_shape.size() != scenario.total_dim())
        fail("target_shape", "length must equal the product of dims");

    scenario.source = parse_source(require(root, "", "source"));

    if (root.contains("modulator_enabled"))
        scenario.modulator_enabled =
            as_bool(root["modulator_enabled"], "modulator_enabled");
    if (root.contains("loss_eta"))
        scenario.loss_eta = as_number(root["loss_eta"], "loss_eta");
    if (root.contains("detector"))
        scenario.detector = parse_detector(root["detector"]);
    if (scenario.detector.basis == DetectorBasis::custom) {
        const Mat& u = *scenario.detector.custom_unitary;
        if (u.rows() != scenario.total_dim() || u.cols() != scenario.total_dim())
            fail("detector.custom_unitary",
                 "must be a square matrix of the total mode dimension");
        if (!linalg::is_unitary(u))
            throw std::invalid_argument(
                "scenario: detector.custom_unitary columns are not orthonormal");
    }
    if (root.contains("montecarlo"))
        scenario.montecarlo = parse_montecarlo(root["montecarlo"]);
    if (root.contains("mode_labels"))
        scenario.mode_labels = parse_mode_labels(root["mode_labels"], scenario.dims);

    return scenario;
}

Scenario scenario_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioParseError("scenario: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return scenario_from_json_text(buffer.str());
}

std::string scenario_to_json_text(const Scenario& scenario, int indent) {
    json root;
    root["dims"] = scenario.dims;
    root["target_shape"] = vector_to_json(scenario.target_shape);

    json source;
    source["kind"] = to_string(scenario.source.kind);
    if (scenario.source.kind == SourceKind::werner) source["p"] = scenario.source.p;
    if (scenario.source.kind == SourceKind::generalized_bell) {
        source["m"] = scenario.source.m;
        source["phase_index"] = scenario.source.phase_index;
    }
    root["source"] = std::move(source);

    root["modulator_enabled"] = scenario.modulator_enabled;
    root["loss_eta"] = scenario.loss_eta;

    json detector;
    switch (scenario.detector.basis) {
        case DetectorBasis::fourier: detector["basis"] = "fourier"; break;
        case DetectorBasis::computational:
            detector["basis"] = "computational";
            break;
        case DetectorBasis::custom:
            detector["basis"] = "custom";
            detector["custom_unitary"] =
                matrix_to_json(*scenario.detector.custom_unitary);
            break;
    }
    detector["accept_policy"] =
        scenario.detector.accept_policy == AcceptPolicy::f0_only
            ? "f0_only"
            : "phase_corrected_all";
    root["detector"] = std::move(detector);

    if (scenario.montecarlo) {
        json mc;
        mc["trials"] = scenario.montecarlo->trials;
        if (scenario.montecarlo->seed) mc["seed"] = *scenario.montecarlo->seed;
        root["montecarlo"] = std::move(mc);
    }
    if (scenario.mode_labels) root["mode_labels"] = *scenario.mode_labels;

    return root.dump(indent);
}

std::vector<std::string> flat_mode_labels(const Scenario& scenario) {
    const ModeSpace space = scenario.mode_space();
    const Index total = space.total_dim();
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(total));
    for (Index flat = 0; flat < total; ++flat) {
        const auto indices = space.unflatten(flat);
        std::string label;
        for (std::size_t d = 0; d < indices.size(); ++d) {
            if (d > 0) label += ",";
            if (scenario.mode_labels)
                label += (*scenario.mode_labels)[d]
                                               [static_cast<std::size_t>(indices[d])];
            else
                label += std::to_string(indices[d]);
        }
        labels.push_back(std::move(label));
    }
    return labels;
}

ExactSolution solve_scenario(const Scenario& scenario) {
    const Index n = scenario.total_dim();
    if (n < 2)
        throw std::invalid_argument("scenario: total dimension must be >= 2");

    JointState source;
    switch (scenario.source.kind) {
        case SourceKind::max_entangled:
            source = states::correlated_pair(n, 1.0);
            break;
        case SourceKind::werner:
            source = states::correlated_pair(n, scenario.source.p);
            break;
        case SourceKind::shaped:
            source = states::shaped_entangled(scenario.target());
            break;
        case SourceKind::generalized_bell:
            source = states::generalized_bell(n, scenario.source.m,
                                              scenario.source.phase_index);
            break;
        case SourceKind::hyperentangled:
            if (scenario.dims.size() != 2)
                throw std::invalid_argument(
                    "scenario: hyperentangled source requires exactly two "
                    "degrees of freedom");
            source = states::hyperentangled(scenario.dims[0], scenario.dims[1]);
            break;
    }

    std::optional<Modulator> modulator;
    JointState state = source;
    double pass = 1.0;
    if (scenario.modulator_enabled) {
        modulator = protocol::rescale_to_physical(scenario.target());
        auto modulated = protocol::apply_modulator(state, *modulator, Arm::idler);
        state = std::move(modulated.state);
        pass *= modulated.pass_probability;
    }

    const LossChannel loss(scenario.loss_eta);
    pass *= protocol::apply_loss(state, loss, Arm::idler).survive_probability;

    DetectionBasis basis = [&] {
        switch (scenario.detector.basis) {
            case DetectorBasis::computational:
                return DetectionBasis::computational(n);
            case DetectorBasis::custom:
                return DetectionBasis::custom(*scenario.detector.custom_unitary);
            case DetectorBasis::fourier:
            default:
                return protocol::eraser_basis(scenario.mode_space());
        }
    }();

    if (scenario.detector.accept_policy == AcceptPolicy::phase_corrected_all &&
        basis.label() != BasisKind::fourier)
        throw std::invalid_argument(
            "scenario: phase correction defined only for Fourier outcomes");

    auto outcomes = protocol::measure_idler(state, basis, pass);
    return ExactSolution{std::move(source), std::move(modulator),
                         std::move(basis), pass, std::move(outcomes)};
}

std::vector<HeraldOutcome> accepted_outcomes(const ExactSolution& solution,
                                             const Scenario& scenario) {
    const Index n = scenario.total_dim();
    std::vector<HeraldOutcome> accepted;
    for (const auto& outcome : solution.outcomes) {
        if (!outcome.has_state()) continue;
        if (scenario.detector.accept_policy == AcceptPolicy::f0_only) {
            if (outcome.outcome == 0) accepted.push_back(outcome);
        } else {
            accepted.push_back(protocol::phase_correct(outcome, n));
        }
    }
    return accepted;
}

}  // namespace herald
