#include "heraldshape/linalg.hpp"
#include "heraldshape/metrics.hpp"
#include "heraldshape/montecarlo.hpp"
#include "heraldshape/protocol.hpp"
#include "heraldshape/report.hpp"
#include "heraldshape/scenario.hpp"
#include "heraldshape/states.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace py = pybind11;
using namespace herald;

namespace {

Arm arm_from(const std::string& name) {
    if (name == "signal") return Arm::signal;
    if (name == "idler") return Arm::idler;
    throw std::invalid_argument("arm: expected 'signal' or 'idler'");
}

DetectionBasis basis_from(const py::object& spec, Index n) {
    if (py::isinstance<py::str>(spec)) {
        const auto kind = spec.cast<std::string>();
        if (kind == "fourier") return DetectionBasis::fourier(n);
        if (kind == "computational") return DetectionBasis::computational(n);
        throw std::invalid_argument(
            "basis: expected 'fourier', 'computational' or a unitary matrix");
    }
    return DetectionBasis::custom(spec.cast<Mat>());
}

cli::RunOptions options_from(const std::optional<std::uint64_t>& trials,
                             const std::optional<std::uint64_t>& seed,
                             double tolerance) {
    cli::RunOptions options;
    options.trials = trials;
    options.seed = seed;
    options.tolerance = tolerance;
    return options;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact simulator for heralded single-photon shaping";

    py::register_exception<ScenarioParseError>(m, "ScenarioParseError");

    py::class_<JointState>(m, "JointState")
        .def_readonly("rho", &JointState::rho)
        .def_readonly("dim_a", &JointState::dim_a)
        .def_readonly("dim_b", &JointState::dim_b)
        .def_readonly("pure", &JointState::pure);

    py::class_<HeraldOutcome>(m, "HeraldOutcome")
        .def_readonly("outcome", &HeraldOutcome::outcome)
        .def_readonly("probability", &HeraldOutcome::probability)
        .def_readonly("signal_state", &HeraldOutcome::signal_state)
        .def_readonly("discarded", &HeraldOutcome::discarded)
        .def("has_state", &HeraldOutcome::has_state);

    py::class_<states::SchmidtTerm>(m, "SchmidtTerm")
        .def_readonly("coefficient", &states::SchmidtTerm::coefficient)
        .def_readonly("vec_a", &states::SchmidtTerm::vec_a)
        .def_readonly("vec_b", &states::SchmidtTerm::vec_b);

    py::class_<ClickStats>(m, "ClickStats")
        .def_readonly("trials", &ClickStats::trials)
        .def_readonly("clicks_per_outcome", &ClickStats::clicks_per_outcome)
        .def_readonly("discards", &ClickStats::discards)
        .def_readonly("empirical_rate", &ClickStats::empirical_rate)
        .def_readonly("rate_std_error", &ClickStats::rate_std_error)
        .def_readonly("seed", &ClickStats::seed)
        .def("__eq__", [](const ClickStats& a, const ClickStats& b) { return a == b; });

    // linalg
    m.def("kron", [](const Mat& a, const Mat& b) { return linalg::kron(a, b); },
          py::arg("a"), py::arg("b"));
    m.def("partial_trace",
          [](const Mat& rho, Index dim_a, Index dim_b, const std::string& keep) {
              return linalg::partial_trace(rho, dim_a, dim_b, arm_from(keep));
          },
          py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("keep") = "signal");
    m.def("dft_matrix", &linalg::dft_matrix, py::arg("n"));

    // sources
    m.def("correlated_pair", &states::correlated_pair, py::arg("n"), py::arg("p") = 1.0);
    m.def("generalized_bell", &states::generalized_bell, py::arg("n"), py::arg("m") = 0,
          py::arg("shift_phase") = 0);
    m.def("shaped_entangled",
          [](const Vec& nu) { return states::shaped_entangled(Shape(nu)); },
          py::arg("nu"));
    m.def("hyperentangled", &states::hyperentangled, py::arg("n1"), py::arg("n2"));
    m.def("state_vector", &states::state_vector, py::arg("state"));
    m.def("schmidt_decompose", &states::schmidt_decompose, py::arg("state"));

    // protocol
    m.def("rescale_to_physical",
          [](const Vec& nu) { return protocol::rescale_to_physical(Shape(nu)).amps(); },
          py::arg("nu"));
    m.def("apply_modulator",
          [](const JointState& state, const Vec& amps, const std::string& arm) {
              return protocol::apply_modulator(state, Modulator(amps), arm_from(arm));
          },
          py::arg("state"), py::arg("amps"), py::arg("arm") = "idler");
    m.def("apply_loss",
          [](const JointState& state, double eta, const std::string& arm) {
              return protocol::apply_loss(state, LossChannel(eta), arm_from(arm));
          },
          py::arg("state"), py::arg("eta"), py::arg("arm") = "idler");
    m.def("measure_idler",
          [](const JointState& state, const py::object& basis, double pass_probability) {
              return protocol::measure_idler(state, basis_from(basis, state.dim_b),
                                             pass_probability);
          },
          py::arg("state"), py::arg("basis") = "fourier", py::arg("pass_probability") = 1.0);
    m.def("phase_correct", &protocol::phase_correct, py::arg("outcome"), py::arg("n"));
    m.def("bucket_detect", &protocol::bucket_detect, py::arg("state"));
    m.def("eraser_basis",
          [](const std::vector<Index>& dims) {
              return protocol::eraser_basis(ModeSpace{dims}).vectors();
          },
          py::arg("dims"));
    m.def("is_unbiased",
          [](const Mat& u1, const Mat& u2) {
              return protocol::is_unbiased(DetectionBasis::custom(u1),
                                           DetectionBasis::custom(u2));
          },
          py::arg("u1"), py::arg("u2"));

    py::class_<protocol::ModulationResult>(m, "ModulationResult")
        .def_readonly("state", &protocol::ModulationResult::state)
        .def_readonly("pass_probability", &protocol::ModulationResult::pass_probability);
    py::class_<protocol::LossResult>(m, "LossResult")
        .def_readonly("state", &protocol::LossResult::state)
        .def_readonly("survive_probability", &protocol::LossResult::survive_probability);

    // metrics
    m.def("fidelity",
          [](const Mat& rho, const Vec& target) {
              return metrics::fidelity(rho, Shape(target));
          },
          py::arg("rho"), py::arg("target"));
    m.def("purity", &metrics::purity, py::arg("rho"));
    m.def("entanglement_entropy", &metrics::entanglement_entropy, py::arg("state"));
    m.def("multiphoton_success", &metrics::multiphoton_success, py::arg("p"), py::arg("n"));
    m.def("multiphoton_success_log10", &metrics::multiphoton_success_log10, py::arg("p"),
          py::arg("n"));
    m.def("standard_ic_frame", &metrics::standard_ic_frame, py::arg("n"));
    m.def("frame_probabilities", &metrics::frame_probabilities, py::arg("frame"),
          py::arg("rho"));
    m.def("tomography_reconstruct", &metrics::tomography_reconstruct, py::arg("frame"),
          py::arg("probabilities"));
    m.def("trace_norm_distance", &metrics::trace_norm_distance, py::arg("a"), py::arg("b"));

    // scenario plumbing
    m.def("simulate_clicks",
          [](const std::string& scenario_json, std::uint64_t trials, std::uint64_t seed) {
              return mc::simulate_clicks(scenario_from_json_text(scenario_json), trials,
                                         seed);
          },
          py::arg("scenario_json"), py::arg("trials"), py::arg("seed") = default_seed);
    m.def("run_scenario_json",
          [](const std::string& scenario_json, const std::optional<std::uint64_t>& trials,
             const std::optional<std::uint64_t>& seed, double tolerance) {
              return cli::run_json_text(scenario_json,
                                        options_from(trials, seed, tolerance));
          },
          py::arg("scenario_json"), py::arg("trials") = py::none(),
          py::arg("seed") = py::none(), py::arg("tolerance") = tol::eq);

    m.attr("default_seed") = default_seed;
}
