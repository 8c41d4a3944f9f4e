#include "heraldshape/protocol.hpp"

#include "heraldshape/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace herald {

Modulator::Modulator(Vec amps) : amps_(std::move(amps)) {
    if (amps_.size() < 1)
        throw std::invalid_argument("Modulator: empty space");
    if (amps_.cwiseAbs().maxCoeff() > 1.0 + tol::eq)
        throw std::invalid_argument(
            "Modulator: amplitude exceeds 1, not a passive filter");
}

LossChannel::LossChannel(double eta) : eta_(eta) {
    if (!(eta > 0.0) || eta > 1.0)
        throw std::invalid_argument("LossChannel: eta must be in (0, 1]");
}

DetectionBasis::DetectionBasis(Mat vectors, BasisKind label)
    : vectors_(std::move(vectors)), label_(label) {
    if (vectors_.rows() != vectors_.cols() || vectors_.rows() < 1)
        throw std::invalid_argument("DetectionBasis: shape mismatch");
    if (!linalg::is_unitary(vectors_))
        throw std::invalid_argument("DetectionBasis: columns not orthonormal");
}

DetectionBasis DetectionBasis::computational(Index n) {
    return DetectionBasis(Mat::Identity(n, n), BasisKind::computational);
}

DetectionBasis DetectionBasis::fourier(Index n) {
    return DetectionBasis(linalg::dft_matrix(n), BasisKind::fourier);
}

DetectionBasis DetectionBasis::custom(Mat vectors) {
    return DetectionBasis(std::move(vectors), BasisKind::custom);
}

namespace protocol {

ModulationResult apply_modulator(const JointState& state, const Modulator& mod,
                                 Arm arm) {
    const Index mod_dim = arm == Arm::idler ? state.dim_b : state.dim_a;
    if (mod.dim() != mod_dim)
        throw std::invalid_argument("apply_modulator: shape mismatch");

    // Kraus amplitude for flat index (a, b): amps_b (idler) or amps_a (signal).
    const Index dim = state.dim_a * state.dim_b;
    Vec diag(dim);
    for (Index a = 0; a < state.dim_a; ++a)
        for (Index b = 0; b < state.dim_b; ++b)
            diag(a * state.dim_b + b) =
                arm == Arm::idler ? mod.amps()(b) : mod.amps()(a);

    Mat filtered = diag.asDiagonal() * state.rho * diag.conjugate().asDiagonal();
    const double pass = filtered.trace().real();
    if (pass <= tol::prob_floor)
        throw std::invalid_argument(
            "apply_modulator: modulator annihilates the state");

    filtered /= pass;
    const bool pure =
        std::abs(linalg::purity_of(filtered) - 1.0) <= tol::structure;
    return ModulationResult{
        JointState{std::move(filtered), state.dim_a, state.dim_b, pure}, pass};
}

Modulator rescale_to_physical(const Shape& shape) {
    const double peak = shape.nu().cwiseAbs().maxCoeff();
    return Modulator(shape.nu() / peak);
}

Modulator compose(const Modulator& first, const Modulator& second) {
    if (first.dim() != second.dim())
        throw std::invalid_argument("compose: shape mismatch");
    return Modulator(first.amps().cwiseProduct(second.amps()));
}

Modulator expand_to_space(const Vec& amps, const ModeSpace& space,
                          std::size_t dof) {
    if (dof >= space.dims.size() || amps.size() != space.dims[dof])
        throw std::invalid_argument("expand_to_space: shape mismatch");
    Vec full = Vec::Ones(1);
    for (std::size_t i = 0; i < space.dims.size(); ++i) {
        const Vec factor =
            i == dof ? amps : Vec(Vec::Ones(space.dims[i]));
        full = linalg::kron(full, factor);
    }
    return Modulator(full);
}

LossResult apply_loss(const JointState& state, const LossChannel& loss,
                      Arm /*arm*/) {
    return LossResult{state, loss.eta()};
}

std::vector<HeraldOutcome> measure_idler(const JointState& state,
                                         const DetectionBasis& basis,
                                         double pass_probability) {
    if (basis.dim() != state.dim_b)
        throw std::invalid_argument("measure_idler: shape mismatch");
    if (pass_probability < 0.0 || pass_probability > 1.0 + tol::eq)
        throw std::invalid_argument("measure_idler: invalid pass probability");

    std::vector<HeraldOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(basis.dim()) + 1);

    for (Index f = 0; f < basis.dim(); ++f) {
        const Vec b = basis.ket(f);
        // conditional(a, a') = Σ_{i,i'} b_i* ρ[(a,i),(a',i')] b_i'
        Mat conditional(state.dim_a, state.dim_a);
        for (Index a = 0; a < state.dim_a; ++a)
            for (Index ap = 0; ap < state.dim_a; ++ap)
                conditional(a, ap) =
                    (b.adjoint() *
                     state.rho.block(a * state.dim_b, ap * state.dim_b,
                                     state.dim_b, state.dim_b) *
                     b)(0, 0);

        const double p = conditional.trace().real();
        HeraldOutcome out;
        out.outcome = f;
        out.basis = basis.label();
        if (p <= tol::prob_floor) {
            out.probability = 0.0;  // flagged null: a blocked mode
            out.signal_state = Mat::Zero(state.dim_a, state.dim_a);
        } else {
            out.probability = p * pass_probability;
            out.signal_state = conditional / p;
        }
        outcomes.push_back(std::move(out));
    }

    HeraldOutcome no_click;
    no_click.outcome = -1;
    no_click.probability = 1.0 - pass_probability;
    no_click.signal_state = Mat::Zero(state.dim_a, state.dim_a);
    no_click.discarded = true;
    no_click.basis = basis.label();
    outcomes.push_back(std::move(no_click));

    return outcomes;
}

HeraldOutcome phase_correct(const HeraldOutcome& outcome, Index n) {
    if (outcome.basis != BasisKind::fourier)
        throw std::invalid_argument(
            "phase_correct: phase correction defined only for Fourier outcomes");
    if (outcome.discarded || !outcome.has_state()) return outcome;
    if (outcome.signal_state.rows() != n)
        throw std::invalid_argument("phase_correct: shape mismatch");
    if (outcome.outcome < 0 || outcome.outcome >= n)
        throw std::out_of_range("phase_correct: outcome index out of range");

    Vec diag(n);
    for (Index k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi *
                             static_cast<double>((k * outcome.outcome) % n) /
                             static_cast<double>(n);
        diag(k) = Cx{std::cos(angle), std::sin(angle)};
    }

    HeraldOutcome corrected = outcome;
    corrected.signal_state =
        diag.asDiagonal() * outcome.signal_state * diag.conjugate().asDiagonal();
    return corrected;
}

Mat bucket_detect(const JointState& state) {
    return linalg::partial_trace(state.rho, state.dim_a, state.dim_b,
                                 Arm::signal);
}

DetectionBasis eraser_basis(const ModeSpace& space) {
    if (space.dims.empty())
        throw std::invalid_argument("eraser_basis: empty space");
    for (Index d : space.dims)
        if (d < 2)
            throw std::invalid_argument("eraser_basis: each dim must be >= 2");

    if (space.dims.size() == 1)
        return DetectionBasis::fourier(space.dims[0]);

    Mat vectors = linalg::dft_matrix(space.dims[0]);
    for (std::size_t i = 1; i < space.dims.size(); ++i)
        vectors = linalg::kron(vectors, linalg::dft_matrix(space.dims[i]));
    return DetectionBasis::custom(std::move(vectors));
}

bool is_unbiased(const DetectionBasis& b1, const DetectionBasis& b2) {
    if (b1.dim() != b2.dim())
        throw std::invalid_argument("is_unbiased: shape mismatch");
    const double target = 1.0 / static_cast<double>(b1.dim());
    const Mat overlaps = b1.vectors().adjoint() * b2.vectors();
    return (overlaps.cwiseAbs2().array() - target).abs().maxCoeff() <=
           tol::structure;
}

}  // namespace protocol
}  // namespace herald
