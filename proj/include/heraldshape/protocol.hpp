#pragma once

#include "heraldshape/states.hpp"
#include "heraldshape/types.hpp"

#include <vector>

namespace herald {

// Diagonal attenuation on one arm, |k⟩ -> amps_k |k⟩ with |amps_k| ≤ 1.
class Modulator {
  public:
    explicit Modulator(Vec amps);

    const Vec& amps() const { return amps_; }
    Index dim() const { return amps_.size(); }

  private:
    Vec amps_;
};

// Uniform single-photon transmission, 0 < eta ≤ 1.
class LossChannel {
  public:
    explicit LossChannel(double eta);

    double eta() const { return eta_; }

  private:
    double eta_;
};

enum class BasisKind { computational, fourier, custom };

// Orthonormal measurement kets as matrix columns.
class DetectionBasis {
  public:
    DetectionBasis(Mat vectors, BasisKind label);

    static DetectionBasis computational(Index n);
    static DetectionBasis fourier(Index n);
    static DetectionBasis custom(Mat vectors);

    const Mat& vectors() const { return vectors_; }
    Vec ket(Index f) const { return vectors_.col(f); }
    Index dim() const { return vectors_.rows(); }
    BasisKind label() const { return label_; }

  private:
    Mat vectors_;
    BasisKind label_;
};

// One detector outcome with its absolute probability and the conditional
// (normalized) signal state. The aggregated no-click pool is reported as a
// final entry with discarded = true and outcome = -1; probabilities over a
// full outcome list sum to 1.
struct HeraldOutcome {
    Index outcome = 0;        // basis index f, or -1 for the no-click pool
    double probability = 0.0; // absolute, including upstream pass probability
    Mat signal_state;         // zero matrix when the outcome never occurs
    bool discarded = false;
    BasisKind basis = BasisKind::computational;  // measurement provenance

    // false for the discard pool and for flagged-null (p ≤ prob_floor) rows
    bool has_state() const { return !discarded && probability > tol::prob_floor; }
};

namespace protocol {

struct ModulationResult {
    JointState state;        // renormalized post-filter state
    double pass_probability; // Tr[(I ⊗ K†K) ρ]
};

struct LossResult {
    JointState state;          // unchanged: uniform loss commutes with everything
    double survive_probability;
};

// (I⊗K) ρ (I⊗K)† / p on the chosen arm. The absorbed component joins the
// no-click pool. Throws "modulator annihilates the state" when p ≤ prob_floor.
ModulationResult apply_modulator(const JointState& state, const Modulator& mod,
                                 Arm arm = Arm::idler);

// amps = ν / max|ν_k|: the physical filter with the same ratios and phases.
Modulator rescale_to_physical(const Shape& shape);

// Entrywise product of two diagonal filters on the same (flattened) space.
Modulator compose(const Modulator& first, const Modulator& second);

// Filter acting on one DOF of a composite space, identity on the others.
Modulator expand_to_space(const Vec& amps, const ModeSpace& space,
                          std::size_t dof);

// Post-selected single-photon loss: state unchanged, survive probability eta.
LossResult apply_loss(const JointState& state, const LossChannel& loss,
                      Arm arm = Arm::idler);

// Projective measurement of the idler arm. Returns one entry per basis ket
// (relative probabilities scaled by pass_probability) plus the aggregated
// no-click entry carrying 1 - pass_probability.
std::vector<HeraldOutcome> measure_idler(const JointState& state,
                                         const DetectionBasis& basis,
                                         double pass_probability = 1.0);

// Undo the outcome-dependent phase profile of a Fourier click:
// ρ -> U_f ρ U_f† with U_f = Σ_k e^{+i 2π k f / n} |k⟩⟨k|.
// Defined only for Fourier-basis provenance.
HeraldOutcome phase_correct(const HeraldOutcome& outcome, Index n);

// Mode-insensitive detection: trace out the idler.
Mat bucket_detect(const JointState& state);

// Tensor product of per-DOF Fourier bases; dims [n] reduces to dft_matrix(n).
DetectionBasis eraser_basis(const ModeSpace& space);

// ||⟨u_i|v_j⟩|² - 1/n| ≤ tol::structure for all i, j.
bool is_unbiased(const DetectionBasis& b1, const DetectionBasis& b2);

}  // namespace protocol
}  // namespace herald
