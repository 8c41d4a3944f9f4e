#pragma once

#include "heraldshape/states.hpp"
#include "heraldshape/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace herald {

// Aggregated figures for one pipeline run. Rates are absolute per source pair.
struct MetricsReport {
    double fidelity = 0.0;                 // of the accepted ensemble vs target
    double purity = 0.0;                   // of the accepted ensemble
    double total_herald_rate = 0.0;        // Σ per_outcome_rates
    std::vector<double> per_outcome_rates; // accepted outcomes only
    // Schmidt entropy of the source; empty when the source is mixed.
    std::optional<double> entanglement_entropy_bits;
};

namespace metrics {

// ⟨φ|ρ|φ⟩ against a pure target, clipped to [0, 1].
double fidelity(const Mat& rho, const Shape& target);

// Tr ρ²
double purity(const Mat& rho);

// Shannon entropy (base 2) of the squared Schmidt spectrum. Pure states only.
double entanglement_entropy(const JointState& state);

// pⁿ evaluated as exp(n ln p); underflows to 0 below ~1e-308.
double multiphoton_success(double p, std::uint64_t n);

// n log10(p): the representation that stays finite out to n = 10⁶ and beyond.
double multiphoton_success_log10(double p, std::uint64_t n);

// Least-squares Hermitian solution of Tr(Π_i ρ) = p_i over a projector frame,
// projected to the PSD trace-1 cone (eigenvalue clipping, then renormalize).
// Throws "frame not informationally complete" when the frame does not span
// the Hermitian operator space.
Mat tomography_reconstruct(const std::vector<Mat>& frame,
                           const std::vector<double>& probabilities);

// Rank-1 projectors |e_j⟩⟨e_j|, |e_j+e_k⟩⟨..|/2, |e_j+i e_k⟩⟨..|/2 for j < k:
// n² projectors spanning the Hermitian operator space.
std::vector<Mat> standard_ic_frame(Index n);

// Exact click probabilities Tr(Π_i ρ) of a frame on a state.
std::vector<double> frame_probabilities(const std::vector<Mat>& frame,
                                        const Mat& rho);

// Σ |eigenvalues| of the Hermitian difference a - b.
double trace_norm_distance(const Mat& a, const Mat& b);

}  // namespace metrics
}  // namespace herald
