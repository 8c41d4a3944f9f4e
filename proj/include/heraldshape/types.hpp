#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace herald {

using Cx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Index = Eigen::Index;

// Centralized numerical tolerances. Everything in the library compares
// against one of these; tests may not invent their own thresholds.
namespace tol {
// elementwise equality of amplitudes / matrix entries
inline constexpr double eq = 1e-12;
// structural flags: unitarity, PSD, purity
inline constexpr double structure = 1e-10;
// probabilities below this are treated as exactly zero outcomes
inline constexpr double prob_floor = 1e-15;
}  // namespace tol

// Subsystem label for bipartite operations. A is the signal arm, B the idler.
enum class Arm { signal, idler };

}  // namespace herald
