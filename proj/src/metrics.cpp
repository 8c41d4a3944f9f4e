#include "heraldshape/metrics.hpp"

#include "heraldshape/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace herald::metrics {

double fidelity(const Mat& rho, const Shape& target) {
    if (rho.rows() != target.dim() || rho.cols() != target.dim())
        throw std::invalid_argument("fidelity: shape mismatch");
    const Vec phi = target.normalized().nu();
    const Cx value = (phi.adjoint() * rho * phi)(0, 0);
    return std::clamp(value.real(), 0.0, 1.0);
}

double purity(const Mat& rho) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument("purity: shape mismatch");
    return linalg::purity_of(rho);
}

double entanglement_entropy(const JointState& state) {
    double bits = 0.0;
    for (const auto& term : states::schmidt_decompose(state)) {
        const double weight = term.coefficient * term.coefficient;
        if (weight > 0.0) bits -= weight * std::log2(weight);
    }
    return std::max(bits, 0.0);
}

double multiphoton_success(double p, std::uint64_t n) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("multiphoton_success: p must be in [0, 1]");
    if (n == 0) return 1.0;
    if (p == 0.0) return 0.0;
    return std::exp(static_cast<double>(n) * std::log(p));
}

double multiphoton_success_log10(double p, std::uint64_t n) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("multiphoton_success: p must be in [0, 1]");
    if (n == 0) return 0.0;
    return static_cast<double>(n) * std::log10(p);
}

namespace {

// Orthonormal Hermitian operator basis: E_jj, (E_jk+E_kj)/√2, i(E_jk-E_kj)/√2.
std::vector<Mat> hermitian_basis(Index n) {
    std::vector<Mat> basis;
    basis.reserve(static_cast<std::size_t>(n * n));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Index j = 0; j < n; ++j) {
        Mat e = Mat::Zero(n, n);
        e(j, j) = 1.0;
        basis.push_back(std::move(e));
    }
    for (Index j = 0; j < n; ++j) {
        for (Index k = j + 1; k < n; ++k) {
            Mat real_part = Mat::Zero(n, n);
            real_part(j, k) = inv_sqrt2;
            real_part(k, j) = inv_sqrt2;
            basis.push_back(std::move(real_part));

            Mat imag_part = Mat::Zero(n, n);
            imag_part(j, k) = Cx{0.0, -inv_sqrt2};
            imag_part(k, j) = Cx{0.0, inv_sqrt2};
            basis.push_back(std::move(imag_part));
        }
    }
    return basis;
}

}  // namespace

Mat tomography_reconstruct(const std::vector<Mat>& frame,
                           const std::vector<double>& probabilities) {
    if (frame.empty() || frame.size() != probabilities.size())
        throw std::invalid_argument("tomography_reconstruct: shape mismatch");
    const Index n = frame.front().rows();
    for (const Mat& proj : frame)
        if (proj.rows() != n || proj.cols() != n)
            throw std::invalid_argument("tomography_reconstruct: shape mismatch");

    // Tr(Π_i ρ) = Σ_a Tr(Π_i B_a) θ_a with ρ = Σ_a θ_a B_a, θ real.
    const auto basis = hermitian_basis(n);
    const Index params = static_cast<Index>(basis.size());
    Eigen::MatrixXd design(static_cast<Index>(frame.size()), params);
    for (std::size_t i = 0; i < frame.size(); ++i)
        for (Index a = 0; a < params; ++a)
            design(static_cast<Index>(i), a) =
                (frame[i] * basis[static_cast<std::size_t>(a)]).trace().real();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    if (svd.rank() < params)
        throw std::invalid_argument(
            "tomography_reconstruct: frame not informationally complete");

    Eigen::VectorXd rhs(static_cast<Index>(probabilities.size()));
    for (std::size_t i = 0; i < probabilities.size(); ++i)
        rhs(static_cast<Index>(i)) = probabilities[i];
    const Eigen::VectorXd theta = svd.solve(rhs);

    Mat estimate = Mat::Zero(n, n);
    for (Index a = 0; a < params; ++a)
        estimate += theta(a) * basis[static_cast<std::size_t>(a)];

    // PSD projection: clip negative eigenvalues, renormalize the trace.
    Eigen::SelfAdjointEigenSolver<Mat> solver(estimate);
    Eigen::VectorXd clipped = solver.eigenvalues().cwiseMax(0.0);
    const double total = clipped.sum();
    if (total <= tol::prob_floor)
        throw std::invalid_argument(
            "tomography_reconstruct: reconstruction collapsed to zero");
    clipped /= total;

    return solver.eigenvectors() * clipped.asDiagonal() *
           solver.eigenvectors().adjoint();
}

std::vector<Mat> standard_ic_frame(Index n) {
    if (n < 1) throw std::invalid_argument("standard_ic_frame: empty space");
    std::vector<Mat> frame;
    frame.reserve(static_cast<std::size_t>(n * n));
    for (Index j = 0; j < n; ++j) {
        Vec e = Vec::Zero(n);
        e(j) = 1.0;
        frame.push_back(linalg::projector(e));
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Index j = 0; j < n; ++j) {
        for (Index k = j + 1; k < n; ++k) {
            Vec plus = Vec::Zero(n);
            plus(j) = inv_sqrt2;
            plus(k) = inv_sqrt2;
            frame.push_back(linalg::projector(plus));

            Vec plus_i = Vec::Zero(n);
            plus_i(j) = inv_sqrt2;
            plus_i(k) = Cx{0.0, inv_sqrt2};
            frame.push_back(linalg::projector(plus_i));
        }
    }
    return frame;
}

std::vector<double> frame_probabilities(const std::vector<Mat>& frame,
                                        const Mat& rho) {
    std::vector<double> probabilities;
    probabilities.reserve(frame.size());
    for (const Mat& proj : frame) {
        if (proj.rows() != rho.rows() || proj.cols() != rho.cols())
            throw std::invalid_argument("frame_probabilities: shape mismatch");
        probabilities.push_back((proj * rho).trace().real());
    }
    return probabilities;
}

double trace_norm_distance(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("trace_norm_distance: shape mismatch");
    return linalg::hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

}  // namespace herald::metrics
