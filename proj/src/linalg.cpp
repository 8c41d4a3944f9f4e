#include "heraldshape/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace herald::linalg {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    out = Eigen::kroneckerProduct(a, b);
    return out;
}

Vec kron(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

Mat partial_trace(const Mat& rho, Index dim_a, Index dim_b, Arm keep) {
    if (dim_a < 1 || dim_b < 1 || rho.rows() != dim_a * dim_b ||
        rho.cols() != dim_a * dim_b)
        throw std::invalid_argument("partial_trace: shape mismatch");

    if (keep == Arm::signal) {
        Mat out = Mat::Zero(dim_a, dim_a);
        for (Index a = 0; a < dim_a; ++a)
            for (Index ap = 0; ap < dim_a; ++ap)
                for (Index b = 0; b < dim_b; ++b)
                    out(a, ap) += rho(a * dim_b + b, ap * dim_b + b);
        return out;
    }
    Mat out = Mat::Zero(dim_b, dim_b);
    for (Index b = 0; b < dim_b; ++b)
        for (Index bp = 0; bp < dim_b; ++bp)
            for (Index a = 0; a < dim_a; ++a)
                out(b, bp) += rho(a * dim_b + b, a * dim_b + bp);
    return out;
}

Mat dft_matrix(Index n) {
    if (n < 1) throw std::invalid_argument("dft_matrix: empty space");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Mat f(n, n);
    for (Index k = 0; k < n; ++k) {
        for (Index c = 0; c < n; ++c) {
            // exponent reduced mod n so large k*f stay exact
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>((k * c) % n) /
                static_cast<double>(n);
            f(k, c) = scale * Cx{std::cos(angle), std::sin(angle)};
        }
    }
    return f;
}

Mat projector(const Vec& v) { return v * v.adjoint(); }

double purity_of(const Mat& rho) { return rho.cwiseAbs2().sum(); }

double max_abs_diff(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const Mat& a, const Mat& b, double tolerance) {
    return max_abs_diff(a, b) <= tolerance;
}

bool is_normalized(const Vec& v, double tolerance) {
    return std::abs(v.squaredNorm() - 1.0) <= tolerance;
}

bool is_unitary(const Mat& u, double tolerance) {
    if (u.rows() != u.cols()) return false;
    Mat gram = u.adjoint() * u;
    return max_abs_diff(gram, Mat::Identity(u.rows(), u.cols())) <= tolerance;
}

bool is_density(const Mat& rho) {
    if (rho.rows() != rho.cols()) return false;
    if (max_abs_diff(rho, rho.adjoint()) > tol::eq) return false;
    if (std::abs(rho.trace().real() - 1.0) > tol::structure) return false;
    if (std::abs(rho.trace().imag()) > tol::structure) return false;
    return hermitian_eigenvalues(rho).minCoeff() >= -tol::structure;
}

Eigen::VectorXd hermitian_eigenvalues(const Mat& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(rho, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

}  // namespace herald::linalg
