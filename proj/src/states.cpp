#include "heraldshape/states.hpp"

#include "heraldshape/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace herald {

Shape::Shape(Vec nu) : nu_(std::move(nu)) {
    if (nu_.size() < 1 || nu_.cwiseAbs().maxCoeff() == 0.0)
        throw std::invalid_argument("Shape: null shape");
}

bool Shape::is_normalized() const { return linalg::is_normalized(nu_); }

Shape Shape::normalized() const { return Shape(nu_ / nu_.norm()); }

Index ModeSpace::total_dim() const {
    Index total = 1;
    for (Index d : dims) {
        if (d < 1) throw std::invalid_argument("ModeSpace: empty space");
        total *= d;
    }
    return total;
}

Index ModeSpace::flatten(const std::vector<Index>& indices) const {
    if (indices.size() != dims.size())
        throw std::invalid_argument("ModeSpace: shape mismatch");
    Index flat = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (indices[i] < 0 || indices[i] >= dims[i])
            throw std::out_of_range("ModeSpace: index out of range");
        flat = flat * dims[i] + indices[i];
    }
    return flat;
}

std::vector<Index> ModeSpace::unflatten(Index flat) const {
    if (flat < 0 || flat >= total_dim())
        throw std::out_of_range("ModeSpace: index out of range");
    std::vector<Index> indices(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        indices[i] = flat % dims[i];
        flat /= dims[i];
    }
    return indices;
}

JointState joint_from_ket(const Vec& psi, Index dim_a, Index dim_b) {
    if (psi.size() != dim_a * dim_b)
        throw std::invalid_argument("joint_from_ket: shape mismatch");
    const double norm = psi.norm();
    if (norm <= tol::prob_floor)
        throw std::invalid_argument("joint_from_ket: null state");
    Vec normalized = psi / norm;
    return JointState{linalg::projector(normalized), dim_a, dim_b, true};
}

JointState joint_from_density(Mat rho, Index dim_a, Index dim_b) {
    if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
        throw std::invalid_argument("joint_from_density: shape mismatch");
    if (linalg::max_abs_diff(rho, rho.adjoint()) > tol::eq)
        throw std::invalid_argument("joint_from_density: not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol::structure)
        throw std::invalid_argument("joint_from_density: trace is not 1");
    const bool pure = std::abs(linalg::purity_of(rho) - 1.0) <= tol::structure;
    return JointState{std::move(rho), dim_a, dim_b, pure};
}

namespace states {

JointState correlated_pair(Index n, double p) {
    if (n < 2) throw std::invalid_argument("correlated_pair: n must be >= 2");
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("correlated_pair: invalid mixing parameter");

    Vec phi = Vec::Zero(n * n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (Index k = 0; k < n; ++k) phi(k * n + k) = amp;

    Mat rho = p * linalg::projector(phi);
    const double classical_weight = (1.0 - p) / static_cast<double>(n);
    for (Index k = 0; k < n; ++k)
        rho(k * n + k, k * n + k) += classical_weight;

    return JointState{std::move(rho), n, n, p == 1.0};
}

JointState generalized_bell(Index n, Index m, Index shift_phase) {
    if (n < 2) throw std::invalid_argument("generalized_bell: n must be >= 2");
    const Index shift = ((m % n) + n) % n;
    const Index phase = ((shift_phase % n) + n) % n;

    Vec psi = Vec::Zero(n * n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (Index k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi *
                             static_cast<double>((k * phase) % n) /
                             static_cast<double>(n);
        psi(k * n + (k + shift) % n) = amp * Cx{std::cos(angle), std::sin(angle)};
    }
    return JointState{linalg::projector(psi), n, n, true};
}

JointState shaped_entangled(const Shape& shape) {
    const Index n = shape.dim();
    const Vec nu = shape.normalized().nu();
    Vec psi = Vec::Zero(n * n);
    for (Index k = 0; k < n; ++k) psi(k * n + k) = nu(k);
    return JointState{linalg::projector(psi), n, n, true};
}

JointState hyperentangled(Index n1, Index n2) {
    if (n1 < 2 || n2 < 2)
        throw std::invalid_argument("hyperentangled: dims must be >= 2");
    const Index n = n1 * n2;
    Vec psi = Vec::Zero(n * n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (Index k = 0; k < n; ++k) psi(k * n + k) = amp;
    return JointState{linalg::projector(psi), n, n, true};
}

Vec state_vector(const JointState& state) {
    if (!state.pure ||
        std::abs(linalg::purity_of(state.rho) - 1.0) > tol::structure)
        throw std::invalid_argument(
            "state_vector: Schmidt decomposition requires a pure state");
    Eigen::SelfAdjointEigenSolver<Mat> solver(state.rho);
    const Index top = state.rho.rows() - 1;  // eigenvalues ascending
    return solver.eigenvectors().col(top);
}

std::vector<SchmidtTerm> schmidt_decompose(const JointState& state) {
    const Vec psi = state_vector(state);

    // coefficient matrix C(a, b) = ψ[a*dim_b + b]; ψ = Σ_i λ_i u_i ⊗ conj(v_i)
    Mat coeff(state.dim_a, state.dim_b);
    for (Index a = 0; a < state.dim_a; ++a)
        for (Index b = 0; b < state.dim_b; ++b)
            coeff(a, b) = psi(a * state.dim_b + b);

    Eigen::JacobiSVD<Mat> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();

    std::vector<SchmidtTerm> terms;
    terms.reserve(static_cast<std::size_t>(sigma.size()));
    for (Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) <= tol::prob_floor) continue;
        terms.push_back(SchmidtTerm{sigma(i), svd.matrixU().col(i),
                                    svd.matrixV().col(i).conjugate()});
    }
    return terms;
}

}  // namespace states
}  // namespace herald
