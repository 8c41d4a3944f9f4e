#include "heraldshape/linalg.hpp"
#include "heraldshape/states.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

using namespace herald;
using doctest::Approx;

TEST_CASE("Shape rejects the null vector and normalizes on demand") {
    CHECK_THROWS_WITH_AS(Shape(Vec::Zero(3)), "Shape: null shape",
                         std::invalid_argument);

    Vec nu(2);
    nu << 3.0, 4.0;
    const Shape shape(nu);
    CHECK(!shape.is_normalized());
    const Shape unit = shape.normalized();
    CHECK(unit.is_normalized());
    CHECK(std::abs(unit.nu()(0) - Cx(0.6)) < 1e-15);
    CHECK(std::abs(unit.nu()(1) - Cx(0.8)) < 1e-15);
}

TEST_CASE("ModeSpace flattening is row-major") {
    const ModeSpace space{{2, 3}};
    CHECK(space.total_dim() == 6);
    CHECK(space.flatten({1, 2}) == 5);
    CHECK(space.flatten({0, 2}) == 2);
    CHECK(space.unflatten(5) == std::vector<Index>{1, 2});
    CHECK(space.unflatten(3) == std::vector<Index>{1, 0});
}

TEST_CASE("joint_from_ket normalizes and flags purity") {
    Vec psi = Vec::Zero(4);
    psi(0) = 2.0;
    const JointState js = joint_from_ket(psi, 2, 2);
    CHECK(js.pure);
    CHECK(js.rho(0, 0).real() == Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_WITH_AS(joint_from_ket(Vec::Zero(4), 2, 2),
                         "joint_from_ket: null state", std::invalid_argument);
    CHECK_THROWS_WITH_AS(joint_from_ket(psi, 3, 2),
                         "joint_from_ket: shape mismatch", std::invalid_argument);
}

TEST_CASE("joint_from_density validates and recomputes the purity flag") {
    const JointState mixed = joint_from_density(Mat::Identity(4, 4) / 4.0, 2, 2);
    CHECK(!mixed.pure);

    Vec psi = Vec::Zero(4);
    psi(1) = 1.0;
    const JointState pure = joint_from_density(linalg::projector(psi), 2, 2);
    CHECK(pure.pure);

    CHECK_THROWS_WITH_AS(joint_from_density(Mat::Identity(4, 4), 2, 2),
                         "joint_from_density: trace is not 1", std::invalid_argument);
    Mat skew = Mat::Identity(4, 4) / 4.0;
    skew(0, 1) = 0.2;
    CHECK_THROWS_WITH_AS(joint_from_density(skew, 2, 2),
                         "joint_from_density: not Hermitian", std::invalid_argument);
}

TEST_CASE("correlated_pair interpolates between classical and entangled") {
    CHECK_THROWS_WITH_AS(states::correlated_pair(3, -0.1),
                         "correlated_pair: invalid mixing parameter",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(states::correlated_pair(3, 1.3),
                         "correlated_pair: invalid mixing parameter",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(states::correlated_pair(1, 1.0),
                         "correlated_pair: n must be >= 2", std::invalid_argument);

    const JointState half = states::correlated_pair(3, 0.5);
    CHECK(!half.pure);
    // spectrum of p|Phi><Phi| + (1-p)/n sum |kk><kk|: top eigenvalue p + (1-p)/n
    const Eigen::VectorXd eig = linalg::hermitian_eigenvalues(half.rho);
    CHECK(eig.maxCoeff() == Approx(2.0 / 3.0).epsilon(1e-12));
    // Tr rho^2 = p^2 (1 - 1/n) + 1/n
    CHECK(linalg::purity_of(half.rho) == Approx(0.5).epsilon(1e-12));

    CHECK(states::correlated_pair(3, 1.0).pure);
    CHECK(!states::correlated_pair(3, 0.0).pure);
}

TEST_CASE("generalized_bell reduces to the plain pair and carries shift and phase") {
    const Index n = 3;
    CHECK(linalg::max_abs_diff(states::generalized_bell(n, 0, 0).rho,
                               states::correlated_pair(n, 1.0).rho) < 1e-14);

    // amplitudes sit at (k, (k+m) mod n) with phase e^{i 2 pi k s / n}
    Vec psi = states::state_vector(states::generalized_bell(n, 1, 2));
    psi *= std::abs(psi(1)) / psi(1);  // pin the arbitrary global phase at k=0
    const double amp = 1.0 / std::sqrt(3.0);
    for (Index k = 0; k < n; ++k) {
        const Index flat = k * n + (k + 1) % n;
        const Cx want = std::polar(amp, 2.0 * std::numbers::pi *
                                            static_cast<double>(2 * k) / 3.0);
        CHECK(std::abs(psi(flat) - want) < 1e-12);
    }

    // parameters are reduced mod n
    CHECK(linalg::max_abs_diff(states::generalized_bell(n, n + 1, 2 * n + 2).rho,
                               states::generalized_bell(n, 1, 2).rho) < 1e-14);
    CHECK_THROWS_WITH_AS(states::generalized_bell(1, 0, 0),
                         "generalized_bell: n must be >= 2", std::invalid_argument);
}

TEST_CASE("shaped_entangled puts the shape on the Schmidt diagonal") {
    Vec nu(2);
    nu << 1.0, 0.0;
    const JointState single = states::shaped_entangled(Shape(nu));
    CHECK(single.pure);
    CHECK(single.rho(0, 0).real() == Approx(1.0).epsilon(1e-14));  // plain |00>

    Vec skew(2);
    skew << std::sqrt(0.7), std::sqrt(0.3);
    const auto terms = states::schmidt_decompose(states::shaped_entangled(Shape(skew)));
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].coefficient == Approx(std::sqrt(0.7)).epsilon(1e-12));
    CHECK(terms[1].coefficient == Approx(std::sqrt(0.3)).epsilon(1e-12));
}

TEST_CASE("hyperentangled is the maximally entangled pair on the flattened space") {
    CHECK(linalg::max_abs_diff(states::hyperentangled(2, 3).rho,
                               states::correlated_pair(6, 1.0).rho) < 1e-14);
    CHECK_THROWS_WITH_AS(states::hyperentangled(1, 3),
                         "hyperentangled: dims must be >= 2", std::invalid_argument);
}

TEST_CASE("schmidt_decompose orders coefficients and reconstructs the ket") {
    Vec psi = Vec::Zero(6);  // dims 2 x 3
    psi(0) = std::sqrt(0.3);  // |0,0>
    psi(4) = std::sqrt(0.7);  // |1,1>
    const JointState js = joint_from_ket(psi, 2, 3);
    const auto terms = states::schmidt_decompose(js);
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].coefficient == Approx(std::sqrt(0.7)).epsilon(1e-12));
    CHECK(terms[1].coefficient == Approx(std::sqrt(0.3)).epsilon(1e-12));

    Vec recon = Vec::Zero(6);
    for (const auto& term : terms)
        recon += term.coefficient * linalg::kron(term.vec_a, term.vec_b);
    CHECK(linalg::max_abs_diff(linalg::projector(recon), js.rho) < 1e-12);
}

TEST_CASE("state_vector refuses mixed states") {
    CHECK_THROWS_WITH_AS(states::state_vector(states::correlated_pair(2, 0.5)),
                         "state_vector: Schmidt decomposition requires a pure state",
                         std::invalid_argument);
}
