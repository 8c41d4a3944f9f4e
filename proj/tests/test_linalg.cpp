#include "heraldshape/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

using namespace herald;
using doctest::Approx;

namespace {

const Cx I{0.0, 1.0};

Mat basis_matrix(Index n, Index i, Index j) {
    Mat m = Mat::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

}  // namespace

TEST_CASE("kron follows the row-major (i_a, i_b) -> i_a*rows_b + i_b layout") {
    // E01 (x) E10 must land at row 0*2+1, col 1*2+0
    const Mat k = linalg::kron(basis_matrix(2, 0, 1), basis_matrix(2, 1, 0));
    for (Index r = 0; r < 4; ++r)
        for (Index c = 0; c < 4; ++c)
            CHECK(std::abs(k(r, c) - (r == 1 && c == 2 ? Cx(1.0) : Cx(0.0))) == 0.0);

    Vec a(2), b(2);
    a << 2.0, 3.0;
    b << 5.0, 7.0;
    Vec v = linalg::kron(a, b);
    CHECK(v(0) == Cx(10.0));
    CHECK(v(1) == Cx(14.0));
    CHECK(v(2) == Cx(15.0));
    CHECK(v(3) == Cx(21.0));
}

TEST_CASE("partial trace of a shaped correlated ket gives the diagonal marginal") {
    // |psi> ~ |00> + 0.8 |11> + 0.5 |22>, marginal weights (1, .64, .25)/1.89
    Vec psi = Vec::Zero(9);
    psi(0) = 1.0;
    psi(4) = 0.8;
    psi(8) = 0.5;
    psi /= psi.norm();
    const Mat rho = linalg::projector(psi);

    for (Arm keep : {Arm::signal, Arm::idler}) {
        const Mat marg = linalg::partial_trace(rho, 3, 3, keep);
        CHECK(marg(0, 0).real() == Approx(0.5291005291005291).epsilon(1e-12));
        CHECK(marg(1, 1).real() == Approx(0.3386243386243386).epsilon(1e-12));
        CHECK(marg(2, 2).real() == Approx(0.13227513227513227).epsilon(1e-12));
        CHECK(linalg::max_abs_diff(marg, marg.diagonal().asDiagonal().toDenseMatrix()) <
              1e-15);
    }
}

TEST_CASE("partial trace rejects inconsistent dimensions") {
    CHECK_THROWS_WITH_AS(linalg::partial_trace(Mat::Identity(4, 4), 3, 2, Arm::signal),
                         "partial_trace: shape mismatch", std::invalid_argument);
}

TEST_CASE("dft_matrix carries the +i sign convention") {
    const Mat f = linalg::dft_matrix(4);
    // column f=1 is (1, i, -1, -i)/2
    CHECK(std::abs(f(0, 1) - Cx(0.5)) < 1e-15);
    CHECK(std::abs(f(1, 1) - 0.5 * I) < 1e-15);
    CHECK(std::abs(f(2, 1) + Cx(0.5)) < 1e-15);
    CHECK(std::abs(f(3, 1) + 0.5 * I) < 1e-15);

    CHECK(linalg::dft_matrix(1)(0, 0) == Cx(1.0));
    CHECK_THROWS_WITH_AS(linalg::dft_matrix(0), "dft_matrix: empty space",
                         std::invalid_argument);
}

TEST_CASE("dft_matrix is unitary and unbiased") {
    for (Index n : {2, 3, 8, 17}) {
        const Mat f = linalg::dft_matrix(n);
        CHECK(linalg::is_unitary(f));
        const double want = 1.0 / std::sqrt(static_cast<double>(n));
        for (Index k = 0; k < n; ++k)
            for (Index c = 0; c < n; ++c)
                CHECK(std::abs(f(k, c)) == Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("purity via the Frobenius norm") {
    Mat mixed = Mat::Zero(2, 2);
    mixed(0, 0) = 0.5;
    mixed(1, 1) = 0.5;
    CHECK(linalg::purity_of(mixed) == Approx(0.5).epsilon(1e-14));

    Vec v(2);
    v << 1.0, I;
    v /= v.norm();
    CHECK(linalg::purity_of(linalg::projector(v)) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("density and unitarity predicates") {
    CHECK(linalg::is_density(Mat::Identity(3, 3) / 3.0));
    Mat bad = Mat::Identity(2, 2);
    bad(0, 1) = 0.3;  // not Hermitian
    CHECK(!linalg::is_density(bad));
    Mat neg = Mat::Identity(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;  // negative eigenvalue
    CHECK(!linalg::is_density(neg));
    CHECK(!linalg::is_unitary(Mat::Identity(2, 2) * 2.0));
}

TEST_CASE("hermitian_eigenvalues returns the real spectrum") {
    Mat m(2, 2);
    m << Cx(2.0), I, -I, Cx(2.0);
    const Eigen::VectorXd eig = linalg::hermitian_eigenvalues(m);
    CHECK(eig.minCoeff() == Approx(1.0).epsilon(1e-12));
    CHECK(eig.maxCoeff() == Approx(3.0).epsilon(1e-12));
}
