#include "heraldshape/linalg.hpp"
#include "heraldshape/protocol.hpp"
#include "heraldshape/states.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

using namespace herald;
using doctest::Approx;

namespace {

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec vec3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}

}  // namespace

TEST_CASE("Modulator accepts only passive filters") {
    CHECK_THROWS_WITH_AS(Modulator(vec3(1.0, 1.2, 0.0)),
                         "Modulator: amplitude exceeds 1, not a passive filter",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(Modulator(Vec{}), "Modulator: empty space",
                         std::invalid_argument);
    // phases are free; magnitude at exactly 1 is fine
    Vec amps(2);
    amps << std::polar(1.0, 1.1), std::polar(0.5, -2.0);
    CHECK(Modulator(amps).dim() == 2);
}

TEST_CASE("LossChannel bounds eta") {
    CHECK_THROWS_WITH_AS(LossChannel(0.0), "LossChannel: eta must be in (0, 1]",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(LossChannel(1.1), "LossChannel: eta must be in (0, 1]",
                         std::invalid_argument);
    CHECK(LossChannel(1.0).eta() == 1.0);
}

TEST_CASE("DetectionBasis validates orthonormality and keeps provenance") {
    Mat skew(2, 2);
    skew << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_WITH_AS(DetectionBasis::custom(skew),
                         "DetectionBasis: columns not orthonormal",
                         std::invalid_argument);
    CHECK(DetectionBasis::fourier(3).label() == BasisKind::fourier);
    CHECK(DetectionBasis::computational(3).label() == BasisKind::computational);
    CHECK(DetectionBasis::custom(linalg::dft_matrix(3)).label() == BasisKind::custom);
}

TEST_CASE("rescale_to_physical divides by the largest magnitude") {
    Vec nu(2);
    nu << Cx(0.0, 2.0), 1.0;
    const Modulator mod = protocol::rescale_to_physical(Shape(nu));
    CHECK(std::abs(mod.amps()(0) - Cx(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(mod.amps()(1) - Cx(0.5, 0.0)) < 1e-15);
}

TEST_CASE("compose multiplies entrywise and expand_to_space lifts one DOF") {
    Vec a(2), b(2);
    a << 0.5, 1.0;
    b << 1.0, Cx(0.0, 1.0);
    const Modulator ab = protocol::compose(Modulator(a), Modulator(b));
    CHECK(std::abs(ab.amps()(0) - Cx(0.5)) < 1e-15);
    CHECK(std::abs(ab.amps()(1) - Cx(0.0, 1.0)) < 1e-15);

    const ModeSpace space{{2, 2}};
    const Modulator first = protocol::expand_to_space(a, space, 0);
    const Modulator second = protocol::expand_to_space(b, space, 1);
    // row-major flattening: dof 0 varies slowest
    CHECK(std::abs(first.amps()(1) - Cx(0.5)) < 1e-15);
    CHECK(std::abs(first.amps()(2) - Cx(1.0)) < 1e-15);
    CHECK(std::abs(second.amps()(2) - Cx(1.0)) < 1e-15);
    CHECK(std::abs(second.amps()(3) - Cx(0.0, 1.0)) < 1e-15);
}

TEST_CASE("apply_modulator filters the idler and reports the pass probability") {
    const JointState source = states::correlated_pair(3, 1.0);
    const auto result =
        protocol::apply_modulator(source, Modulator(vec3(1.0, 0.8, 0.5)), Arm::idler);
    CHECK(result.pass_probability == Approx(0.63).epsilon(1e-12));
    CHECK(result.state.pure);
    CHECK(std::abs(result.state.rho.trace() - Cx(1.0)) < 1e-12);

    // filtered shape: nu/|nu| on the Schmidt diagonal
    const Vec psi = states::state_vector(result.state);
    const double norm = std::sqrt(1.89);
    CHECK(std::abs(psi(0)) == Approx(1.0 / norm).epsilon(1e-12));
    CHECK(std::abs(psi(4)) == Approx(0.8 / norm).epsilon(1e-12));
    CHECK(std::abs(psi(8)) == Approx(0.5 / norm).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(
        protocol::apply_modulator(source, Modulator(Vec::Zero(3).eval()), Arm::idler),
        "apply_modulator: modulator annihilates the state", std::invalid_argument);
}

TEST_CASE("apply_loss never alters the state") {
    const JointState source = states::correlated_pair(2, 1.0);
    const auto mod = protocol::apply_modulator(
        source, protocol::rescale_to_physical(Shape(vec2(1.0, 0.5))),
        Arm::idler);
    const auto loss = protocol::apply_loss(mod.state, LossChannel(0.5));
    CHECK(loss.survive_probability == 0.5);
    CHECK(linalg::max_abs_diff(loss.state.rho, mod.state.rho) == 0.0);
    // combined pass for nu = (1, 0.5) at eta = 0.5
    CHECK(mod.pass_probability * loss.survive_probability ==
          Approx(0.3125).epsilon(1e-12));
}

TEST_CASE("measure_idler yields a complete outcome list") {
    const JointState source = states::correlated_pair(2, 1.0);
    const auto mod = protocol::apply_modulator(
        source, Modulator(vec2(1.0, 0.5)), Arm::idler);
    const auto outs = protocol::measure_idler(mod.state, DetectionBasis::fourier(2),
                                              mod.pass_probability);
    REQUIRE(outs.size() == 3);  // two clicks plus the no-click pool
    double total = 0.0;
    for (const auto& out : outs) total += out.probability;
    CHECK(total == Approx(1.0).epsilon(1e-12));
    CHECK(outs.back().outcome == -1);
    CHECK(outs.back().discarded);
    CHECK(!outs.back().has_state());
    CHECK(outs.back().probability == Approx(1.0 - 0.625).epsilon(1e-12));
    CHECK(outs[0].basis == BasisKind::fourier);

    CHECK_THROWS_WITH_AS(
        protocol::measure_idler(mod.state, DetectionBasis::fourier(2), 1.5),
        "measure_idler: invalid pass probability", std::invalid_argument);
}

TEST_CASE("blocked outcomes come back as flagged nulls") {
    // modulator closes mode 1 entirely; computational outcome 1 can never fire
    const JointState source = states::correlated_pair(2, 1.0);
    const auto mod = protocol::apply_modulator(
        source, Modulator(vec2(1.0, 0.0)), Arm::idler);
    const auto outs = protocol::measure_idler(mod.state, DetectionBasis::computational(2),
                                              mod.pass_probability);
    CHECK(outs[1].probability == 0.0);
    CHECK(!outs[1].has_state());
    CHECK(linalg::max_abs_diff(outs[1].signal_state, Mat::Zero(2, 2)) == 0.0);
    CHECK(outs[0].probability == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("phase_correct requires Fourier provenance and fixes every outcome") {
    Vec nu(4);
    nu << 1.0, 0.7, Cx(0.0, 0.4), 0.2;
    const Shape target(nu);
    const auto mod = protocol::apply_modulator(states::correlated_pair(4, 1.0),
                                               protocol::rescale_to_physical(target),
                                               Arm::idler);
    const auto outs = protocol::measure_idler(mod.state, DetectionBasis::fourier(4),
                                              mod.pass_probability);
    const Vec that = target.normalized().nu();
    for (const auto& out : outs) {
        if (out.discarded) {
            // the no-click pool passes through unchanged
            const auto same = protocol::phase_correct(out, 4);
            CHECK(same.outcome == -1);
            CHECK(same.discarded);
            continue;
        }
        const auto corr = protocol::phase_correct(out, 4);
        const double fid = (that.adjoint() * corr.signal_state * that)(0, 0).real();
        CHECK(fid == Approx(1.0).epsilon(1e-12));
    }

    const auto comp = protocol::measure_idler(mod.state, DetectionBasis::computational(4),
                                              mod.pass_probability);
    CHECK_THROWS_WITH_AS(
        protocol::phase_correct(comp[0], 4),
        "phase_correct: phase correction defined only for Fourier outcomes",
        std::invalid_argument);
}

TEST_CASE("bucket detection traces out the idler") {
    const auto mod = protocol::apply_modulator(
        states::correlated_pair(2, 1.0), Modulator(vec2(1.0, 0.5)),
        Arm::idler);
    const Mat bucket = protocol::bucket_detect(mod.state);
    CHECK(bucket(0, 0).real() == Approx(0.8).epsilon(1e-12));
    CHECK(bucket(1, 1).real() == Approx(0.2).epsilon(1e-12));
    CHECK(std::abs(bucket(0, 1)) < 1e-15);  // no coherence survives
    CHECK(linalg::purity_of(bucket) == Approx(0.68).epsilon(1e-12));
}

TEST_CASE("eraser_basis is the tensor Fourier frame") {
    CHECK(protocol::eraser_basis(ModeSpace{{4}}).label() == BasisKind::fourier);

    const DetectionBasis eraser = protocol::eraser_basis(ModeSpace{{2, 2}});
    CHECK(eraser.label() == BasisKind::custom);
    const Mat want = linalg::kron(linalg::dft_matrix(2), linalg::dft_matrix(2));
    CHECK(linalg::max_abs_diff(eraser.vectors(), want) < 1e-14);

    CHECK_THROWS_WITH_AS(protocol::eraser_basis(ModeSpace{{}}),
                         "eraser_basis: empty space", std::invalid_argument);
    CHECK_THROWS_WITH_AS(protocol::eraser_basis(ModeSpace{{2, 1}}),
                         "eraser_basis: each dim must be >= 2", std::invalid_argument);
}

TEST_CASE("is_unbiased separates Fourier from computational") {
    CHECK(protocol::is_unbiased(DetectionBasis::fourier(5),
                                DetectionBasis::computational(5)));
    CHECK(!protocol::is_unbiased(DetectionBasis::computational(5),
                                 DetectionBasis::computational(5)));
    CHECK(!protocol::is_unbiased(DetectionBasis::fourier(5), DetectionBasis::fourier(5)));
}

TEST_CASE("two-DOF eraser heralds the Eq-style coherent superposition") {
    Vec amps(4);
    amps << 0.0, 1.0, 1.0, 0.0;
    const auto mod = protocol::apply_modulator(states::hyperentangled(2, 2),
                                               Modulator(amps), Arm::idler);
    const auto outs = protocol::measure_idler(
        mod.state, protocol::eraser_basis(ModeSpace{{2, 2}}), mod.pass_probability);
    Vec want(4);
    want << 0.0, 1.0, 1.0, 0.0;
    want /= want.norm();
    const double fid = (want.adjoint() * outs[0].signal_state * want)(0, 0).real();
    CHECK(fid == Approx(1.0).epsilon(1e-12));
    CHECK(outs[0].probability == Approx(0.5 / 4.0).epsilon(1e-12));
}
