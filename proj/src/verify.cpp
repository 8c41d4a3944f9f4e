#include "heraldshape/verify.hpp"

#include "heraldshape/linalg.hpp"
#include "heraldshape/metrics.hpp"
#include "heraldshape/montecarlo.hpp"
#include "heraldshape/protocol.hpp"
#include "heraldshape/report.hpp"
#include "heraldshape/rng.hpp"
#include "heraldshape/scenario.hpp"
#include "heraldshape/states.hpp"

#include <json.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace herald::verify {
namespace {

using rng::Stream;

constexpr Index grid[] = {2, 3, 4, 8};
constexpr double two_pi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// random draws (all flow from the --seed option through Stream)
// ---------------------------------------------------------------------------

Cx random_cx(Stream& rnd) {
    return {rnd.next_uniform() * 2.0 - 1.0, rnd.next_uniform() * 2.0 - 1.0};
}

Mat random_matrix(Stream& rnd, Index rows, Index cols) {
    Mat m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = random_cx(rnd);
    return m;
}

Vec random_ket(Stream& rnd, Index n) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v(i) = random_cx(rnd);
    if (v.norm() < 1e-6) v(0) = 1.0;
    return v / v.norm();
}

Mat random_density(Stream& rnd, Index n) {
    const Mat g = random_matrix(rnd, n, n);
    Mat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

Mat random_unitary(Stream& rnd, Index n) {
    Eigen::HouseholderQR<Mat> qr(random_matrix(rnd, n, n));
    return Mat(qr.householderQ());
}

// Modulator amplitudes with magnitudes in [0.3, 1] and random phases;
// optionally zeroes some entries while keeping at least two modes open.
Vec random_amps(Stream& rnd, Index n, bool allow_zeros) {
    Vec a(n);
    Index nonzero = 0;
    for (Index k = 0; k < n; ++k) {
        if (allow_zeros && n > 2 && rnd.next_uniform() < 0.25) {
            a(k) = 0.0;
            continue;
        }
        a(k) = std::polar(0.3 + 0.7 * rnd.next_uniform(),
                          two_pi * rnd.next_uniform());
        ++nonzero;
    }
    if (nonzero < 2) {
        a(0) = 1.0;
        a(1) = 0.7;
    }
    return a;
}

// ---------------------------------------------------------------------------
// small assertion helpers: checks return "" on pass, a diagnostic otherwise
// ---------------------------------------------------------------------------

std::string fail(const std::string& property, const std::string& inputs) {
    return property + " [" + inputs + "]";
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// Naive double-loop partial trace, the oracle the fast path is checked against.
Mat naive_partial_trace(const Mat& rho, Index da, Index db, Arm keep) {
    if (keep == Arm::signal) {
        Mat out = Mat::Zero(da, da);
        for (Index i = 0; i < da; ++i)
            for (Index j = 0; j < da; ++j)
                for (Index b = 0; b < db; ++b)
                    out(i, j) += rho(i * db + b, j * db + b);
        return out;
    }
    Mat out = Mat::Zero(db, db);
    for (Index i = 0; i < db; ++i)
        for (Index j = 0; j < db; ++j)
            for (Index a = 0; a < da; ++a)
                out(i, j) += rho(a * db + i, a * db + j);
    return out;
}

// Source -> modulator(amps) on the idler -> detection. Returns the outcome
// list with absolute probabilities (pass folded in).
std::vector<HeraldOutcome> pipeline(const JointState& source, const Vec& amps,
                                    const DetectionBasis& basis,
                                    double eta = 1.0) {
    const Modulator mod{amps};
    const auto mres = protocol::apply_modulator(source, mod, Arm::idler);
    double pass = mres.pass_probability;
    JointState state = mres.state;
    if (eta < 1.0) {
        const auto lres = protocol::apply_loss(state, LossChannel(eta));
        state = lres.state;
        pass *= lres.survive_probability;
    }
    return protocol::measure_idler(state, basis, pass);
}

Scenario make_scenario(Index n, const Vec& nu, SourceKind kind = SourceKind::max_entangled) {
    Scenario sc;
    sc.dims = {n};
    sc.target_shape = nu;
    sc.source.kind = kind;
    return sc;
}

// ---------------------------------------------------------------------------
// linalg
// ---------------------------------------------------------------------------

std::string check_kron_assoc(Stream& rnd) {
    for (int rep = 0; rep < 6; ++rep) {
        const Mat a = random_matrix(rnd, 2, 3);
        const Mat b = random_matrix(rnd, 3, 2);
        const Mat c = random_matrix(rnd, 2, 2);
        const Mat lhs = linalg::kron(linalg::kron(a, b), c);
        const Mat rhs = linalg::kron(a, linalg::kron(b, c));
        const double d = linalg::max_abs_diff(lhs, rhs);
        if (d > tol::eq)
            return fail("kron(kron(a,b),c) != kron(a,kron(b,c))",
                        "rep=" + std::to_string(rep) + " diff=" + num(d));
    }
    return {};
}

std::string check_partial_trace_trace(Stream& rnd) {
    for (Index da = 2; da <= 5; ++da)
        for (Index db = 2; db <= 5; ++db) {
            const Mat rho = random_density(rnd, da * db);
            for (Arm keep : {Arm::signal, Arm::idler}) {
                const Mat pt = linalg::partial_trace(rho, da, db, keep);
                const double d = std::abs((pt.trace() - rho.trace()).real()) +
                                 std::abs((pt.trace() - rho.trace()).imag());
                if (d > tol::eq)
                    return fail("partial_trace changed the trace",
                                "dimA=" + std::to_string(da) +
                                    " dimB=" + std::to_string(db) +
                                    " diff=" + num(d));
            }
        }
    return {};
}

std::string check_partial_trace_oracle(Stream& rnd) {
    for (Index da = 2; da <= 5; ++da)
        for (Index db = 2; db <= 5; ++db) {
            const Mat rho = random_density(rnd, da * db);
            for (Arm keep : {Arm::signal, Arm::idler}) {
                const Mat fast = linalg::partial_trace(rho, da, db, keep);
                const Mat slow = naive_partial_trace(rho, da, db, keep);
                const double d = linalg::max_abs_diff(fast, slow);
                if (d > tol::eq)
                    return fail("partial_trace disagrees with the naive sum",
                                "dimA=" + std::to_string(da) +
                                    " dimB=" + std::to_string(db) +
                                    " diff=" + num(d));
            }
        }
    return {};
}

std::string check_dft_unitary(Stream&) {
    for (Index n = 1; n <= 64; ++n) {
        const Mat f = linalg::dft_matrix(n);
        const Mat gram = f.adjoint() * f;
        const double d = linalg::max_abs_diff(gram, Mat::Identity(n, n));
        if (d > tol::structure)
            return fail("dft_matrix not unitary",
                        "n=" + std::to_string(n) + " diff=" + num(d));
    }
    return {};
}

std::string check_dft_unbiased(Stream&) {
    for (Index n : {Index(2), Index(3), Index(4), Index(8), Index(16), Index(64)}) {
        const Mat f = linalg::dft_matrix(n);
        const double want = 1.0 / std::sqrt(static_cast<double>(n));
        for (Index k = 0; k < n; ++k)
            for (Index c = 0; c < n; ++c) {
                const double d = std::abs(std::abs(f(k, c)) - want);
                if (d > tol::eq)
                    return fail("|F[k][f]| != 1/sqrt(n)",
                                "n=" + std::to_string(n) + " k=" +
                                    std::to_string(k) + " f=" + std::to_string(c) +
                                    " diff=" + num(d));
            }
    }
    return {};
}

// ---------------------------------------------------------------------------
// states
// ---------------------------------------------------------------------------

std::string check_correlated_density(Stream&) {
    for (Index n : {Index(2), Index(3), Index(4), Index(8), Index(16)})
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const JointState s = states::correlated_pair(n, p);
            if (!linalg::is_density(s.rho))
                return fail("correlated_pair not a density matrix",
                            "n=" + std::to_string(n) + " p=" + num(p));
        }
    return {};
}

std::string check_correlated_marginals(Stream&) {
    for (Index n : grid)
        for (double p : {0.0, 0.5, 1.0}) {
            const JointState s = states::correlated_pair(n, p);
            const Mat id = Mat::Identity(n, n) / static_cast<double>(n);
            for (Arm keep : {Arm::signal, Arm::idler}) {
                const Mat pt = linalg::partial_trace(s.rho, n, n, keep);
                const double d = linalg::max_abs_diff(pt, id);
                if (d > tol::eq)
                    return fail("correlated_pair marginal != I/n",
                                "n=" + std::to_string(n) + " p=" + num(p) +
                                    " diff=" + num(d));
            }
        }
    return {};
}

std::string check_genbell_orthonormal(Stream&) {
    for (Index n : grid) {
        std::vector<Vec> kets;
        kets.reserve(static_cast<std::size_t>(n * n));
        for (Index m = 0; m < n; ++m)
            for (Index s = 0; s < n; ++s)
                kets.push_back(states::state_vector(states::generalized_bell(n, m, s)));
        for (std::size_t i = 0; i < kets.size(); ++i) {
            if (!linalg::is_normalized(kets[i], tol::structure))
                return fail("generalized_bell ket not normalized",
                            "n=" + std::to_string(n) + " index=" + std::to_string(i));
            for (std::size_t j = i + 1; j < kets.size(); ++j) {
                const double ov = std::abs(kets[i].dot(kets[j]));
                if (ov > tol::structure)
                    return fail("generalized_bell family not orthogonal",
                                "n=" + std::to_string(n) + " i=" +
                                    std::to_string(i) + " j=" + std::to_string(j) +
                                    " overlap=" + num(ov));
            }
        }
    }
    return {};
}

std::string check_shaped_uniform(Stream&) {
    for (Index n : grid) {
        const JointState a = states::shaped_entangled(Shape(Vec::Ones(n)));
        const JointState b = states::correlated_pair(n, 1.0);
        const double d = linalg::max_abs_diff(a.rho, b.rho);
        if (d > tol::eq)
            return fail("shaped_entangled(uniform) != correlated_pair(n,1)",
                        "n=" + std::to_string(n) + " diff=" + num(d));
    }
    return {};
}

std::string check_schmidt_reconstruct(Stream& rnd) {
    for (Index da = 2; da <= 5; ++da)
        for (Index db = 2; db <= 5; ++db) {
            const Vec psi = random_ket(rnd, da * db);
            const JointState js = joint_from_ket(psi, da, db);
            Vec recon = Vec::Zero(da * db);
            for (const auto& term : states::schmidt_decompose(js))
                recon += term.coefficient * linalg::kron(term.vec_a, term.vec_b);
            const double d = linalg::max_abs_diff(linalg::projector(recon), js.rho);
            if (d > tol::structure)
                return fail("Schmidt reconstruction misses the state",
                            "dimA=" + std::to_string(da) + " dimB=" +
                                std::to_string(db) + " diff=" + num(d));
        }
    return {};
}

// ---------------------------------------------------------------------------
// protocol
// ---------------------------------------------------------------------------

std::string check_heralded_purity(Stream& rnd) {
    for (Index n : grid) {
        const Index m = static_cast<Index>(rnd.next_below(static_cast<std::uint64_t>(n)));
        const Index s = static_cast<Index>(rnd.next_below(static_cast<std::uint64_t>(n)));
        const JointState source = states::generalized_bell(n, m, s);
        const Vec amps = random_amps(rnd, n, true);

        // Fourier, plus a phase-twisted Fourier frame: both unbiased to the
        // computational (modulation) basis.
        Mat twist = linalg::dft_matrix(n);
        for (Index k = 0; k < n; ++k)
            twist.row(k) *= std::polar(1.0, two_pi * rnd.next_uniform());
        const DetectionBasis bases[] = {DetectionBasis::fourier(n),
                                        DetectionBasis::custom(twist)};
        for (const auto& basis : bases)
            for (const auto& out : pipeline(source, amps, basis)) {
                if (!out.has_state()) continue;
                const double pur = linalg::purity_of(out.signal_state);
                if (std::abs(pur - 1.0) > tol::structure)
                    return fail("heralded state not pure",
                                "n=" + std::to_string(n) + " m=" +
                                    std::to_string(m) + " s=" + std::to_string(s) +
                                    " f=" + std::to_string(out.outcome) +
                                    " purity=" + num(pur));
            }
    }
    return {};
}

std::string check_shape_correctness(Stream& rnd) {
    for (Index n : grid) {
        const Vec nu = random_amps(rnd, n, true);
        const Shape target(nu);
        const JointState source = states::correlated_pair(n, 1.0);
        const auto outs = pipeline(source, protocol::rescale_to_physical(target).amps(),
                                   DetectionBasis::fourier(n));
        for (const auto& out : outs) {
            if (!out.has_state()) continue;
            if (out.outcome == 0) {
                const double fid = metrics::fidelity(out.signal_state, target);
                if (fid < 1.0 - tol::eq)
                    return fail("f=0 heralded shape misses the target",
                                "n=" + std::to_string(n) + " fidelity=" + num(fid));
            }
            const HeraldOutcome corr = protocol::phase_correct(out, n);
            const double fid = metrics::fidelity(corr.signal_state, target);
            if (fid < 1.0 - tol::eq)
                return fail("phase-corrected shape misses the target",
                            "n=" + std::to_string(n) + " f=" +
                                std::to_string(out.outcome) +
                                " fidelity=" + num(fid));
        }
    }
    return {};
}

std::string check_outcome_uniformity(Stream& rnd) {
    for (Index n : grid) {
        const Vec nu = random_amps(rnd, n, true);
        const auto outs = pipeline(states::correlated_pair(n, 1.0),
                                   protocol::rescale_to_physical(Shape(nu)).amps(),
                                   DetectionBasis::fourier(n));
        double lo = 2.0, hi = -1.0;
        for (const auto& out : outs) {
            if (out.outcome < 0) continue;
            lo = std::min(lo, out.probability);
            hi = std::max(hi, out.probability);
        }
        if (hi - lo > tol::eq)
            return fail("Fourier outcome probabilities not uniform",
                        "n=" + std::to_string(n) + " spread=" + num(hi - lo));
    }
    return {};
}

std::string check_loss_independence(Stream& rnd) {
    for (Index n : grid) {
        const Vec amps = protocol::rescale_to_physical(Shape(random_amps(rnd, n, true))).amps();
        const JointState source = states::correlated_pair(n, 1.0);
        const auto ref = pipeline(source, amps, DetectionBasis::fourier(n), 1.0);
        for (double eta : {0.1, 0.5}) {
            const auto outs = pipeline(source, amps, DetectionBasis::fourier(n), eta);
            for (std::size_t i = 0; i < outs.size(); ++i) {
                if (outs[i].outcome < 0) continue;
                const double want = eta * ref[i].probability;
                if (std::abs(outs[i].probability - want) > tol::eq)
                    return fail("click probability not scaled by eta",
                                "n=" + std::to_string(n) + " eta=" + num(eta) +
                                    " f=" + std::to_string(outs[i].outcome));
                if (!outs[i].has_state()) continue;
                const double d =
                    linalg::max_abs_diff(outs[i].signal_state, ref[i].signal_state);
                if (d > tol::eq)
                    return fail("heralded state depends on eta",
                                "n=" + std::to_string(n) + " eta=" + num(eta) +
                                    " f=" + std::to_string(outs[i].outcome) +
                                    " diff=" + num(d));
            }
        }
    }
    return {};
}

std::string check_classical_contrast(Stream& rnd) {
    for (Index n : grid) {
        const Vec amps = protocol::rescale_to_physical(Shape(random_amps(rnd, n, false))).amps();
        const double weight = amps.cwiseAbs2().sum();
        Mat want = Mat::Zero(n, n);
        for (Index k = 0; k < n; ++k) want(k, k) = std::norm(amps(k)) / weight;
        const double want_purity = amps.cwiseAbs2().cwiseAbs2().sum() / (weight * weight);

        const auto outs = pipeline(states::correlated_pair(n, 0.0), amps,
                                   DetectionBasis::fourier(n));
        for (const auto& out : outs) {
            if (!out.has_state()) continue;
            const double d = linalg::max_abs_diff(out.signal_state, want);
            if (d > tol::eq)
                return fail("classical heralded state != diag(|nu|^2)/sum",
                            "n=" + std::to_string(n) + " f=" +
                                std::to_string(out.outcome) + " diff=" + num(d));
            const double pur = linalg::purity_of(out.signal_state);
            if (std::abs(pur - want_purity) > tol::eq)
                return fail("classical heralded purity off",
                            "n=" + std::to_string(n) + " purity=" + num(pur) +
                                " want=" + num(want_purity));
        }
    }
    return {};
}

std::string check_same_basis_contrast(Stream& rnd) {
    for (Index n : grid) {
        const Vec amps = random_amps(rnd, n, true);
        const auto outs = pipeline(states::correlated_pair(n, 1.0), amps,
                                   DetectionBasis::computational(n));
        for (const auto& out : outs) {
            if (!out.has_state()) continue;
            Vec ket = Vec::Zero(n);
            ket(out.outcome) = 1.0;
            const double d = linalg::max_abs_diff(out.signal_state, linalg::projector(ket));
            if (d > tol::eq)
                return fail("computational-basis herald != |k><k|",
                            "n=" + std::to_string(n) + " k=" +
                                std::to_string(out.outcome) + " diff=" + num(d));
        }
    }
    return {};
}

std::string check_bucket_contrast(Stream& rnd) {
    for (Index n : grid) {
        const Vec amps = random_amps(rnd, n, false);  // all modes open -> mixed bucket
        const auto mres = protocol::apply_modulator(states::correlated_pair(n, 1.0),
                                                    Modulator(amps), Arm::idler);
        const Mat bucket = protocol::bucket_detect(mres.state);

        Mat mix = Mat::Zero(n, n);
        for (const auto& out :
             protocol::measure_idler(mres.state, DetectionBasis::fourier(n))) {
            if (!out.has_state()) continue;
            mix += out.probability * out.signal_state;
        }
        const double d = linalg::max_abs_diff(bucket, mix);
        if (d > tol::eq)
            return fail("bucket_detect != sum of p_f rho_f",
                        "n=" + std::to_string(n) + " diff=" + num(d));
        const double pur = linalg::purity_of(bucket);
        if (pur > 0.99)
            return fail("bucket state unexpectedly pure",
                        "n=" + std::to_string(n) + " purity=" + num(pur));
    }
    return {};
}

std::string check_genbell_reshuffle(Stream& rnd) {
    for (Index n : {Index(3), Index(4)}) {
        const Vec amps = protocol::rescale_to_physical(Shape(random_amps(rnd, n, false))).amps();
        for (Index m = 0; m < n; ++m)
            for (Index s = 0; s < n; ++s) {
                const auto outs = pipeline(states::generalized_bell(n, m, s), amps,
                                           DetectionBasis::fourier(n));
                for (const auto& out : outs) {
                    if (!out.has_state()) continue;
                    const HeraldOutcome corr = protocol::phase_correct(out, n);
                    // direct computation: chi_k = nu_{(k+m) mod n} e^{i 2 pi k s / n}
                    Vec chi(n);
                    for (Index k = 0; k < n; ++k)
                        chi(k) = amps((k + m) % n) *
                                 std::polar(1.0, two_pi * static_cast<double>(k * s) /
                                                     static_cast<double>(n));
                    chi /= chi.norm();
                    const double d = linalg::max_abs_diff(corr.signal_state,
                                                          linalg::projector(chi));
                    if (d > tol::eq)
                        return fail("reshuffled shape disagrees with direct computation",
                                    "n=" + std::to_string(n) + " m=" +
                                        std::to_string(m) + " s=" + std::to_string(s) +
                                        " f=" + std::to_string(out.outcome) +
                                        " diff=" + num(d));
                }
            }
    }
    return {};
}

std::string check_rate_comparison(Stream& rnd) {
    for (Index n : grid) {
        const Vec nu = random_amps(rnd, n, true);
        const Shape target(nu);

        // direct route: the shape lives in the source, nothing is filtered out
        double direct = 0.0;
        for (const auto& out : protocol::measure_idler(states::shaped_entangled(target),
                                                       DetectionBasis::fourier(n)))
            if (out.outcome >= 0) direct += out.probability;

        const Vec amps = protocol::rescale_to_physical(target).amps();
        double modulated = 0.0;
        for (const auto& out : pipeline(states::correlated_pair(n, 1.0), amps,
                                        DetectionBasis::fourier(n)))
            if (out.outcome >= 0) modulated += out.probability;

        const double want_mod = amps.cwiseAbs2().sum() / static_cast<double>(n);
        if (std::abs(direct - 1.0) > tol::eq)
            return fail("direct-route herald rate != 1",
                        "n=" + std::to_string(n) + " rate=" + num(direct));
        if (std::abs(modulated - want_mod) > tol::eq)
            return fail("modulator-route rate != sum|amps|^2/n",
                        "n=" + std::to_string(n) + " rate=" + num(modulated));
        if (modulated > direct + tol::eq)
            return fail("modulator route outperforms direct route",
                        "n=" + std::to_string(n) + " direct=" + num(direct) +
                            " modulated=" + num(modulated));
    }
    // uniform shape: the two routes coincide
    const Index n = 4;
    double modulated = 0.0;
    for (const auto& out : pipeline(states::correlated_pair(n, 1.0), Vec::Ones(n),
                                    DetectionBasis::fourier(n)))
        if (out.outcome >= 0) modulated += out.probability;
    if (std::abs(modulated - 1.0) > tol::eq)
        return fail("uniform shape should reach rate 1", "rate=" + num(modulated));
    return {};
}

std::string check_werner_monotone(Stream& rnd) {
    for (Index n : grid) {
        const Vec amps = protocol::rescale_to_physical(Shape(random_amps(rnd, n, false))).amps();
        double prev = -1.0;
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const auto outs = pipeline(states::correlated_pair(n, p), amps,
                                       DetectionBasis::fourier(n));
            for (const auto& out : outs) {
                if (out.outcome != 0) continue;
                const double pur = linalg::purity_of(out.signal_state);
                if (pur < prev - tol::eq)
                    return fail("heralded purity not monotone in p",
                                "n=" + std::to_string(n) + " p=" + num(p) +
                                    " purity=" + num(pur) + " prev=" + num(prev));
                prev = pur;
            }
        }
    }
    return {};
}

std::string check_two_dof_eraser(Stream&) {
    const ModeSpace space{{2, 2}};
    Vec amps(4);
    amps << 0.0, 1.0, 1.0, 0.0;  // block (left,H) and (right,V)
    const auto outs = pipeline(states::hyperentangled(2, 2), amps,
                               protocol::eraser_basis(space));
    Vec want(4);
    want << 0.0, 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2, 0.0;
    for (const auto& out : outs) {
        if (out.outcome != 0) continue;
        if (!out.has_state()) return fail("eraser outcome 0 never fires", "dims=[2,2]");
        const double fid = metrics::fidelity(out.signal_state, Shape(want));
        if (fid < 1.0 - tol::eq)
            return fail("eraser outcome 0 misses (|left,V>+|right,H>)/sqrt(2)",
                        "fidelity=" + num(fid));
        return {};
    }
    return fail("eraser outcome 0 missing from outcome list", "dims=[2,2]");
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

std::string check_fidelity_iff(Stream& rnd) {
    for (Index n : grid) {
        const Vec phi = random_ket(rnd, n);
        const Shape target(phi);
        const double f1 = metrics::fidelity(linalg::projector(phi), target);
        if (std::abs(f1 - 1.0) > tol::eq)
            return fail("fidelity(|phi><phi|, phi) != 1",
                        "n=" + std::to_string(n) + " fidelity=" + num(f1));

        // any admixture of an orthogonal state pulls fidelity below 1
        Vec orth = random_ket(rnd, n);
        orth -= phi * phi.dot(orth);
        if (orth.norm() < 1e-6) continue;
        orth /= orth.norm();
        for (double w : {1e-8, 1e-4, 0.3}) {
            const Mat rho = (1.0 - w) * linalg::projector(phi) + w * linalg::projector(orth);
            const double f = metrics::fidelity(rho, target);
            if (std::abs(f - (1.0 - w)) > tol::eq)
                return fail("fidelity of mixed-in orthogonal state != 1-w",
                            "n=" + std::to_string(n) + " w=" + num(w) +
                                " fidelity=" + num(f));
        }
    }
    return {};
}

std::string check_purity_unitary(Stream& rnd) {
    for (Index n : grid) {
        const Mat rho = random_density(rnd, n);
        const Mat u = random_unitary(rnd, n);
        const double d =
            std::abs(metrics::purity(u * rho * u.adjoint()) - metrics::purity(rho));
        if (d > tol::eq)
            return fail("purity changed under unitary conjugation",
                        "n=" + std::to_string(n) + " diff=" + num(d));
    }
    return {};
}

std::string check_entropy_maximal(Stream&) {
    for (Index n : {Index(2), Index(3), Index(4), Index(8), Index(16)}) {
        const double e = metrics::entanglement_entropy(states::correlated_pair(n, 1.0));
        const double want = std::log2(static_cast<double>(n));
        if (std::abs(e - want) > tol::structure)
            return fail("entropy of maximally entangled state != log2 n",
                        "n=" + std::to_string(n) + " entropy=" + num(e));
    }
    return {};
}

std::string check_tomography_inverse(Stream& rnd) {
    for (Index n : {Index(2), Index(3), Index(4)}) {
        const auto frame = metrics::standard_ic_frame(n);
        // a heralded pipeline state and a random full-rank state
        Mat herald_state;
        for (const auto& out : pipeline(states::correlated_pair(n, 1.0),
                                        random_amps(rnd, n, false),
                                        DetectionBasis::fourier(n)))
            if (out.outcome == 0) herald_state = out.signal_state;
        const Mat targets[] = {herald_state, random_density(rnd, n)};
        for (const Mat& rho : targets) {
            const Mat rec =
                metrics::tomography_reconstruct(frame, metrics::frame_probabilities(frame, rho));
            const double d = metrics::trace_norm_distance(rec, rho);
            if (d > 1e-8)
                return fail("tomography not an exact inverse",
                            "n=" + std::to_string(n) + " distance=" + num(d));
        }
        // a rotated frame is still informationally complete
        const Mat u = random_unitary(rnd, n);
        std::vector<Mat> rotated;
        rotated.reserve(frame.size());
        for (const Mat& pi : frame) rotated.push_back(u * pi * u.adjoint());
        const Mat rho = random_density(rnd, n);
        const Mat rec =
            metrics::tomography_reconstruct(rotated, metrics::frame_probabilities(rotated, rho));
        const double d = metrics::trace_norm_distance(rec, rho);
        if (d > 1e-8)
            return fail("tomography fails on a rotated frame",
                        "n=" + std::to_string(n) + " distance=" + num(d));
    }
    return {};
}

std::string check_multiphoton(Stream&) {
    const double p50 = metrics::multiphoton_success(0.5, 50);
    if (p50 < 8.8e-16 || p50 > 9.0e-16)
        return fail("0.5^50 outside [8.8e-16, 9.0e-16]", "value=" + num(p50));

    for (double p : {0.3, 0.5, 0.9, 0.99}) {
        // strictly decreasing until the linear form hits the denormal floor;
        // the log10 companion below carries the claim past that point
        double prev = metrics::multiphoton_success(p, 0);
        for (std::uint64_t n = 1; n <= 1000; ++n) {
            const double cur = metrics::multiphoton_success(p, n);
            const bool ok = prev > 0.0 ? cur < prev : cur == 0.0;
            if (!ok)
                return fail("multiphoton_success not monotone decreasing",
                            "p=" + num(p) + " n=" + std::to_string(n));
            prev = cur;
        }
        // log10 companion stays finite and strictly decreasing to n = 1e6
        double prev_log = 0.0;
        for (std::uint64_t n : {std::uint64_t(10), std::uint64_t(1000),
                                std::uint64_t(100000), std::uint64_t(1000000)}) {
            const double cur = metrics::multiphoton_success_log10(p, n);
            if (!std::isfinite(cur))
                return fail("multiphoton_success_log10 not finite",
                            "p=" + num(p) + " n=" + std::to_string(n));
            if (!(cur < prev_log))
                return fail("multiphoton_success_log10 not decreasing",
                            "p=" + num(p) + " n=" + std::to_string(n));
            prev_log = cur;
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// montecarlo
// ---------------------------------------------------------------------------

std::string check_mc_determinism(Stream& rnd) {
    Vec nu(4);
    nu << 1.0, 0.8, 0.5, 0.3;
    Scenario sc = make_scenario(4, nu);
    sc.loss_eta = 0.7;
    const std::uint64_t seed = rnd.next_below(1u << 30);
    const ClickStats a = mc::simulate_clicks(sc, 5000, seed);
    const ClickStats b = mc::simulate_clicks(sc, 5000, seed);
    if (!(a == b)) return fail("identical (scenario,trials,seed) differ", "trials=5000");
    if (a.trials != 5000) return fail("trial count mangled", "trials=5000");
    std::uint64_t total = a.discards;
    for (auto c : a.clicks_per_outcome) total += c;
    if (total != a.trials)
        return fail("clicks + discards != trials", "total=" + std::to_string(total));

    // distinct seeds give distinct underlying streams
    bool differs = false;
    for (std::uint64_t t = 0; t < 100 && !differs; ++t)
        differs = rng::uniform01(seed, t) != rng::uniform01(seed + 1, t);
    if (!differs) return fail("seed does not move the trial stream", "");
    return {};
}

std::string check_mc_convergence(Stream&) {
    struct Case {
        Index n;
        double eta;
        double p;
    };
    const Case cases[] = {{2, 1.0, 1.0}, {4, 0.5, 1.0}, {3, 1.0, 0.5}};
    const std::uint64_t trials = 100000;
    for (const auto& c : cases) {
        Vec nu(c.n);
        for (Index k = 0; k < c.n; ++k) nu(k) = 1.0 - 0.5 * static_cast<double>(k) /
                                                          static_cast<double>(c.n);
        Scenario sc = make_scenario(c.n, nu,
                                    c.p < 1.0 ? SourceKind::werner : SourceKind::max_entangled);
        sc.source.p = c.p;
        sc.loss_eta = c.eta;
        const ExactSolution sol = solve_scenario(sc);
        const ClickStats stats = mc::simulate_clicks(sol, trials, 2026);

        double exact_rate = 0.0;
        std::vector<double> exact_pf;
        for (const auto& out : sol.outcomes) {
            if (out.outcome < 0) continue;
            exact_rate += out.probability;
            exact_pf.push_back(out.probability);
        }
        const double sigma = std::sqrt(exact_rate * (1.0 - exact_rate) /
                                       static_cast<double>(trials));
        if (std::abs(stats.empirical_rate - exact_rate) > 4.0 * sigma + 1e-12)
            return fail("empirical rate beyond 4 sigma",
                        "n=" + std::to_string(c.n) + " eta=" + num(c.eta) +
                            " rate=" + num(stats.empirical_rate) +
                            " exact=" + num(exact_rate));
        for (std::size_t f = 0; f < exact_pf.size(); ++f) {
            const double freq = static_cast<double>(stats.clicks_per_outcome[f]) /
                                static_cast<double>(trials);
            const double sf =
                std::sqrt(exact_pf[f] * (1.0 - exact_pf[f]) / static_cast<double>(trials));
            if (std::abs(freq - exact_pf[f]) > 4.0 * sf + 1e-12)
                return fail("per-outcome frequency beyond 4 sigma",
                            "n=" + std::to_string(c.n) + " f=" + std::to_string(f) +
                                " freq=" + num(freq) + " exact=" + num(exact_pf[f]));
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// cli
// ---------------------------------------------------------------------------

std::string check_cli_roundtrip(Stream&) {
    // exercise optional blocks: labels, montecarlo, custom basis
    Vec nu(4);
    nu << Cx(0.0, 0.0), Cx(0.5, 0.5), Cx(1.0, 0.0), Cx(0.0, -0.25);
    Scenario sc;
    sc.dims = {2, 2};
    sc.target_shape = nu;
    sc.source.kind = SourceKind::hyperentangled;
    sc.loss_eta = 0.5;
    sc.montecarlo = MonteCarloSpec{2000, 7};
    sc.mode_labels = {{"left", "right"}, {"H", "V"}};

    const Scenario again = scenario_from_json_text(scenario_to_json_text(sc));
    if (!(again == sc)) return fail("scenario JSON round-trip changed the value", "");

    const RunReport report = cli::run_scenario(sc);
    const auto echoed = nlohmann::json::parse(cli::report_to_json_text(report));
    const Scenario from_report = scenario_from_json_text(echoed.at("scenario").dump());
    if (!(from_report == sc)) return fail("report echo does not re-parse equal", "");

    Scenario custom = make_scenario(3, Vec::Ones(3));
    custom.detector.basis = DetectorBasis::custom;
    custom.detector.custom_unitary = linalg::dft_matrix(3);
    const Scenario custom2 = scenario_from_json_text(scenario_to_json_text(custom));
    if (!(custom2 == custom)) return fail("custom-basis scenario round-trip failed", "");
    return {};
}

std::string check_cli_schema_strict(Stream&) {
    const char* bad_top = R"({"dims":[2],"target_shape":[[1,0],[1,0]],
        "source":{"kind":"max_entangled"},"bogus":1})";
    try {
        scenario_from_json_text(bad_top);
        return fail("unknown top-level field accepted", "field=bogus");
    } catch (const ScenarioParseError& e) {
        if (std::string(e.what()).find("bogus") == std::string::npos)
            return fail("diagnostic does not name the field", e.what());
    }
    const char* bad_nested = R"({"dims":[2],"target_shape":[[1,0],[1,0]],
        "source":{"kind":"max_entangled","shifty":3}})";
    try {
        scenario_from_json_text(bad_nested);
        return fail("unknown nested field accepted", "field=source.shifty");
    } catch (const ScenarioParseError& e) {
        if (std::string(e.what()).find("shifty") == std::string::npos)
            return fail("diagnostic does not name the nested field", e.what());
    }
    const char* bad_len = R"({"dims":[2,2],"target_shape":[[1,0],[1,0]],
        "source":{"kind":"max_entangled"}})";
    try {
        scenario_from_json_text(bad_len);
        return fail("dims/target_shape length mismatch accepted", "");
    } catch (const ScenarioParseError&) {
    }
    return {};
}

std::string check_cli_error_mapping(Stream&) {
    // parse-level failure: malformed text
    try {
        scenario_from_json_text("{ nope");
        return fail("malformed text accepted", "");
    } catch (const ScenarioParseError&) {
    } catch (const std::exception& e) {
        return fail("malformed text raised the wrong error class", e.what());
    }

    // construction-level failures: valid schema, impossible physics
    const auto expect_invalid = [](const Scenario& sc, const char* label) -> std::string {
        try {
            cli::run_scenario(sc);
            return fail(std::string(label) + " accepted", "");
        } catch (const ScenarioParseError& e) {
            return fail(std::string(label) + " raised a parse error", e.what());
        } catch (const std::invalid_argument&) {
            return {};
        }
    };
    if (auto m = expect_invalid(make_scenario(2, Vec::Zero(2)), "null shape"); !m.empty())
        return m;
    Scenario werner = make_scenario(2, Vec::Ones(2), SourceKind::werner);
    werner.source.p = 1.5;
    if (auto m = expect_invalid(werner, "p=1.5"); !m.empty()) return m;
    Scenario lossy = make_scenario(2, Vec::Ones(2));
    lossy.loss_eta = 0.0;
    if (auto m = expect_invalid(lossy, "eta=0"); !m.empty()) return m;
    return {};
}

// ---------------------------------------------------------------------------
// registry
// ---------------------------------------------------------------------------

struct Check {
    const char* name;
    std::string (*fn)(Stream&);
};

constexpr Check checks[] = {
    {"linalg.kron-assoc", check_kron_assoc},
    {"linalg.partial-trace-preserves-trace", check_partial_trace_trace},
    {"linalg.partial-trace-oracle", check_partial_trace_oracle},
    {"linalg.dft-unitary", check_dft_unitary},
    {"linalg.dft-unbiased", check_dft_unbiased},
    {"states.correlated-density", check_correlated_density},
    {"states.correlated-marginals", check_correlated_marginals},
    {"states.genbell-orthonormal", check_genbell_orthonormal},
    {"states.shaped-uniform", check_shaped_uniform},
    {"states.schmidt-reconstruct", check_schmidt_reconstruct},
    {"protocol.heralded-purity", check_heralded_purity},
    {"protocol.shape-correctness", check_shape_correctness},
    {"protocol.outcome-uniformity", check_outcome_uniformity},
    {"protocol.loss-independence", check_loss_independence},
    {"protocol.classical-contrast", check_classical_contrast},
    {"protocol.same-basis-contrast", check_same_basis_contrast},
    {"protocol.bucket-contrast", check_bucket_contrast},
    {"protocol.genbell-reshuffle", check_genbell_reshuffle},
    {"protocol.rate-comparison", check_rate_comparison},
    {"protocol.werner-monotone", check_werner_monotone},
    {"protocol.two-dof-eraser", check_two_dof_eraser},
    {"metrics.fidelity-iff", check_fidelity_iff},
    {"metrics.purity-unitary-invariant", check_purity_unitary},
    {"metrics.entropy-maximal", check_entropy_maximal},
    {"metrics.tomography-inverse", check_tomography_inverse},
    {"metrics.multiphoton", check_multiphoton},
    {"mc.determinism", check_mc_determinism},
    {"mc.convergence", check_mc_convergence},
    {"cli.roundtrip", check_cli_roundtrip},
    {"cli.schema-strict", check_cli_schema_strict},
    {"cli.error-mapping", check_cli_error_mapping},
};

}  // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& c : checks) names.emplace_back(c.name);
    return names;
}

std::vector<CheckResult> run_checks(const Options& options) {
    std::vector<CheckResult> results;
    std::uint64_t index = 0;
    for (const auto& check : checks) {
        const std::string name = check.name;
        ++index;
        if (!options.filter.empty() && name.find(options.filter) == std::string::npos)
            continue;
        CheckResult result;
        result.name = name;
        // each check draws from its own stream so filtering cannot change draws
        Stream rnd(options.seed, index);
        try {
            result.detail = check.fn(rnd);
            result.passed = result.detail.empty();
        } catch (const std::exception& e) {
            result.passed = false;
            result.detail = std::string("unexpected exception: ") + e.what();
        }
        results.push_back(std::move(result));
    }
    return results;
}

int run_and_print(const Options& options, std::ostream& out) {
    const auto results = run_checks(options);
    std::size_t passed = 0;
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << '\n';
        if (!r.passed) out << "       " << r.detail << '\n';
        if (r.passed) ++passed;
    }
    out << "verify: " << passed << '/' << results.size() << " checks passed (seed "
        << options.seed << ")\n";
    if (results.empty() && !options.filter.empty())
        out << "verify: no checks match filter '" << options.filter << "'\n";
    return passed == results.size() ? 0 : 1;
}

}  // namespace herald::verify
