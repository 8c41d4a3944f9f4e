"""Smoke tests for the heraldshape python module."""

import json
import math

import numpy as np
import pytest

import heraldshape as hs


def uniform_scenario(n):
    return {
        "dims": [n],
        "target_shape": [[1, 0]] * n,
        "source": {"kind": "max_entangled"},
    }


def test_kron_matches_numpy():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    b = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    assert np.allclose(hs.kron(a, b), np.kron(a, b))


def test_partial_trace_recovers_factors():
    rng = np.random.default_rng(1)

    def density(n):
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        rho = m @ m.conj().T
        return rho / np.trace(rho)

    a, b = density(2), density(3)
    joint = np.kron(a, b)
    assert np.allclose(hs.partial_trace(joint, 2, 3, keep="signal"), a)
    assert np.allclose(hs.partial_trace(joint, 2, 3, keep="idler"), b)


def test_dft_is_unitary_and_unbiased():
    f = hs.dft_matrix(5)
    assert np.allclose(f @ f.conj().T, np.eye(5))
    assert hs.is_unbiased(np.eye(5, dtype=complex), f)
    # +i sign convention in the exponent
    assert np.allclose(f[1, 1], np.exp(2j * np.pi / 5) / np.sqrt(5))


def test_pipeline_heralds_the_target_shape():
    rng = np.random.default_rng(2)
    nu = rng.normal(size=4) + 1j * rng.normal(size=4)

    source = hs.correlated_pair(4, 1.0)
    amps = hs.rescale_to_physical(nu)
    assert np.max(np.abs(amps)) <= 1.0 + 1e-12

    mod = hs.apply_modulator(source, amps)
    outcomes = hs.measure_idler(mod.state, "fourier", mod.pass_probability)
    clicked = [o for o in outcomes if o.outcome >= 0]
    assert len(clicked) == 4
    for out in clicked:
        corrected = hs.phase_correct(out, 4)
        assert hs.fidelity(corrected.signal_state, nu) >= 1.0 - 1e-12
        assert math.isclose(out.probability, mod.pass_probability / 4, rel_tol=1e-12)


def test_loss_changes_rate_not_state():
    state = hs.shaped_entangled(np.array([0.8, 0.6], dtype=complex))
    lost = hs.apply_loss(state, 0.25)
    assert lost.survive_probability == 0.25
    assert np.array_equal(lost.state.rho, state.rho)


def test_schmidt_spectrum_and_entropy():
    pair = hs.correlated_pair(2, 1.0)
    assert pair.pure
    terms = hs.schmidt_decompose(pair)
    assert np.allclose([t.coefficient for t in terms], [1 / np.sqrt(2)] * 2)
    assert math.isclose(hs.entanglement_entropy(pair), 1.0, rel_tol=1e-12)
    assert math.isclose(hs.entanglement_entropy(hs.hyperentangled(2, 3)),
                        math.log2(6), rel_tol=1e-12)


def test_bucket_detector_sees_the_intensity_mixture():
    nu = np.array([1.0, 0.5], dtype=complex)
    bucket = hs.bucket_detect(hs.shaped_entangled(nu))
    assert np.allclose(bucket, np.diag([0.8, 0.2]))
    assert math.isclose(hs.purity(bucket), 0.68, rel_tol=1e-12)


def test_eraser_basis_is_the_fourier_tensor_product():
    f2 = hs.dft_matrix(2)
    assert np.allclose(hs.eraser_basis([2, 2]), np.kron(f2, f2))
    assert np.allclose(hs.eraser_basis([4]), hs.dft_matrix(4))


def test_multiphoton_window():
    p = hs.multiphoton_success(0.5, 50)
    assert 8.8e-16 <= p <= 9.0e-16
    log10 = hs.multiphoton_success_log10(0.5, 10**6)
    assert math.isfinite(log10)
    assert math.isclose(log10, 10**6 * math.log10(0.5), rel_tol=1e-12)
    with pytest.raises(ValueError):
        hs.multiphoton_success(1.5, 3)


def test_tomography_roundtrip():
    source = hs.correlated_pair(3, 1.0)
    mod = hs.apply_modulator(source, np.array([1.0, 0.7, 0.4], dtype=complex))
    out = hs.measure_idler(mod.state, "fourier", mod.pass_probability)[0]
    frame = hs.standard_ic_frame(3)
    assert len(frame) == 9
    rec = hs.tomography_reconstruct(frame, hs.frame_probabilities(frame, out.signal_state))
    assert hs.trace_norm_distance(rec, out.signal_state) <= 1e-8


def test_simulate_clicks_is_deterministic():
    text = json.dumps(uniform_scenario(2))
    stats = hs.simulate_clicks(text, 2000, 7)
    assert stats == hs.simulate_clicks(text, 2000, 7)
    assert stats.seed == 7
    assert sum(stats.clicks_per_outcome) + stats.discards == stats.trials == 2000


def test_run_scenario_json_returns_a_report():
    report = json.loads(hs.run_scenario_json(json.dumps(uniform_scenario(2))))
    assert report["checks"]["probability_sum_ok"] is True
    assert report["seed"] == hs.default_seed == 42
    assert report["montecarlo"] is None
    assert math.isclose(report["totals"]["fidelity"], 1.0, rel_tol=1e-12)

    sampled = json.loads(hs.run_scenario_json(json.dumps(uniform_scenario(2)),
                                              trials=500, seed=3))
    assert sampled["seed"] == 3
    assert sampled["montecarlo"]["trials"] == 500


def test_error_mapping():
    with pytest.raises(hs.ScenarioParseError):
        hs.run_scenario_json("{ not json")
    with pytest.raises(ValueError):
        hs.correlated_pair(2, 1.5)
    with pytest.raises(ValueError):
        hs.apply_modulator(hs.correlated_pair(2, 1.0),
                           np.array([2.0, 1.0], dtype=complex))
