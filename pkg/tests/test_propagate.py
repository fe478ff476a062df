"""Tests for closed-form eigenframes, propagators, and the mass classifier."""

import numpy as np
import pytest

from qbrach.cliffrep import build_dirac, build_majorana
from qbrach.matcore import max_abs
from qbrach.propagate import (
    PropagateError,
    classify_mass,
    eigenframe_at,
    evolve_hamiltonian,
    majorana_eigenframe,
    mass_series_from_pairs,
    project_coeffs,
    propagator,
)


def _random_mp(rng):
    m = rng.uniform(0.1, 3.0)
    p = rng.uniform(-3.0, 3.0, 3)
    return m, p


def test_closed_form_diagonalizes():
    rng = np.random.default_rng(23)
    rep = build_majorana()
    for _ in range(100):
        m, p = _random_mp(rng)
        frame = majorana_eigenframe(m, p)
        h = rep.hamiltonian(m, p)
        assert max_abs(frame.w_inv @ h @ frame.w - frame.d) < 1e-10
        assert max_abs(frame.w @ frame.w_inv - np.eye(4)) < 1e-10
        assert not frame.degenerate_fallback


def test_degenerate_fallback_used_when_denominator_vanishes():
    """p_y = 0, m = 0 kills the closed-form denominator p_y - i m."""
    frame = majorana_eigenframe(0.0, (1.0, 0.0, 1.0))
    assert frame.degenerate_fallback
    h = build_majorana().hamiltonian(0.0, (1.0, 0.0, 1.0))
    assert max_abs(frame.w_inv @ h @ frame.w - frame.d) < 1e-10


def test_propagator_is_phased_diagonal():
    rng = np.random.default_rng(29)
    m, p = 1.0, np.array([1.0, 1.0, 1.0])
    energy = 2.0
    frame = majorana_eigenframe(m, p)
    u = propagator(frame).u
    for _ in range(50):
        t, s = rng.uniform(-3, 3, 2)
        ph = np.exp(-2j * energy * (t - s))
        assert max_abs(u(t, s) - np.diag([ph, ph, 1, 1])) < 1e-12


def test_propagator_group_laws():
    rng = np.random.default_rng(31)
    frame = majorana_eigenframe(0.5, (0.3, -1.2, 0.7))
    u = propagator(frame).u
    for _ in range(50):
        t, s, r, tau = rng.uniform(-2, 2, 4)
        assert max_abs(u(t, s) @ u(t, s).conj().T - np.eye(4)) < 1e-10
        assert max_abs(u(t, s) @ u(s, r) - u(t, r)) < 1e-10
        # time-translation invariance: only t - s matters
        assert max_abs(u(t + tau, s + tau) - u(t, s)) < 1e-10


def test_bare_propagator_without_phase_strip():
    frame = majorana_eigenframe(1.0, (1.0, 1.0, 1.0))
    u = propagator(frame, strip_phase=False).u(0.4, 0.0)
    d = np.diag(frame.d)
    assert max_abs(u - np.diag(np.exp(-1j * 0.4 * d))) == 0


def test_eigenframe_at_consistency():
    """W(t) diagonalizes H(t) at every sampled time."""
    m, p = 1.0, (1.0, 1.0, 1.0)
    frame = majorana_eigenframe(m, p)
    h0 = build_majorana().hamiltonian(m, p)
    for t in (0.0, 0.3, 1.7):
        w_t = eigenframe_at(frame, t)
        h_t = evolve_hamiltonian(frame, h0, t)
        assert max_abs(h_t @ w_t - w_t @ frame.d) < 1e-10


def test_evolved_entry_and_klein_gordon():
    m, p = 1.0, (1.0, 1.0, 1.0)
    energy = 2.0
    frame = majorana_eigenframe(m, p)
    h0 = build_majorana().hamiltonian(m, p)
    for t in np.linspace(0.0, 2.0, 20):
        h_t = evolve_hamiltonian(frame, h0, t)
        assert abs(h_t[0, 2] - (p[1] + 1j * m) * np.exp(-2j * energy * t)) < 1e-12
        assert max_abs(h_t @ h_t - (m * m + 3.0) * np.eye(4)) < 1e-10


def test_evolve_rejects_wrong_spectrum():
    frame = majorana_eigenframe(1.0, (1.0, 1.0, 1.0))
    with pytest.raises(PropagateError):
        evolve_hamiltonian(frame, np.diag([5.0, 1.0, -1.0, -5.0]), 0.1)


def test_project_coeffs_recovers_hamiltonian():
    h = build_majorana().hamiltonian(0.8, (0.1, 0.2, 0.3))
    coeffs = project_coeffs(h)
    assert abs(coeffs[("y", "1")].real + 0.8) < 1e-14
    assert abs(coeffs[("x", "1")].real - 0.2) < 1e-14


def test_mass_series_zero_initial():
    series = mass_series_from_pairs(0.0, np.zeros(5), np.zeros(5))
    assert max_abs(series) == 0


def test_classify_majorana_rotating():
    report = classify_mass(build_majorana(), 1.0, (1.0, 1.0, 1.0),
                           np.linspace(0, 3, 300))
    assert report.verdict == "ROTATING"
    assert report.modulus_deviation < 1e-10
    assert abs(report.phase_rate - report.expected_rate) / report.expected_rate < 1e-6


def test_classify_dirac_constant():
    report = classify_mass(build_dirac(), 1.0, (1.0, 1.0, 1.0),
                           np.linspace(0, 3, 300))
    assert report.verdict == "CONSTANT"
    assert report.modulus_deviation < 1e-10


def test_classify_massless_majorana_constant():
    """m0 = 0 leaves nothing to rotate; the verdict is CONSTANT."""
    report = classify_mass(build_majorana(), 0.0, (1.0, 1.0, 1.0),
                           np.linspace(0, 2, 100))
    assert report.verdict == "CONSTANT"


def test_classify_requires_samples():
    with pytest.raises(PropagateError):
        classify_mass(build_majorana(), 1.0, (1.0, 1.0, 1.0), [])
