"""Tests for the matrix brachistochrone flow i d(H+F)/dt = [H, F]."""

import numpy as np
import pytest

from qbrach.cliffrep import build_majorana
from qbrach.matcore import kron_matrix, max_abs, trace_pair
from qbrach.qbe import (
    IMAG_LABELS,
    MAJORANA_H_SPAN,
    BrachSystem,
    QbeError,
    angmom_system,
    assemble_constraint,
    check_isotropic,
    complement_span,
    conserved_residuals,
    energy_variance,
    integrate_qbe,
    majorana_system,
    trace_project_rhs,
)


def test_complement_span_partitions_traceless_labels():
    comp = complement_span(MAJORANA_H_SPAN)
    assert len(comp) == 11
    assert not set(comp) & set(MAJORANA_H_SPAN)


def test_complement_span_rejects_identity():
    with pytest.raises(QbeError):
        complement_span([("1", "1")])


def test_majorana_system_spans_and_isotropy():
    sys_ = majorana_system(1.0, (1.0, 1.0, 1.0))
    assert check_isotropic(sys_.h0, sys_.k) == 0
    assert abs(trace_pair(sys_.h0, sys_.f0())) < 1e-12
    # default constraint is the closed-orbit choice F = -E sigma_z (x) 1
    energy = 2.0
    assert max_abs(sys_.f0() + energy * kron_matrix(("z", "1"))) < 1e-12


def test_majorana_hamiltonian_coefficients():
    """H = i m beta + alpha.p projects onto the declared span with the
    expected signs: the (y,1) coefficient is -m, the (x,1) coefficient p_y."""
    m, p = 1.5, (0.25, -0.75, 2.0)
    sys_ = majorana_system(m, p, lam=np.zeros(11))
    coeff = {lab: trace_pair(sys_.h0, kron_matrix(lab)).real / 4.0
             for lab in sys_.h_span}
    assert abs(coeff[("y", "1")] + m) < 1e-14
    assert abs(coeff[("x", "1")] - p[1]) < 1e-14
    assert abs(coeff[("z", "z")] - p[0]) < 1e-14
    assert abs(coeff[("z", "x")] - p[2]) < 1e-14


def test_brach_system_rejects_overlapping_spans():
    rep = build_majorana()
    h0 = rep.hamiltonian(1.0, (0.0, 0.0, 0.0))
    f_span = tuple(complement_span(MAJORANA_H_SPAN)) + (("y", "1"),)
    with pytest.raises(QbeError):
        BrachSystem(h0, tuple(MAJORANA_H_SPAN), f_span, np.zeros(12), 1.0)


def test_brach_system_validates_isotropic_budget():
    rep = build_majorana()
    h0 = rep.hamiltonian(1.0, (1.0, 1.0, 1.0))
    f_span = tuple(complement_span(MAJORANA_H_SPAN))
    with pytest.raises(QbeError):
        # Tr[H^2/2] = 2 E^2 = 8, so k = 1 must be rejected
        BrachSystem(h0, tuple(MAJORANA_H_SPAN), f_span, np.zeros(11), 1.0)


def test_assemble_constraint_shape_check():
    with pytest.raises(QbeError):
        assemble_constraint([("z", "1")], np.zeros(2))


def test_energy_variance_requires_normalized_state():
    h = build_majorana().hamiltonian(1.0, (1.0, 1.0, 1.0))
    psi = np.array([1.0, 0.0, 0.0, 0.0])
    assert energy_variance(h, psi) >= 0
    with pytest.raises(QbeError):
        energy_variance(h, 2 * psi)


def test_trace_projection_closed_form():
    """Tr[[H,F] a_x] = 8i(lam_{1y} p_z + lam_{xz} m + lam_{yz} p_y):
    exactly three complement labels couple, all others give zero."""
    m, p = 2.0, (1.0, 3.0, -1.0)
    sys_ = majorana_system(m, p, lam=np.zeros(11))
    ax = build_majorana().alpha[0]
    expected = {("1", "y"): 8j * p[2], ("x", "z"): 8j * m, ("y", "z"): 8j * p[1]}
    for lab in sys_.f_span:
        val = trace_project_rhs(sys_.h0, kron_matrix(lab), ax)
        assert val == expected.get(lab, 0.0), lab


def test_integrate_closed_orbit_matches_conjugation():
    """With the default constraint the flow is the analytic conjugation
    H(t) = U H(0) U^dag with diagonal U; drift stays at RK4 accuracy."""
    m, p = 1.0, np.array([1.0, 1.0, 1.0])
    energy = np.sqrt(m * m + p @ p)
    sys_ = majorana_system(m, p)
    traj = integrate_qbe(sys_, 0.5, 1e-3)
    h0 = sys_.h0
    worst = 0.0
    for i, t in enumerate(traj.times):
        u = np.diag(np.exp(-1j * t * energy * np.array([1, 1, -1, -1])))
        worst = max(worst, max_abs(traj.h_at(i) - u @ h0 @ u.conj().T))
    assert worst < 1e-9


def test_conserved_residuals_small():
    sys_ = majorana_system(1.0, (1.0, 1.0, 1.0))
    traj = integrate_qbe(sys_, 1.0, 1e-3)
    report = conserved_residuals(traj, sys_)
    for name, val in report.items():
        assert val < 1e-9, name


def test_angmom_system_uses_imaginary_labels():
    rng = np.random.default_rng(17)
    m_mat = rng.normal(size=(4, 4))
    m_mat = m_mat - m_mat.T
    sys_ = angmom_system(1j * m_mat, rng.uniform(-1, 1, 9))
    assert sys_.h_span == tuple(IMAG_LABELS)
    assert len(sys_.f_span) == 9


def test_integrate_rejects_bad_step():
    sys_ = majorana_system(1.0, (1.0, 0.0, 0.0))
    with pytest.raises(QbeError):
        integrate_qbe(sys_, 1.0, 0.0)
