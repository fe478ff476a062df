"""Brachistochrone systems and the matrix flow i d(H+F)/dt = [H, F].

A system is a traceless Hermitian Hamiltonian H spanned by a declared set of
Kronecker-basis labels, plus a constraint F supported on the complementary
labels with Tr[H F] = 0.  Membership in either span is declared by label,
never inferred from coefficient values.  Integration is fixed-step RK4 on
the basis coefficients of A = H + F, which keeps A exactly traceless
Hermitian and makes the span split deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cliffrep import build_majorana
from .matcore import commutator, kron_matrix, max_abs, trace_pair, traceless_labels

Label = tuple[str, str]

# Labels spanning the Majorana Hamiltonian: mass generator i*beta = -sigma_y(x)1,
# then p_x, p_y, p_z generators.
MAJORANA_H_SPAN: list[Label] = [("y", "1"), ("z", "z"), ("x", "1"), ("z", "x")]

# Labels of the purely imaginary (antisymmetric) Kronecker elements; these
# span i * (real antisymmetric), the angular-momentum Hamiltonians.
IMAG_LABELS: list[Label] = [
    ("1", "y"), ("x", "y"), ("y", "1"), ("y", "x"), ("y", "z"), ("z", "y"),
]


class QbeError(ValueError):
    """Raised on invalid system setup or a diverging integration."""


def complement_span(h_span: list[Label]) -> list[Label]:
    """Traceless labels not in h_span, in canonical basis order."""
    if not h_span:
        raise QbeError("h_span must be non-empty")
    if ("1", "1") in h_span:
        raise QbeError("identity label not allowed in h_span")
    taken = set(h_span)
    return [lab for lab in traceless_labels() if lab not in taken]


def assemble_constraint(f_span: list[Label], lam) -> np.ndarray:
    """F = sum_a lambda_a Y_a over the complement labels."""
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (len(f_span),):
        raise QbeError(f"expected {len(f_span)} coefficients, got {lam.shape}")
    f = np.zeros((4, 4), dtype=complex)
    for c, lab in zip(lam, f_span):
        f = f + c * kron_matrix(lab)
    return f


def trace_project_rhs(h: np.ndarray, f: np.ndarray, g: np.ndarray) -> complex:
    """Tr[[h, f] g], the projected right-hand side of the matrix flow."""
    return complex(np.trace(commutator(h, f) @ g))


def check_isotropic(h: np.ndarray, k: float) -> float:
    """|Tr[h^2 / 2] - k|, the energy-budget residual."""
    return float(abs(np.trace(h @ h).real / 2.0 - k))


def energy_variance(h: np.ndarray, psi: np.ndarray) -> float:
    """<psi|h^2|psi> - <psi|h|psi>^2 for a normalized state."""
    psi = np.asarray(psi, dtype=complex)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-12:
        raise QbeError(f"state not normalized: |psi| = {norm}")
    hpsi = h @ psi
    mean = (psi.conj() @ hpsi).real
    mean_sq = (hpsi.conj() @ hpsi).real
    return float(mean_sq - mean * mean)


@dataclass(frozen=True)
class BrachSystem:
    """Hamiltonian-plus-constraint initial data for the matrix flow."""

    h0: np.ndarray
    h_span: tuple[Label, ...]
    f_span: tuple[Label, ...]
    lambda0: np.ndarray
    k: float

    def __post_init__(self):
        if set(self.h_span) & set(self.f_span):
            raise QbeError("h_span and f_span overlap")
        if ("1", "1") in self.h_span or ("1", "1") in self.f_span:
            raise QbeError("identity label not allowed in either span")
        if abs(np.trace(self.h0)) > 1e-12:
            raise QbeError("Hamiltonian must be traceless")
        f0 = self.f0()
        if abs(trace_pair(self.h0, f0)) > 1e-10:
            raise QbeError("Tr[H F] != 0 at t = 0")
        if check_isotropic(self.h0, self.k) > 1e-10:
            raise QbeError("isotropic constraint Tr[H^2/2] = k violated at t = 0")

    def f0(self) -> np.ndarray:
        return assemble_constraint(list(self.f_span), self.lambda0)


def majorana_system(m: float, p, lam=None) -> BrachSystem:
    """Majorana Hamiltonian H = i m beta + alpha.p with its span bookkeeping.

    With lam=None the constraint defaults to the closed-orbit choice
    F = -E sigma_z (x) 1 (E = sqrt(m^2+|p|^2)), for which the flow conjugates
    H by the diagonal propagator and the mass coefficient rotates at 2E.
    """
    p = np.asarray(p, dtype=float)
    rep = build_majorana()
    h0 = rep.hamiltonian(m, p)
    f_span = complement_span(MAJORANA_H_SPAN)
    if lam is None:
        energy = float(np.sqrt(m * m + p @ p))
        lam = np.zeros(len(f_span))
        lam[f_span.index(("z", "1"))] = -energy
    k = float(np.trace(h0 @ h0).real / 2.0)
    return BrachSystem(h0, tuple(MAJORANA_H_SPAN), tuple(f_span), np.asarray(lam, dtype=float), k)


def angmom_system(h0: np.ndarray, f_coeffs) -> BrachSystem:
    """System for an angular-momentum Hamiltonian H = i M (M real antisymmetric).

    The H span is the six imaginary Kronecker labels; the constraint span is
    the nine real symmetric traceless labels, with coefficients f_coeffs.
    """
    f_span = complement_span(IMAG_LABELS)
    k = float(np.trace(h0 @ h0).real / 2.0)
    return BrachSystem(h0, tuple(IMAG_LABELS), tuple(f_span), np.asarray(f_coeffs, dtype=float), k)


@dataclass(frozen=True)
class Trajectory:
    """Integrated flow sampled on a uniform time grid."""

    times: np.ndarray
    coeffs: np.ndarray  # (n_times, 15) real, ordered by `labels`
    labels: tuple[Label, ...]
    h_labels: tuple[Label, ...]
    f_labels: tuple[Label, ...]
    step: float

    def coeff_series(self, label: Label) -> np.ndarray:
        return self.coeffs[:, self.labels.index(label)]

    def _resum(self, which: tuple[Label, ...], i: int) -> np.ndarray:
        a = np.zeros((4, 4), dtype=complex)
        for lab in which:
            a = a + self.coeffs[i, self.labels.index(lab)] * kron_matrix(lab)
        return a

    def h_at(self, i: int) -> np.ndarray:
        return self._resum(self.h_labels, i)

    def f_at(self, i: int) -> np.ndarray:
        return self._resum(self.f_labels, i)

    @property
    def h_t(self) -> list[np.ndarray]:
        return [self.h_at(i) for i in range(len(self.times))]

    @property
    def f_t(self) -> list[np.ndarray]:
        return [self.f_at(i) for i in range(len(self.times))]


def integrate_qbe(sys: BrachSystem, t_end: float, step: float) -> Trajectory:
    """Fixed-step RK4 integration of d(H+F)/dt = -i [H, F].

    H and F are recovered at every stage by trace projection onto the
    declared spans; the state is the vector of 15 real basis coefficients.
    """
    if step <= 0 or t_end <= 0:
        raise QbeError("step and t_end must be positive")

    labels = tuple(traceless_labels())
    basis = np.stack([kron_matrix(lab) for lab in labels])
    h_mask = np.array([lab in sys.h_span for lab in labels])
    f_mask = np.array([lab in sys.f_span for lab in labels])

    c0 = np.array([trace_pair(sys.h0 + sys.f0(), kron_matrix(lab)).real / 4.0
                   for lab in labels])

    def rhs(c: np.ndarray) -> np.ndarray:
        h = np.tensordot(c * h_mask, basis, axes=1)
        f = np.tensordot(c * f_mask, basis, axes=1)
        comm = -1j * (h @ f - f @ h)
        return np.einsum("ij,aji->a", comm, basis).real / 4.0

    n = int(round(t_end / step))
    times = np.arange(n + 1) * step
    out = np.empty((n + 1, len(labels)))
    out[0] = c0
    c = c0
    for i in range(n):
        k1 = rhs(c)
        k2 = rhs(c + 0.5 * step * k1)
        k3 = rhs(c + 0.5 * step * k2)
        k4 = rhs(c + step * k3)
        c = c + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(c)):
            raise QbeError(f"non-finite coefficients at t = {times[i + 1]}")
        out[i + 1] = c

    return Trajectory(times, out, labels, sys.h_span, sys.f_span, step)


def conserved_residuals(traj: Trajectory, sys: BrachSystem) -> dict[str, float]:
    """Drift of the flow's conserved quantities over a trajectory."""
    n = len(traj.times)
    a0 = traj.h_at(0) + traj.f_at(0)
    tr_a2_0 = np.trace(a0 @ a0).real
    eig0 = np.sort(np.linalg.eigvalsh(a0))
    iso = cross = tr_a2 = spec = 0.0
    for i in range(n):
        h = traj.h_at(i)
        f = traj.f_at(i)
        a = h + f
        iso = max(iso, check_isotropic(h, sys.k))
        cross = max(cross, abs(trace_pair(h, f)))
        tr_a2 = max(tr_a2, abs(np.trace(a @ a).real - tr_a2_0))
        spec = max(spec, max_abs(np.sort(np.linalg.eigvalsh(a)) - eig0))
    return {
        "isotropic_drift": float(iso),
        "cross_trace_drift": float(cross),
        "total_square_drift": float(tr_a2),
        "spectrum_drift": float(spec),
    }
