"""Finite-temperature Casimir-Polder level shifts in the non-retarded regime.

The free-energy shift of a state |a> splits into a Matsubara sum

    F_nr = -kB T sum'_n alpha_ij(i xi_n) G_ij(i xi_n)       (n = 0 at weight 1/2)

and a thermally weighted resonant part

    F_r  = sum_b n(omega_ab, T) mu_i^ab mu_j^ba Re G_ij(|omega_ba|).

For a frequency-independent G the two add up to -G_ij <a|mu_i mu_j|a>/2 at
any temperature; the numerical sum exists to check that cancellation and to
quantify dispersion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import polygamma

from .greens import StaticProvider, SurfaceGeometry, curved_static_green
from .rotor import Molecule, _ket, second_moments, transition_weights
from .units import HBAR, KB

BOSE_CUTOFF = 700.0
REL_TOL = 1e-9
N_MAX = 10**6
# the 1/n^2 tail estimate is applied only once xi_n exceeds this multiple of every |omega_ab|
ASYMPTOTIC_RATIO = 1e3


class MatsubaraConvergenceError(RuntimeError):
    def __init__(self, message, partial_sum, terms_used):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.terms_used = terms_used


@dataclass(frozen=True)
class ShiftBreakdown:
    nonresonant: float
    resonant: float
    total: float
    temperature: float
    matsubara_terms_used: int


def _check_T(T):
    if not T > 0:
        raise ValueError(f"temperature must be positive, got T={T!r}")


def matsubara_frequencies(T: float, n_max: int) -> np.ndarray:
    """xi_n = 2 pi n kB T / hbar for n = 0..n_max."""
    _check_T(T)
    return 2 * math.pi * KB * T / HBAR * np.arange(n_max + 1)


def bose_einstein(omega, T: float):
    """Bose occupation 1/(exp(hbar omega/kB T) - 1); defined for omega of either sign."""
    _check_T(T)
    omega = np.asarray(omega, dtype=float)
    if np.any(omega == 0):
        raise ValueError("Bose factor diverges at omega = 0")
    x = HBAR * omega / (KB * T)
    with np.errstate(over="ignore"):
        n = np.where(x > BOSE_CUTOFF, 0.0, 1.0 / np.expm1(np.minimum(x, BOSE_CUTOFF)))
    return n[()] if n.ndim == 0 else n


def coth(y):
    """coth(y) = sign(y) (1 + 2/expm1(2|y|)), stable for small and large |y|."""
    y = np.asarray(y, dtype=float)
    a = np.abs(y)
    with np.errstate(over="ignore"):
        out = np.sign(y) * (1 + 2 / np.expm1(np.minimum(2 * a, 2 * BOSE_CUTOFF)))
    return out[()] if out.ndim == 0 else out


def transitions(mol: Molecule, state):
    """[(omega_ab, W_ab)] for l_b = l_a -/+ 1, W_ab[i, j] = sum_b Re mu_i^ab mu_j^ba."""
    out = []
    levels = sorted({s.l for s in _ket(state)})
    if len(levels) != 1:
        raise ValueError("state must lie within a single rotational level")
    la = levels[0]
    for lb in (la - 1, la + 1):
        if lb < 0:
            continue
        omega = 0.5 * mol.omega_r * (lb * (lb + 1) - la * (la + 1))
        out.append((omega, transition_weights(mol, state, lb)))
    return out


def polarizability(mol: Molecule, state, xi: float) -> np.ndarray:
    """alpha_ij(i xi) = (2/hbar) sum_b mu_i^ab mu_j^ba omega_ab / (xi^2 + omega_ab^2), in C^2 m^2 / J."""
    if xi < 0:
        raise ValueError("xi must be >= 0")
    alpha = np.zeros((3, 3))
    for omega, W in transitions(mol, state):
        alpha += W * omega / (xi**2 + omega**2)
    return 2 / HBAR * alpha


def _weights_diag(trans):
    omegas = np.array([w for w, _ in trans])
    diag = np.array([np.diag(W) for _, W in trans])  # (n_trans, 3)
    return omegas, diag


def _matsubara_terms(omegas, diag, provider, xi):
    g = np.asarray(provider.imag_array(xi), dtype=float)  # (N, 3)
    lor = omegas[None, :] / (xi[:, None] ** 2 + omegas[None, :] ** 2)  # (N, n_trans)
    return 2 / HBAR * np.einsum("nt,ti,ni->n", lor, diag, g)


def shift_nonresonant(mol, state, T, provider, rel_tol=REL_TOL, n_max=N_MAX, return_terms=False):
    """Matsubara sum for the non-resonant free-energy shift (J).

    The sum runs until three consecutive terms fall below rel_tol times the
    running total, with xi_n past the polarizability scale; the remaining
    1/n^2 tail is then added in closed form via the trigamma function. A
    static provider whose sum would need more than n_max terms switches to
    the coth resummation (reported with 0 terms used).
    """
    _check_T(T)
    omegas, diag = _weights_diag(transitions(mol, state))
    xi1 = 2 * math.pi * KB * T / HBAR
    n_start = int(math.ceil(ASYMPTOTIC_RATIO * np.max(np.abs(omegas)) / xi1))
    if n_start > n_max:
        if isinstance(provider, StaticProvider):
            value = _nonresonant_closed(omegas, diag, provider, T)
            return (value, 0) if return_terms else value
        raise MatsubaraConvergenceError(
            f"Matsubara sum needs more than n_max={n_max} terms at T={T} K", float("nan"), 0
        )

    total = 0.0
    below = 0
    n0 = 0
    block = max(1024, n_start + 1)
    while n0 <= n_max:
        n = np.arange(n0, min(n0 + block, n_max + 1))
        terms = _matsubara_terms(omegas, diag, provider, n * xi1)
        if n0 == 0:
            terms[0] *= 0.5
        running = total + np.cumsum(terms)
        small = np.abs(terms) <= rel_tol * np.abs(running)
        # index where three consecutive small terms end, restricted to the asymptotic region
        for k in range(len(n)):
            below = below + 1 if small[k] else 0
            if below >= 3 and n[k] >= n_start:
                N = int(n[k])
                s = running[k]
                tail = terms[k] * N**2 * float(polygamma(1, N + 1))
                value = -KB * T * (s + tail)
                return (value, N + 1) if return_terms else value
        total = running[-1]
        n0 += len(n)
        block *= 2
    raise MatsubaraConvergenceError(
        f"Matsubara sum not converged within n_max={n_max}", -KB * T * total, n_max + 1
    )


def _nonresonant_closed(omegas, diag, provider, T):
    g = np.real(provider.real(0.0).as_array())
    c = coth(HBAR * omegas / (2 * KB * T))
    return float(-0.5 * np.sum(c * (diag @ g)))


def shift_nonresonant_closed(mol, state, T, geom: SurfaceGeometry, eps: float) -> float:
    """-G_ij/2 sum_b mu_i^ab mu_j^ba coth(hbar omega_ab / 2 kB T) for a static surface."""
    _check_T(T)
    omegas, diag = _weights_diag(transitions(mol, state))
    return _nonresonant_closed(omegas, diag, StaticProvider(geom, eps), T)


def shift_resonant_closed(mol, state, T, geom: SurfaceGeometry, eps: float) -> float:
    """G_ij/2 sum_b mu_i^ab mu_j^ba [coth(hbar omega_ab / 2 kB T) - 1] for a static surface."""
    _check_T(T)
    omegas, diag = _weights_diag(transitions(mol, state))
    g = np.real(curved_static_green(geom, eps).as_array())
    c = coth(HBAR * omegas / (2 * KB * T))
    return float(0.5 * np.sum((c - 1) * (diag @ g)))


def shift_resonant(mol, state, T, provider) -> float:
    """Bose-weighted sum over real transitions, Green's function at |omega_ba| (J)."""
    _check_T(T)
    total = 0.0
    for omega, W in transitions(mol, state):
        g = np.real(provider.real(abs(omega)).as_array())
        total += float(bose_einstein(omega, T)) * float(np.diag(W) @ g)
    return total


def free_energy_shift(mol, state, T, provider, rel_tol=REL_TOL, n_max=N_MAX) -> ShiftBreakdown:
    nr, used = shift_nonresonant(mol, state, T, provider, rel_tol, n_max, return_terms=True)
    r = shift_resonant(mol, state, T, provider)
    return ShiftBreakdown(nr, r, nr + r, T, used)


def shift_total_static(mol: Molecule, state, geom: SurfaceGeometry, eps_st: float) -> float:
    """Temperature-independent shift -1/2 sum_i G_ii <a|mu_i^2|a> (J)."""
    g = np.real(curved_static_green(geom, eps_st).as_array())
    return float(-0.5 * (g @ second_moments(mol, state).as_array()))
