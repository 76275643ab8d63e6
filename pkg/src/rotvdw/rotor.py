"""Rigid-rotor model of a closed-shell polar diatomic molecule.

States are labelled either by (l, m) or by the reflection-parity basis

    |l, |m|, s> = (|l, m> + s (-1)^|m| |l, -m>) / sqrt(2),    |l, 0, +> = |l, 0>,

with Condon-Shortley phases throughout. Dipole matrix elements are
mu * <b| n_i |a>, n being the unit vector along the molecular axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import lpmv

from .units import CM_E30, HBAR, RAD_S_E9, C

AXES = ("x", "y", "z")
_AXIS_INDEX = {a: i for i, a in enumerate(AXES)}


def axis_index(axis) -> int:
    if isinstance(axis, int):
        if axis not in (0, 1, 2):
            raise ValueError(f"bad axis {axis!r}")
        return axis
    try:
        return _AXIS_INDEX[axis]
    except KeyError:
        raise ValueError(f"bad axis {axis!r}") from None


@dataclass(frozen=True)
class Molecule:
    name: str
    omega_r: float  # rad/s, hbar / I
    mu: float  # C m
    M_r: float  # relative molecular mass

    def __post_init__(self):
        if self.omega_r <= 0 or self.mu <= 0 or self.M_r <= 0:
            raise ValueError(f"{self.name}: omega_r, mu and M_r must be positive")

    @classmethod
    def from_tabulated(cls, name, omega_r_e9, mu_e30, M_r):
        return cls(name, float(omega_r_e9) * RAD_S_E9, float(mu_e30) * CM_E30, float(M_r))

    def lambda_r(self) -> float:
        """Wavelength of the 1 -> 0 line, 2 pi c / omega_r, in metres."""
        return 2 * math.pi * C / self.omega_r

    def nu_r(self) -> float:
        return self.omega_r / (2 * math.pi)


# Isotope masses (u) of the most abundant isotopes, AME2016.
ISOTOPE_MASS = {
    "H": 1.00782503,  # 1H
    "Li": 7.01600344,  # 7Li
    "Na": 22.98976928,  # 23Na
    "Rb": 84.91178974,  # 85Rb
    "Cs": 132.90545196,  # 133Cs
}

# name, constituents, omega_r [1e9 rad/s], mu [1e-30 C m]
_TABLE = [
    ("LiH", ("Li", "H"), 2790.0, 19.6),
    ("LiRb", ("Li", "Rb"), 83.0, 13.5),
    ("LiCs", ("Li", "Cs"), 73.0, 21.0),
    ("NaRb", ("Na", "Rb"), 25.5, 11.7),
    ("NaCs", ("Na", "Cs"), 22.2, 19.5),
]

_BUILTIN = {
    name: Molecule.from_tabulated(name, w, mu, sum(ISOTOPE_MASS[a] for a in atoms))
    for name, atoms, w, mu in _TABLE
}

# lambda_r column of the source table, mm
TABLE_LAMBDA_MM = {"LiH": 0.7, "LiRb": 22.7, "LiCs": 25.8, "NaRb": 73.8, "NaCs": 84.8}


def builtin_molecules() -> list[Molecule]:
    return list(_BUILTIN.values())


def lookup(name: str) -> Molecule:
    key = {k.lower(): k for k in _BUILTIN}.get(name.lower())
    if key is None:
        raise KeyError(f"unknown molecule {name!r}; known: {', '.join(_BUILTIN)}")
    return _BUILTIN[key]


# --------------------------------------------------------------------------- states


@dataclass(frozen=True, order=True)
class AzimuthalState:
    l: int
    m: int

    def __post_init__(self):
        if self.l < 0 or abs(self.m) > self.l:
            raise ValueError(f"invalid state |{self.l},{self.m}>")

    def components(self):
        return ((1.0 + 0j, self),)


@dataclass(frozen=True, order=True)
class ParityState:
    l: int
    m_abs: int
    s: int = 1

    def __post_init__(self):
        if self.l < 0 or not 0 <= self.m_abs <= self.l:
            raise ValueError(f"invalid parity state |{self.l},{self.m_abs},{self.s}>")
        if self.s not in (1, -1):
            raise ValueError("s must be +1 or -1")
        if self.m_abs == 0 and self.s != 1:
            raise ValueError("|l,0,-> does not exist")

    def components(self):
        """Expansion over |l, m> as ((coefficient, AzimuthalState), ...)."""
        if self.m_abs == 0:
            return ((1.0 + 0j, AzimuthalState(self.l, 0)),)
        r = 1 / math.sqrt(2)
        phase = self.s * (-1) ** self.m_abs
        return (
            (r + 0j, AzimuthalState(self.l, self.m_abs)),
            (phase * r + 0j, AzimuthalState(self.l, -self.m_abs)),
        )

    @property
    def label(self) -> str:
        return f"|{self.l},{self.m_abs},{'+' if self.s > 0 else '-'}>"


def azimuthal_states(l: int) -> list[AzimuthalState]:
    return [AzimuthalState(l, m) for m in range(-l, l + 1)]


def parity_states(l: int) -> list[ParityState]:
    out = [ParityState(l, 0, 1)]
    for m in range(1, l + 1):
        out += [ParityState(l, m, 1), ParityState(l, m, -1)]
    return out


def _ket(state):
    """Normalise a state or a {AzimuthalState: amplitude} mapping to a dict."""
    if isinstance(state, dict):
        return state
    out: dict[AzimuthalState, complex] = {}
    for c, az in state.components():
        out[az] = out.get(az, 0) + c
    return out


# --------------------------------------------------------------------------- energies


def energy(mol: Molecule, l: int) -> float:
    """Free rotor energy hbar omega_r l(l+1)/2, in J."""
    if l < 0:
        raise ValueError("l must be >= 0")
    return 0.5 * HBAR * mol.omega_r * l * (l + 1)


def transition_omega(mol: Molecule, a, b) -> float:
    """omega_ab = (E_b - E_a)/hbar."""
    return 0.5 * mol.omega_r * (b.l * (b.l + 1) - a.l * (a.l + 1))


# --------------------------------------------------------------------------- dipole elements


def _n_plus(lb, mb, la, ma):
    """<lb mb| sin(theta) e^{+i phi} |la ma>."""
    if mb != ma + 1:
        return 0.0
    l, m = la, ma
    if lb == l + 1:
        return -math.sqrt((l + m + 1) * (l + m + 2) / ((2 * l + 1) * (2 * l + 3)))
    if lb == l - 1:
        return math.sqrt((l - m) * (l - m - 1) / ((2 * l - 1) * (2 * l + 1)))
    return 0.0


def _n_minus(lb, mb, la, ma):
    """<lb mb| sin(theta) e^{-i phi} |la ma>."""
    if mb != ma - 1:
        return 0.0
    l, m = la, ma
    if lb == l + 1:
        return math.sqrt((l - m + 1) * (l - m + 2) / ((2 * l + 1) * (2 * l + 3)))
    if lb == l - 1:
        return -math.sqrt((l + m) * (l + m - 1) / ((2 * l - 1) * (2 * l + 1)))
    return 0.0


def _n_z(lb, mb, la, ma):
    if mb != ma:
        return 0.0
    l, m = la, ma
    if lb == l + 1:
        return math.sqrt(((l + 1) ** 2 - m**2) / ((2 * l + 1) * (2 * l + 3)))
    if lb == l - 1:
        return math.sqrt((l**2 - m**2) / ((2 * l - 1) * (2 * l + 1)))
    return 0.0


def direction_cosine(b: AzimuthalState, a: AzimuthalState, axis) -> complex:
    """<b| n_axis |a> for the unit vector along the molecular axis."""
    i = axis_index(axis)
    if i == 2:
        return complex(_n_z(b.l, b.m, a.l, a.m))
    p = _n_plus(b.l, b.m, a.l, a.m)
    q = _n_minus(b.l, b.m, a.l, a.m)
    if i == 0:
        return complex(0.5 * (p + q))
    return complex(-0.5j * (p - q))


def dipole_element(mol: Molecule, a, b, axis) -> complex:
    """mu_axis^{ba} = <b| mu_axis |a> in C m; states may be azimuthal, parity or superpositions."""
    total = 0j
    for sb, cb in _ket(b).items():
        for sa, ca in _ket(a).items():
            total += np.conj(cb) * ca * direction_cosine(sb, sa, axis)
    return mol.mu * total


def _neighbour_states(state):
    levels = {s.l for s in _ket(state)}
    out = set()
    for l in levels:
        for lb in (l - 1, l + 1):
            if lb >= 0:
                out.update(azimuthal_states(lb))
    return sorted(out)


def transition_weights(mol: Molecule, state, l_b: int) -> np.ndarray:
    """Real 3x3 matrix sum_{m_b} Re(mu_i^{ab} mu_j^{ba}) over the level l_b.

    This is the weight with which the l_a -> l_b transition enters the
    polarizability and the level shifts.
    """
    a = _ket(state)
    vecs = []
    for mb in range(-l_b, l_b + 1):
        b = AzimuthalState(l_b, mb)
        vecs.append([dipole_element(mol, a, b, i) for i in range(3)])
    v = np.array(vecs)  # rows: b, columns: axis; entries <b|mu_i|a>
    w = np.einsum("bi,bj->ij", v.conj(), v)
    return w.real


def second_moment_element(mol: Molecule, bra, ket, i, j) -> complex:
    """<bra| mu_i mu_j |ket> via a complete set of intermediate |l', m'> states."""
    i, j = axis_index(i), axis_index(j)
    inter = set(_neighbour_states(bra)) | set(_neighbour_states(ket))
    total = 0j
    for s in inter:
        total += np.conj(dipole_element(mol, s, bra, i)) * dipole_element(mol, ket, s, j)
    return total


# --------------------------------------------------------------------------- second moments


@dataclass(frozen=True)
class DipoleSecondMoments:
    xx: float
    yy: float
    zz: float

    def as_array(self) -> np.ndarray:
        return np.array([self.xx, self.yy, self.zz])

    @property
    def trace(self) -> float:
        return self.xx + self.yy + self.zz


def second_moments_m_basis(mol: Molecule, st: AzimuthalState) -> DipoleSecondMoments:
    L = st.l * (st.l + 1)
    den = 4 * L - 3
    mu2 = mol.mu**2
    xx = mu2 * (L + st.m**2 - 1) / den
    zz = mu2 * (2 * L - 2 * st.m**2 - 1) / den
    return DipoleSecondMoments(xx, xx, zz)


def second_moments_parity_basis(mol: Molecule, st: ParityState) -> DipoleSecondMoments:
    base = second_moments_m_basis(mol, AzimuthalState(st.l, st.m_abs))
    if st.m_abs != 1:
        return base
    L = st.l * (st.l + 1)
    mu2 = mol.mu**2
    big = 3 * mu2 * L / (8 * L - 6)
    small = mu2 * L / (8 * L - 6)
    if st.s > 0:
        return DipoleSecondMoments(big, small, base.zz)
    return DipoleSecondMoments(small, big, base.zz)


def second_moments(mol: Molecule, st) -> DipoleSecondMoments:
    if isinstance(st, ParityState):
        return second_moments_parity_basis(mol, st)
    return second_moments_m_basis(mol, st)


# --------------------------------------------------------------------------- reflections


def reflection_action(st: AzimuthalState, axis) -> tuple[int, AzimuthalState]:
    """R_x |l,m> = |l,-m>,  R_y |l,m> = (-1)^m |l,-m>."""
    i = axis_index(axis)
    if i == 0:
        return 1, AzimuthalState(st.l, -st.m)
    if i == 1:
        return (-1) ** (st.m % 2), AzimuthalState(st.l, -st.m)
    raise ValueError("reflections are defined for x and y only")


def reflect(state, axis) -> dict[AzimuthalState, complex]:
    out: dict[AzimuthalState, complex] = {}
    for az, c in _ket(state).items():
        phase, img = reflection_action(az, axis)
        out[img] = out.get(img, 0) + phase * c
    return out


def reflection_eigenvalue(st: ParityState, axis) -> int:
    """Eigenvalue of R_x (s (-1)^|m|) or R_y (s) on a parity state."""
    i = axis_index(axis)
    if i == 0:
        return st.s * (-1) ** st.m_abs
    if i == 1:
        return st.s
    raise ValueError("reflections are defined for x and y only")


# --------------------------------------------------------------------------- degenerate doublets


def doublet_matrix(mol: Molecule, l: int, m_abs: int, weights, element=None) -> np.ndarray:
    """2x2 matrix of sum_i w_i mu_i^2 in the {|l,+m>, |l,-m>} doublet.

    ``element(bra, ket, i)`` returns <bra|mu_i^2|ket>; defaults to the
    closed-form insertion sum.
    """
    if element is None:
        element = lambda bra, ket, i: second_moment_element(mol, bra, ket, i, i)  # noqa: E731
    basis = [AzimuthalState(l, m_abs), AzimuthalState(l, -m_abs)]
    mat = np.zeros((2, 2), dtype=complex)
    for r, bra in enumerate(basis):
        for c, ket in enumerate(basis):
            mat[r, c] = sum(w * element(bra, ket, i) for i, w in enumerate(weights) if w != 0)
    return mat


def diagonalize_doublet(mol: Molecule, l: int, m_abs: int, weights, element=None):
    """Eigenvalues (ascending) and eigenvectors (columns, in the |l,+m>,|l,-m> basis)."""
    return np.linalg.eigh(doublet_matrix(mol, l, m_abs, weights, element))


# --------------------------------------------------------------------------- quadrature oracle


class OracleConvergenceError(RuntimeError):
    pass


def ylm(l: int, m: int, theta, phi):
    """Condon-Shortley spherical harmonic Y_l^m(theta, phi)."""
    if m < 0:
        return (-1) ** (-m % 2) * np.conj(ylm(l, -m, theta, phi))
    norm = math.sqrt((2 * l + 1) / (4 * math.pi) * math.factorial(l - m) / math.factorial(l + m))
    # lpmv carries the (-1)^m Condon-Shortley phase
    return norm * lpmv(m, l, np.cos(theta)) * np.exp(1j * m * phi)


@lru_cache(maxsize=None)
def _grid(order: int):
    x, wx = np.polynomial.legendre.leggauss(order)
    nphi = 2 * order + 2
    phi = 2 * math.pi * np.arange(nphi) / nphi
    theta = np.arccos(x)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    W = np.outer(wx, np.full(nphi, 2 * math.pi / nphi))
    n = (np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T))
    return T, P, W, n


@lru_cache(maxsize=None)
def _ylm_on_grid(l, m, order):
    T, P, _, _ = _grid(order)
    return ylm(l, m, T, P)


def quadrature_direction_cosine(b: AzimuthalState, a: AzimuthalState, axis, order: int) -> complex:
    """<b|n_axis|a> from Gauss-Legendre (cos theta) x uniform-azimuth quadrature."""
    _, _, W, n = _grid(order)
    f = np.conj(_ylm_on_grid(b.l, b.m, order)) * n[axis_index(axis)] * _ylm_on_grid(a.l, a.m, order)
    return complex(np.sum(W * f))


def _oracle_once(bra, ket, i, j, l_max, order):
    bra, ket = _ket(bra), _ket(ket)
    total = 0j
    for lp in range(l_max + 1):
        for mp in range(-lp, lp + 1):
            s = AzimuthalState(lp, mp)
            left = sum(
                np.conj(c) * quadrature_direction_cosine(b, s, i, order) for b, c in bra.items()
            )
            right = sum(c * quadrature_direction_cosine(s, a, j, order) for a, c in ket.items())
            total += left * right
    return total


def oracle_second_moment(mol: Molecule, bra, ket, i, j, l_max=None, order=None) -> complex:
    """<bra| mu_i mu_j |ket> by quadrature, inserting all |l',m'> with l' <= l_max.

    Raises OracleConvergenceError if two successive quadrature orders differ
    by more than 1e-9 (relative to mu^2).
    """
    i, j = axis_index(i), axis_index(j)
    lmax_states = max(s.l for s in list(_ket(bra)) + list(_ket(ket)))
    if l_max is None:
        l_max = lmax_states + 1
    if order is None:
        order = l_max + lmax_states + 4
    v1 = _oracle_once(bra, ket, i, j, l_max, order)
    v2 = _oracle_once(bra, ket, i, j, l_max, order + 4)
    if abs(v1 - v2) > 1e-9 * max(1.0, abs(v2)):
        raise OracleConvergenceError(f"quadrature orders {order} and {order + 4} disagree: {v1} vs {v2}")
    return mol.mu**2 * v2
