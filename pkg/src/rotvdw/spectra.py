"""Level diagrams, 1 -> 0 style line catalogues, splittings and linewidths.

Level energies are E_l + plane shift + curvature shift, in the parity basis
|l,|m|,s> that diagonalises the curvature perturbation. Line frequencies are
differences of these levels; the closed-form splittings are kept as
independent cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .greens import SurfaceGeometry
from .materials import Material, static_image_factor
from .rotor import (
    AXES,
    Molecule,
    ParityState,
    dipole_element,
    energy,
    parity_states,
)
from .units import EPS0, H, HBAR, KB, NA, C

OBSERVABILITY_MARGIN = 3.0


@dataclass(frozen=True)
class EnergyScale:
    value: float  # J
    d: float
    eps_st: float
    mu: float


def _eps(mat) -> float:
    return mat.eps_st if isinstance(mat, Material) else float(mat)


def energy_scale(mol: Molecule, mat, d: float) -> EnergyScale:
    """mu^2/(32 pi eps0 d^3) (eps_st-1)/(eps_st+1)."""
    if not d > 0:
        raise ValueError("d must be positive")
    eps = _eps(mat)
    value = mol.mu**2 / (32 * math.pi * EPS0 * d**3) * float(static_image_factor(eps))
    return EnergyScale(value, d, eps, mol.mu)


def plane_shift(l: int, m: int, E: EnergyScale) -> float:
    if abs(m) > l:
        raise ValueError("|m| must not exceed l")
    L = l * (l + 1)
    return -E.value * (3 * L - m**2 - 2) / (4 * L - 3)


def curvature_shift(st: ParityState, E: EnergyScale, geom: SurfaceGeometry, eps_st=None) -> float:
    """Leading curvature correction to the plane level of a parity state.

    Only |m| = 1 doublets feel d/R1 - d/R2; all other levels move rigidly
    with d/R1 + d/R2.
    """
    eps = E.eps_st if eps_st is None else _eps(eps_st)
    if E.value == 0:
        return 0.0
    L = st.l * (st.l + 1)
    m2 = st.m_abs**2
    S, D = geom.curvature_sum, geom.curvature_difference
    den = 4 * L - 3
    if st.m_abs != 1:
        return E.value * S * (L * (11 + 5 * eps) + m2 * (eps - 1) - 4 * (2 + eps)) / (4 * (eps + 1) * den)
    mean = S * (L * (11 + 5 * eps) - 3 * (3 + eps)) / (4 * (eps + 1) * den)
    split = D * L * (1 + 3 * eps) / (16 * (eps + 1) * den)
    return E.value * (mean + st.s * split)


@dataclass(frozen=True)
class LevelShifted:
    state: ParityState
    e_free: float
    shift_plane: float
    shift_curv: float
    e_total: float

    @property
    def shift(self) -> float:
        return self.shift_plane + self.shift_curv


def shifted_level(mol: Molecule, st: ParityState, E: EnergyScale, geom: SurfaceGeometry) -> LevelShifted:
    e0 = energy(mol, st.l)
    sp = plane_shift(st.l, st.m_abs, E)
    sc = curvature_shift(st, E, geom)
    return LevelShifted(st, e0, sp, sc, e0 + sp + sc)


def level_diagram(mol: Molecule, mat, geom: SurfaceGeometry, l_max: int = 2) -> list[LevelShifted]:
    if l_max < 1:
        raise ValueError("l_max must be >= 1")
    E = energy_scale(mol, mat, geom.d)
    return [shifted_level(mol, st, E, geom) for l in range(l_max + 1) for st in parity_states(l)]


def distinct_levels(levels: list[LevelShifted], l: int, rel_tol: float = 1e-12) -> int:
    values = sorted(lv.shift for lv in levels if lv.state.l == l)
    scale = max((abs(v) for v in values), default=0.0)
    count = 0
    last = None
    for v in values:
        if last is None or abs(v - last) > rel_tol * scale:
            count += 1
            last = v
    return count


# --------------------------------------------------------------------------- lines


def natural_linewidth(mol: Molecule, nu: float) -> float:
    """nu^3 mu^2 / (3 eps0 hbar c^3), Hz."""
    if not nu > 0:
        raise ValueError("nu must be positive")
    return nu**3 * mol.mu**2 / (3 * EPS0 * HBAR * C**3)


def doppler_broadening(mol: Molecule, nu: float, T: float) -> float:
    """Thermal Doppler FWHM (2 nu/c) sqrt(2 NA kB T ln2 / M), M the molar mass in kg/mol."""
    if not T > 0:
        raise ValueError("T must be positive")
    M = mol.M_r * 1e-3
    return 2 * nu / C * math.sqrt(2 * NA * KB * T * math.log(2) / M)


@dataclass(frozen=True)
class SpectralLine:
    label: str
    upper: ParityState
    lower: ParityState
    frequency: float  # Hz
    offset: float  # Hz, shift from the free-space line
    polarization_axis: str
    visible_from: frozenset = field(default_factory=frozenset)
    natural_width: float = 0.0
    M_r: float = 0.0

    def doppler_width(self, T: float) -> float:
        M = self.M_r * 1e-3
        return 2 * self.frequency / C * math.sqrt(2 * NA * KB * T * math.log(2) / M)


def _label(upper: ParityState, lower: ParityState) -> str:
    if (lower.l, lower.m_abs) == (0, 0) and upper.l == 1:
        if upper.m_abs == 0:
            return "nu2"
        return "nu1+" if upper.s > 0 else "nu1-"
    return f"{upper.label}->{lower.label}"


def transition_lines(mol: Molecule, mat, geom: SurfaceGeometry, branch=(1, 0)) -> list[SpectralLine]:
    """All dipole-allowed lines between the parity states of two adjacent levels.

    Each line is linearly polarised along the single axis whose dipole
    component connects the pair, and is visible from the two other axes.
    """
    lu, ll = branch
    if lu != ll + 1 or ll < 0:
        raise ValueError("branch must be (l+1, l)")
    E = energy_scale(mol, mat, geom.d)
    lowers = [shifted_level(mol, s, E, geom) for s in parity_states(ll)]
    uppers = [shifted_level(mol, s, E, geom) for s in parity_states(lu)]
    nu_free = (energy(mol, lu) - energy(mol, ll)) / H
    lines = []
    for up in uppers:
        for lo in lowers:
            axes = [a for a in AXES if abs(dipole_element(mol, up.state, lo.state, a)) > 1e-9 * mol.mu]
            if not axes:
                continue
            if len(axes) != 1:
                raise AssertionError(f"parity states couple through several axes: {axes}")
            pol = axes[0]
            offset = (up.shift - lo.shift) / H
            nu = nu_free + offset
            lines.append(
                SpectralLine(
                    label=_label(up.state, lo.state),
                    upper=up.state,
                    lower=lo.state,
                    frequency=nu,
                    offset=offset,
                    polarization_axis=pol,
                    visible_from=frozenset(a for a in AXES if a != pol),
                    natural_width=natural_linewidth(mol, nu),
                    M_r=mol.M_r,
                )
            )
    return lines


def distinct_frequencies(lines: list[SpectralLine], rel_tol: float = 1e-12) -> int:
    """Number of resolvable line positions (offsets equal within rel_tol of the largest)."""
    offs = sorted(ln.offset for ln in lines)
    scale = max((abs(o) for o in offs), default=0.0)
    count, last = 0, None
    for o in offs:
        if last is None or abs(o - last) > rel_tol * scale:
            count += 1
            last = o
    return count


def visible_lines(lines: list[SpectralLine], axis: str) -> list[SpectralLine]:
    return [ln for ln in lines if axis in ln.visible_from]


def _by_label(lines):
    return {ln.label: ln for ln in lines}


def splitting_plane(mol: Molecule, mat, d: float) -> float:
    """nu1 - nu2 = E/(5 h) for the 1 -> 0 line near a plane."""
    return energy_scale(mol, mat, d).value / (5 * H)


def splitting_curvature(mol: Molecule, mat, geom: SurfaceGeometry) -> float:
    """nu1+ - nu1- = (E/h)(d/R1 - d/R2)(3 eps_st + 1)/(20 (eps_st + 1))."""
    E = energy_scale(mol, mat, geom.d)
    eps = E.eps_st
    return E.value / H * geom.curvature_difference * (3 * eps + 1) / (20 * (eps + 1))


def splitting_curvature_conductor(mu: float, geom: SurfaceGeometry) -> float:
    """Perfect-conductor limit 3 mu^2 / (640 pi eps0 h d^3) (d/R1 - d/R2)."""
    return 3 * mu**2 / (640 * math.pi * EPS0 * H * geom.d**3) * geom.curvature_difference


def line_splittings(lines: list[SpectralLine]) -> dict[str, float]:
    """Delta nu_12 (using the mean of nu1+/-) and Delta nu_pm from a 1 -> 0 catalogue."""
    by = _by_label(lines)
    nu1 = 0.5 * (by["nu1+"].offset + by["nu1-"].offset)
    return {
        "delta_nu_12": nu1 - by["nu2"].offset,
        "delta_nu_pm": by["nu1+"].offset - by["nu1-"].offset,
    }


# --------------------------------------------------------------------------- observability


@dataclass(frozen=True)
class ObservabilityReport:
    molecule: str
    material: str
    d: float
    R1: float
    R2: float
    T: float
    nu_r: float
    delta_nu_12: float
    delta_nu_pm: float
    delta_nu_pm_conductor: float
    natural_width: float
    doppler_width: float
    ratio_to_doppler: float
    ratio_to_natural: float
    margin: float
    observable: bool


def observability_report(mol: Molecule, mat, geom: SurfaceGeometry, T: float, margin: float = OBSERVABILITY_MARGIN) -> ObservabilityReport:
    """Is the curvature splitting nu1+ - nu1- larger than margin x both linewidths?"""
    nu = mol.nu_r()
    dpm = splitting_curvature(mol, mat, geom)
    nat = natural_linewidth(mol, nu)
    dop = doppler_broadening(mol, nu, T)
    r_dop = abs(dpm) / dop
    r_nat = abs(dpm) / nat
    return ObservabilityReport(
        molecule=mol.name,
        material=mat.name if isinstance(mat, Material) else str(mat),
        d=geom.d,
        R1=geom.R1,
        R2=geom.R2,
        T=T,
        nu_r=nu,
        delta_nu_12=splitting_plane(mol, mat, geom.d),
        delta_nu_pm=dpm,
        delta_nu_pm_conductor=splitting_curvature_conductor(mol.mu, geom),
        natural_width=nat,
        doppler_width=dop,
        ratio_to_doppler=r_dop,
        ratio_to_natural=r_nat,
        margin=margin,
        observable=bool(r_dop > margin and r_nat > margin),
    )
