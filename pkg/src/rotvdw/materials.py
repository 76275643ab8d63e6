"""Single-resonance dielectric model and the built-in surface materials.

    eps(w) = eps_inf + (eps_st - eps_inf) wT^2 / (wT^2 - w^2 - i G w)

On the imaginary axis (w = i xi) the same model is real and decreases
monotonically from eps_st to eps_inf.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .units import RAD_S_E12


class PoleError(ZeroDivisionError):
    """Lossless material evaluated exactly on its transverse-optical resonance."""


@dataclass(frozen=True)
class Material:
    name: str
    eps_st: float
    eps_inf: float
    omega_T: float  # rad/s
    gamma: float  # rad/s

    def __post_init__(self):
        if self.omega_T <= 0:
            raise ValueError(f"{self.name}: omega_T must be positive")
        if self.gamma < 0:
            raise ValueError(f"{self.name}: gamma must be non-negative")
        if self.eps_st < 1 or self.eps_inf < 1:
            raise ValueError(f"{self.name}: dielectric constants below 1 are not supported")

    @classmethod
    def from_tabulated(cls, name, eps_st, eps_inf, omega_T_e12, gamma_e12):
        """Build from frequencies given in units of 1e12 rad/s."""
        return cls(name, float(eps_st), float(eps_inf),
                   float(omega_T_e12) * RAD_S_E12, float(gamma_e12) * RAD_S_E12)


# name, eps_st, eps_inf, omega_T [1e12 rad/s], Gamma [1e12 rad/s]
_TABLE = [
    ("BaF2", 7.16, 2.12, 33.9, 0.4),
    ("CaF2", 6.82, 2.02, 48.7, 0.8),
    ("Sapphire", 9.32, 3.03, 97.6, 0.5),
    ("SiC", 10.0, 6.7, 149.4, 0.14),
]

_BUILTIN = {row[0]: Material.from_tabulated(*row) for row in _TABLE}


def builtin_materials() -> list[Material]:
    return list(_BUILTIN.values())


def lookup(name: str) -> Material:
    key = {k.lower(): k for k in _BUILTIN}.get(name.lower())
    if key is None:
        raise KeyError(f"unknown material {name!r}; known: {', '.join(_BUILTIN)}")
    return _BUILTIN[key]


def permittivity(mat: Material, omega):
    """Complex permittivity on the real frequency axis (Im eps >= 0 for omega >= 0)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise ValueError("omega must be >= 0")
    denom = mat.omega_T**2 - omega**2 - 1j * mat.gamma * omega
    if np.any(denom == 0):
        raise PoleError(f"{mat.name}: lossless resonance at omega = omega_T")
    eps = mat.eps_inf + (mat.eps_st - mat.eps_inf) * mat.omega_T**2 / denom
    # keep the static value exact
    eps = np.where(omega == 0, mat.eps_st + 0j, eps)
    return eps[()] if eps.ndim == 0 else eps


def permittivity_imag_axis(mat: Material, xi):
    """Real permittivity at imaginary frequency i*xi."""
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0):
        raise ValueError("xi must be >= 0")
    eps = mat.eps_inf + (mat.eps_st - mat.eps_inf) * mat.omega_T**2 / (
        mat.omega_T**2 + xi**2 + mat.gamma * xi
    )
    eps = np.where(xi == 0, mat.eps_st, eps)
    return eps[()] if eps.ndim == 0 else eps


def static_image_factor(eps):
    """Image-dipole strength (eps - 1)/(eps + 1) of a dielectric half-space."""
    eps = np.asarray(eps)
    if np.any(np.real(eps) <= 0):
        raise ValueError("eps must be positive")
    out = (eps - 1) / (eps + 1)
    return out[()] if out.ndim == 0 else out
