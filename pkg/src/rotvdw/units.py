"""Physical constants (CODATA 2018, SI) and unit conversions used at the I/O boundary."""

from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.constants as _sc


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float  # J s
    h: float  # J s
    c: float  # m/s
    kB: float  # J/K
    eps0: float  # F/m
    NA: float  # 1/mol


_CONSTANTS = PhysicalConstants(
    hbar=_sc.hbar,
    h=_sc.h,
    c=_sc.c,
    kB=_sc.k,
    eps0=_sc.epsilon_0,
    NA=_sc.N_A,
)


def constants() -> PhysicalConstants:
    """Frozen CODATA 2018 values.

    hbar = 1.054571817e-34 J s, h = 6.62607015e-34 J s, c = 299792458 m/s,
    kB = 1.380649e-23 J/K, eps0 = 8.8541878128e-12 F/m, NA = 6.02214076e23 1/mol.
    """
    return _CONSTANTS


HBAR = _CONSTANTS.hbar
H = _CONSTANTS.h
C = _CONSTANTS.c
KB = _CONSTANTS.kB
EPS0 = _CONSTANTS.eps0
NA = _CONSTANTS.NA

# boundary conversions
NM = 1e-9
UM = 1e-6
MM = 1e-3
RAD_S_E9 = 1e9
RAD_S_E12 = 1e12
CM_E30 = 1e-30


def parse_length(text: str | float, unit: float) -> float:
    """Convert a number (or 'inf'/'-inf') given in ``unit`` to metres."""
    value = float(text)
    if math.isinf(value):
        return value
    if unit < 1:
        # divide by the exact integer inverse so that e.g. 100 nm -> 1e-07 without rounding noise
        return value / round(1 / unit)
    return value * unit


_SI_PREFIXES = [
    (1e12, "T"),
    (1e9, "G"),
    (1e6, "M"),
    (1e3, "k"),
    (1.0, ""),
    (1e-3, "m"),
    (1e-6, "u"),
    (1e-9, "n"),
    (1e-12, "p"),
    (1e-15, "f"),
]


def format_si(value: float, unit: str = "Hz", digits: int = 4) -> str:
    """Human-readable number with an automatically chosen SI prefix."""
    if value == 0 or not math.isfinite(value):
        return f"{value:.{digits}g} {unit}"
    mag = abs(value)
    for scale, prefix in _SI_PREFIXES:
        if mag >= scale:
            return f"{value / scale:.{digits}g} {prefix}{unit}"
    scale, prefix = _SI_PREFIXES[-1]
    return f"{value / scale:.{digits}g} {prefix}{unit}"
