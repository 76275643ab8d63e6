"""Static (non-retarded) surface Green's function of a dielectric half-space.

Axes: z points from the surface to the molecule; x and y run along the
principal directions of the surface at the closest point P, where the
profile is H(x, y) = d + x^2/(2 R1) + y^2/(2 R2) + ...

Small-distance expansion to first order in d/R, with f = (eps-1)/(eps+1)
and K = 1/(32 pi eps0 d^3):

    G_xx/yy = K f [1 - (5+3eps)/(4(eps+1)) (d/R1 + d/R2) -/+ (1+3eps)/(8(eps+1)) (d/R1 - d/R2)]
    G_zz    = 2 K f [1 - (3+eps)/(4(eps+1)) (d/R1 + d/R2)]

Units of every component are V/(m C m) (field per unit dipole).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .materials import Material, permittivity, permittivity_imag_axis, static_image_factor
from .units import EPS0

WARN_RATIO = 0.1
MAX_RATIO = 0.3


class GeometryError(ValueError):
    """Curvature ratio d/R outside the range where the first-order expansion is trusted."""


class CurvatureWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SurfaceGeometry:
    """Molecule-surface distance and principal radii of curvature at the nearest point.

    Radii are positive for a surface curving away from the molecule, negative
    for a concave one, and ``math.inf`` for a flat direction. The order of
    R1 and R2 is kept as given (it fixes which principal direction is x);
    ``normalized()`` returns the copy with d/R1 >= d/R2.
    """

    d: float
    R1: float = math.inf
    R2: float = math.inf
    warn_ratio: float = WARN_RATIO
    max_ratio: float = MAX_RATIO

    def __post_init__(self):
        if not self.d > 0 or not math.isfinite(self.d):
            raise GeometryError(f"distance must be positive and finite, got d={self.d!r}")
        if self.R1 == 0 or self.R2 == 0:
            raise GeometryError("radius of curvature cannot be zero")
        for name, ratio in (("d/R1", self.k1), ("d/R2", self.k2)):
            # slack keeps exact thresholds (e.g. 100 nm / 1 um) on the accepted side
            if abs(ratio) > self.max_ratio * (1 + 1e-12):
                raise GeometryError(
                    f"{name} = {ratio:.4g} exceeds the validity cap |d/R| <= {self.max_ratio}"
                )
            if abs(ratio) > self.warn_ratio * (1 + 1e-12):
                warnings.warn(
                    f"{name} = {ratio:.4g} > {self.warn_ratio}: first-order curvature expansion is rough",
                    CurvatureWarning,
                    stacklevel=3,
                )

    @property
    def k1(self) -> float:
        return self.d / self.R1

    @property
    def k2(self) -> float:
        return self.d / self.R2

    @property
    def curvature_sum(self) -> float:
        """d/R1 + d/R2 (= d times the Laplacian of H)."""
        return self.k1 + self.k2

    @property
    def curvature_difference(self) -> float:
        """d/R1 - d/R2."""
        return self.k1 - self.k2

    @property
    def is_plane(self) -> bool:
        return self.k1 == 0 and self.k2 == 0

    def normalized(self) -> "SurfaceGeometry":
        if self.k1 >= self.k2:
            return self
        return replace(self, R1=self.R2, R2=self.R1)

    def swapped(self) -> "SurfaceGeometry":
        return replace(self, R1=self.R2, R2=self.R1)

    def flat(self) -> "SurfaceGeometry":
        return replace(self, R1=math.inf, R2=math.inf)


@dataclass(frozen=True)
class GreensDiagonal:
    gxx: complex | float
    gyy: complex | float
    gzz: complex | float

    def as_array(self) -> np.ndarray:
        return np.array([self.gxx, self.gyy, self.gzz])

    def __sub__(self, other: "GreensDiagonal") -> "GreensDiagonal":
        return GreensDiagonal(self.gxx - other.gxx, self.gyy - other.gyy, self.gzz - other.gzz)

    @property
    def real(self) -> "GreensDiagonal":
        return GreensDiagonal(float(np.real(self.gxx)), float(np.real(self.gyy)), float(np.real(self.gzz)))


@dataclass(frozen=True)
class CurvatureCoefficients:
    beta1: float
    beta2: float
    beta3: float


def _prefactor(d: float) -> float:
    return 1.0 / (32 * math.pi * EPS0 * d**3)


def _check_eps(eps):
    if np.real(eps) < 1:
        raise ValueError(f"eps < 1 is not supported (got {eps})")


def plane_static_green(d: float, eps) -> GreensDiagonal:
    """Image-dipole Green's function of a flat half-space: G_zz = 2 G_xx = 2 G_yy."""
    if not d > 0:
        raise GeometryError(f"distance must be positive, got d={d!r}")
    _check_eps(eps)
    gxx = _prefactor(d) * static_image_factor(eps)
    return GreensDiagonal(gxx, gxx, 2 * gxx)


def curved_static_green(geom: SurfaceGeometry, eps) -> GreensDiagonal:
    _check_eps(eps)
    K = _prefactor(geom.d) * static_image_factor(eps)
    S, D = geom.curvature_sum, geom.curvature_difference
    a = (5 + 3 * eps) / (4 * (eps + 1))
    b = (1 + 3 * eps) / (8 * (eps + 1))
    c = (3 + eps) / (4 * (eps + 1))
    gxx = K * (1 - a * S - b * D)
    gyy = K * (1 - a * S + b * D)
    gzz = 2 * K * (1 - c * S)
    return GreensDiagonal(gxx, gyy, gzz)


def curvature_coefficients(eps) -> CurvatureCoefficients:
    """Gradient-expansion coefficients obtained by matching the rotation-invariant ansatz

        G_ab = G_ab^plane + K' [beta2 lap(H) delta_ab + beta3 (d_a d_b H - lap(H) delta_ab / 2)] d
        G_zz = G_zz^plane + K' beta1 lap(H) d,        K' = 1/(32 pi eps0 d^3)

    against the small-distance expansion, using lap(H) = 1/R1 + 1/R2 and
    d_x d_x H - lap(H)/2 = (1/R1 - 1/R2)/2:

        beta1 = -2 f (3+eps)/(4(eps+1)),  beta2 = -f (5+3eps)/(4(eps+1)),
        beta3 = -2 f (1+3eps)/(8(eps+1)),  f = (eps-1)/(eps+1).
    """
    _check_eps(eps)
    f = static_image_factor(eps)
    beta1 = -2 * f * (3 + eps) / (4 * (eps + 1))
    beta2 = -f * (5 + 3 * eps) / (4 * (eps + 1))
    beta3 = -2 * f * (1 + 3 * eps) / (8 * (eps + 1))
    return CurvatureCoefficients(float(beta1), float(beta2), float(beta3))


def green_from_coefficients(geom: SurfaceGeometry, eps, coeffs: CurvatureCoefficients | None = None) -> GreensDiagonal:
    """Evaluate the gradient-expansion ansatz in the principal-axis frame."""
    if coeffs is None:
        coeffs = curvature_coefficients(eps)
    plane = plane_static_green(geom.d, eps)
    K = _prefactor(geom.d)
    lap = 1 / geom.R1 + 1 / geom.R2
    hess = (1 / geom.R1, 1 / geom.R2)
    d = geom.d
    gxx = plane.gxx + K * d * (coeffs.beta2 * lap + coeffs.beta3 * (hess[0] - lap / 2))
    gyy = plane.gyy + K * d * (coeffs.beta2 * lap + coeffs.beta3 * (hess[1] - lap / 2))
    gzz = plane.gzz + K * d * coeffs.beta1 * lap
    return GreensDiagonal(gxx, gyy, gzz)


def dispersive_plane_green(d: float, mat: Material, *, omega=None, xi=None) -> GreensDiagonal:
    """Plane Green's function with eps_st replaced by the frequency-dependent permittivity.

    Pass ``xi`` for an imaginary frequency (real result) or ``omega`` for a
    real frequency (complex result). Non-retarded only.
    """
    if (omega is None) == (xi is None):
        raise TypeError("give exactly one of omega= or xi=")
    if xi is not None:
        eps = float(permittivity_imag_axis(mat, xi))
        return plane_static_green(d, eps)
    eps = complex(permittivity(mat, omega))
    return plane_static_green(d, eps)


# providers: callables (kind, frequency) -> GreensDiagonal, kind in {"imag", "real"}


class StaticProvider:
    """Frequency-independent Green's function, curved or flat."""

    def __init__(self, geom: SurfaceGeometry, eps: float):
        self.geom = geom
        self.eps = eps
        self._g = curved_static_green(geom, eps)

    def imag(self, xi):
        return self._g

    def real(self, omega):
        return self._g

    def imag_array(self, xi: np.ndarray) -> np.ndarray:
        return np.broadcast_to(np.real(self._g.as_array()), (len(xi), 3))


class DispersiveProvider:
    """Flat surface with the single-resonance permittivity on either frequency axis."""

    def __init__(self, d: float, mat: Material):
        self.d = d
        self.mat = mat

    def imag(self, xi):
        return dispersive_plane_green(self.d, self.mat, xi=xi)

    def imag_array(self, xi: np.ndarray) -> np.ndarray:
        """Vectorised diagonal components, shape (len(xi), 3)."""
        eps = permittivity_imag_axis(self.mat, xi)
        g = _prefactor(self.d) * (eps - 1) / (eps + 1)
        return np.stack([g, g, 2 * g], axis=-1)

    def real(self, omega):
        return dispersive_plane_green(self.d, self.mat, omega=omega)
