"""Run configuration: flat ``key = value`` text with units encoded in key names.

Recognised keys (defaults in brackets)::

    molecule   [NaCs]      built-in name, 'all', or any name with molecule.* keys
    material   [Sapphire]  built-in name, or any name with material.* keys
    d_nm       [100]
    R1_um      [inf]       'inf' / '-inf' accepted
    R2_um      [inf]
    T_K        [300]
    branch     [1-0]       upper-lower
    format     [table]     table | csv | json
    l_max      [2]
    margin     [3]
    sweep      []          d_nm=50,100,200  or  curv=0.01:0.1:10  (d/R1 - d/R2, cylinder)

    molecule.omega_r_e9, molecule.mu_e-30, molecule.M_r
    material.eps_st, material.eps_inf, material.omega_T_e12, material.gamma_e12
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import materials, rotor
from .greens import MAX_RATIO, WARN_RATIO, SurfaceGeometry
from .units import NM, UM, parse_length


class ConfigError(ValueError):
    pass


DEFAULTS = {
    "molecule": "NaCs",
    "material": "Sapphire",
    "d_nm": "100",
    "R1_um": "inf",
    "R2_um": "inf",
    "T_K": "300",
    "branch": "1-0",
    "format": "table",
    "l_max": "2",
    "margin": "3",
    "sweep": "",
    "max_ratio": str(MAX_RATIO),
    "warn_ratio": str(WARN_RATIO),
}

MOLECULE_KEYS = ("omega_r_e9", "mu_e-30", "M_r")
MATERIAL_KEYS = ("eps_st", "eps_inf", "omega_T_e12", "gamma_e12")
FORMATS = ("table", "csv", "json")
SWEEP_KEYS = ("d_nm", "curv")


def read_config_text(text: str) -> dict[str, str]:
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string("[run]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse configuration: {exc}") from exc
    return dict(parser["run"])


def read_config_file(path) -> dict[str, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return read_config_text(text)


def parse_override(item: str) -> tuple[str, str]:
    key, sep, value = item.partition("=")
    if not sep or not key.strip():
        raise ConfigError(f"override must look like key=value, got {item!r}")
    return key.strip(), value.strip()


def _float(values, key):
    try:
        return float(values[key])
    except KeyError:
        raise ConfigError(f"missing key {key!r}") from None
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {values[key]!r}") from None


def molecule_from_mapping(name: str, values: dict) -> rotor.Molecule:
    """Custom molecule from omega_r_e9 (1e9 rad/s), mu_e-30 (1e-30 C m) and M_r."""
    try:
        return rotor.Molecule.from_tabulated(
            name, _float(values, "omega_r_e9"), _float(values, "mu_e-30"), _float(values, "M_r")
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def material_from_mapping(name: str, values: dict) -> materials.Material:
    """Custom material from eps_st, eps_inf, omega_T_e12 and gamma_e12 (1e12 rad/s)."""
    try:
        return materials.Material.from_tabulated(
            name, *(_float(values, k) for k in MATERIAL_KEYS)
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _prefixed(values, prefix):
    return {k[len(prefix) + 1:]: v for k, v in values.items() if k.startswith(prefix + ".")}


@dataclass
class RunConfig:
    molecules: list
    material: materials.Material
    d: float
    R1: float
    R2: float
    T: float
    branch: tuple[int, int]
    fmt: str = "table"
    l_max: int = 2
    margin: float = 3.0
    sweep: tuple[str, list[float]] | None = None
    warn_ratio: float = WARN_RATIO
    max_ratio: float = MAX_RATIO
    raw: dict = field(default_factory=dict)

    @property
    def molecule(self) -> rotor.Molecule:
        return self.molecules[0]

    def geometry(self) -> SurfaceGeometry:
        return SurfaceGeometry(self.d, self.R1, self.R2, self.warn_ratio, self.max_ratio)

    def points(self):
        """Configurations for each sweep point (just [self] without a sweep)."""
        if self.sweep is None:
            return [self]
        key, grid = self.sweep
        out = []
        for v in grid:
            if key == "d_nm":
                out.append(replace(self, d=parse_length(repr(v), NM), sweep=None))
            else:
                R1 = self.d / v if v != 0 else math.inf
                out.append(replace(self, R1=R1, R2=math.inf, sweep=None))
        return out


def parse_grid(text: str) -> list[float]:
    text = text.strip()
    try:
        if ":" in text:
            lo, hi, n = text.split(":")
            grid = np.linspace(float(lo), float(hi), int(n)).tolist()
        else:
            grid = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ConfigError(f"bad sweep grid {text!r}") from None
    if not grid or not all(math.isfinite(g) for g in grid):
        raise ConfigError("sweep grid must be non-empty and finite")
    return grid


def parse_sweep(text: str):
    if not text:
        return None
    key, value = parse_override(text)
    if key not in SWEEP_KEYS:
        raise ConfigError(f"sweep key must be one of {SWEEP_KEYS}, got {key!r}")
    return key, parse_grid(value)


def build_config(values: dict[str, str]) -> RunConfig:
    merged = dict(DEFAULTS)
    merged.update(values)

    mol_name = merged["molecule"]
    mol_custom = _prefixed(merged, "molecule")
    if mol_custom:
        molecules = [molecule_from_mapping(mol_name, mol_custom)]
    elif mol_name.lower() == "all":
        molecules = rotor.builtin_molecules()
    else:
        try:
            molecules = [rotor.lookup(mol_name)]
        except KeyError as exc:
            raise ConfigError(exc.args[0]) from None

    mat_name = merged["material"]
    mat_custom = _prefixed(merged, "material")
    if mat_custom:
        material = material_from_mapping(mat_name, mat_custom)
    else:
        try:
            material = materials.lookup(mat_name)
        except KeyError as exc:
            raise ConfigError(exc.args[0]) from None

    try:
        d = parse_length(merged["d_nm"], NM)
        R1 = parse_length(merged["R1_um"], UM)
        R2 = parse_length(merged["R2_um"], UM)
        T = float(merged["T_K"])
        l_max = int(merged["l_max"])
        margin = float(merged["margin"])
        warn_ratio = float(merged["warn_ratio"])
        max_ratio = float(merged["max_ratio"])
    except ValueError as exc:
        raise ConfigError(f"bad numeric value: {exc}") from None
    if not d > 0 or not math.isfinite(d):
        raise ConfigError("d_nm must be positive and finite")
    if not T > 0:
        raise ConfigError("T_K must be positive")

    try:
        lu, ll = (int(x) for x in merged["branch"].replace(",", "-").split("-"))
    except ValueError:
        raise ConfigError(f"branch must look like '1-0', got {merged['branch']!r}") from None
    if lu != ll + 1 or ll < 0:
        raise ConfigError("branch must connect adjacent levels, e.g. 1-0 or 2-1")

    fmt = merged["format"]
    if fmt not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}")

    return RunConfig(
        molecules=molecules,
        material=material,
        d=d,
        R1=R1,
        R2=R2,
        T=T,
        branch=(lu, ll),
        fmt=fmt,
        l_max=l_max,
        margin=margin,
        sweep=parse_sweep(merged["sweep"]),
        warn_ratio=warn_ratio,
        max_ratio=max_ratio,
        raw=merged,
    )
