"""Command-line front end: ``rotvdw {list,shift,spectrum,observability}``.

Exit codes: 0 success, 2 configuration error, 3 curvature validity-guard rejection.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings

from . import materials, rotor, spectra
from .config import ConfigError, RunConfig, build_config, parse_override, read_config_file
from .greens import CurvatureWarning, GeometryError
from .units import CM_E30, MM, RAD_S_E9, RAD_S_E12, H, format_si

EXIT_OK, EXIT_CONFIG, EXIT_GUARD = 0, 2, 3

MOLECULE_COLUMNS = ["name", "omega_r_e9_rad_s", "lambda_r_mm", "mu_e-30_Cm", "M_r"]
MATERIAL_COLUMNS = ["name", "eps_st", "eps_inf", "omega_T_e12_rad_s", "gamma_e12_rad_s"]
SHIFT_COLUMNS = [
    "molecule", "material", "d_m", "R1_m", "R2_m", "l", "m_abs", "s",
    "e_free", "shift_plane", "shift_curv", "e_total", "unit",
]
SPECTRUM_COLUMNS = [
    "molecule", "material", "d_m", "R1_m", "R2_m", "T_K", "label", "upper", "lower",
    "frequency_hz", "offset_hz", "polarization", "visible_from",
    "natural_width_hz", "doppler_width_hz",
]
SUMMARY_COLUMNS = [
    "molecule", "d_m", "R1_m", "R2_m", "nu_free_hz",
    "delta_nu_12_hz", "delta_nu_pm_hz", "delta_nu_pm_conductor_hz",
]
OBSERVABILITY_COLUMNS = [
    "molecule", "material", "d_m", "R1_m", "R2_m", "T_K", "nu_r_hz",
    "delta_nu_12_hz", "delta_nu_pm_hz", "delta_nu_pm_conductor_hz",
    "natural_width_hz", "doppler_width_hz", "ratio_to_doppler", "ratio_to_natural",
    "margin", "observable",
]

# OPTION -> config key
_FLAG_KEYS = {
    "molecule": "molecule",
    "material": "material",
    "d_nm": "d_nm",
    "r1_um": "R1_um",
    "r2_um": "R2_um",
    "temp_k": "T_K",
    "branch": "branch",
    "format": "format",
    "sweep": "sweep",
    "l_max": "l_max",
    "margin": "margin",
}


# --------------------------------------------------------------------------- records


def _geom_fields(cfg: RunConfig):
    return {"d_m": cfg.d, "R1_m": cfg.R1, "R2_m": cfg.R2}


def list_records(kind: str) -> list[dict]:
    if kind == "molecules":
        return [
            {
                "name": m.name,
                "omega_r_e9_rad_s": m.omega_r / RAD_S_E9,
                "lambda_r_mm": m.lambda_r() / MM,
                "mu_e-30_Cm": m.mu / CM_E30,
                "M_r": m.M_r,
            }
            for m in rotor.builtin_molecules()
        ]
    if kind == "materials":
        return [
            {
                "name": m.name,
                "eps_st": m.eps_st,
                "eps_inf": m.eps_inf,
                "omega_T_e12_rad_s": m.omega_T / RAD_S_E12,
                "gamma_e12_rad_s": m.gamma / RAD_S_E12,
            }
            for m in materials.builtin_materials()
        ]
    raise ConfigError(f"unknown registry {kind!r}")


def shift_records(cfg: RunConfig, hz: bool = False) -> list[dict]:
    rows = []
    scale = 1 / H if hz else 1.0
    for point in cfg.points():
        geom = point.geometry()
        for mol in point.molecules:
            for lv in spectra.level_diagram(mol, point.material, geom, point.l_max):
                rows.append(
                    {
                        "molecule": mol.name,
                        "material": point.material.name,
                        **_geom_fields(point),
                        "l": lv.state.l,
                        "m_abs": lv.state.m_abs,
                        "s": lv.state.s,
                        "e_free": lv.e_free * scale,
                        "shift_plane": lv.shift_plane * scale,
                        "shift_curv": lv.shift_curv * scale,
                        "e_total": lv.e_total * scale,
                        "unit": "Hz" if hz else "J",
                    }
                )
    return rows


def spectrum_records(cfg: RunConfig) -> tuple[list[dict], list[dict]]:
    rows, summary = [], []
    for point in cfg.points():
        geom = point.geometry()
        for mol in point.molecules:
            lines = spectra.transition_lines(mol, point.material, geom, point.branch)
            for ln in lines:
                rows.append(
                    {
                        "molecule": mol.name,
                        "material": point.material.name,
                        **_geom_fields(point),
                        "T_K": point.T,
                        "label": ln.label,
                        "upper": ln.upper.label,
                        "lower": ln.lower.label,
                        "frequency_hz": ln.frequency,
                        "offset_hz": ln.offset,
                        "polarization": ln.polarization_axis,
                        "visible_from": "".join(sorted(ln.visible_from)),
                        "natural_width_hz": ln.natural_width,
                        "doppler_width_hz": ln.doppler_width(point.T),
                    }
                )
            lu, ll = point.branch
            summary.append(
                {
                    "molecule": mol.name,
                    **_geom_fields(point),
                    "nu_free_hz": (rotor.energy(mol, lu) - rotor.energy(mol, ll)) / H,
                    "delta_nu_12_hz": spectra.splitting_plane(mol, point.material, point.d),
                    "delta_nu_pm_hz": spectra.splitting_curvature(mol, point.material, geom),
                    "delta_nu_pm_conductor_hz": spectra.splitting_curvature_conductor(mol.mu, geom),
                }
            )
    return rows, summary


def observability_records(cfg: RunConfig) -> list[dict]:
    rows = []
    for point in cfg.points():
        geom = point.geometry()
        for mol in point.molecules:
            r = spectra.observability_report(mol, point.material, geom, point.T, point.margin)
            rows.append(
                {
                    "molecule": r.molecule,
                    "material": r.material,
                    "d_m": r.d,
                    "R1_m": r.R1,
                    "R2_m": r.R2,
                    "T_K": r.T,
                    "nu_r_hz": r.nu_r,
                    "delta_nu_12_hz": r.delta_nu_12,
                    "delta_nu_pm_hz": r.delta_nu_pm,
                    "delta_nu_pm_conductor_hz": r.delta_nu_pm_conductor,
                    "natural_width_hz": r.natural_width,
                    "doppler_width_hz": r.doppler_width,
                    "ratio_to_doppler": r.ratio_to_doppler,
                    "ratio_to_natural": r.ratio_to_natural,
                    "margin": r.margin,
                    "observable": r.observable,
                }
            )
    return rows


# --------------------------------------------------------------------------- output


def _json_value(v):
    if isinstance(v, float) and math.isinf(v):
        return None
    return v


def to_json(command: str, rows: list[dict], columns: list[str], summary=None) -> str:
    doc = {"command": command, "columns": columns, "rows": [{c: _json_value(r[c]) for c in columns} for r in rows]}
    if summary is not None:
        doc["summary"] = [{c: _json_value(s[c]) for c in SUMMARY_COLUMNS} for s in summary]
    return json.dumps(doc, indent=2)


def to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: repr(float(r[c])) if isinstance(r[c], float) else r[c] for c in columns})
    return buf.getvalue()


def _cell(col, value, unit=None):
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        if col.endswith("_hz") or unit == "Hz" and col in ("e_free", "shift_plane", "shift_curv", "e_total"):
            digits = 12 if col in ("frequency_hz", "nu_free_hz", "nu_r_hz", "e_total", "e_free") else 5
            return format_si(value, "Hz", digits)
        if col.endswith("_m"):
            return "inf" if math.isinf(value) else format_si(value, "m", 4)
        return f"{value:.6g}"
    return str(value)


def to_table(rows: list[dict], columns: list[str]) -> str:
    cells = [[_cell(c, r[c], r.get("unit")) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def list_table(kind: str, rows: list[dict]) -> str:
    if kind == "molecules":
        return "\n".join(
            f"{r['name']:<5} {r['omega_r_e9_rad_s']:g}e9 rad/s  lambda_r {r['lambda_r_mm']:.1f} mm  "
            f"{r['mu_e-30_Cm']:g}e-30 C·m  M_r {r['M_r']:.3f}"
            for r in rows
        )
    return "\n".join(
        f"{r['name']:<9} eps_st {r['eps_st']:g}  eps_inf {r['eps_inf']:g}  "
        f"omega_T {r['omega_T_e12_rad_s']:g}e12 rad/s  Gamma {r['gamma_e12_rad_s']:g}e12 rad/s"
        for r in rows
    )


def render(command, rows, columns, fmt, summary=None) -> str:
    if fmt == "json":
        return to_json(command, rows, columns, summary)
    if fmt == "csv":
        return to_csv(rows, columns)
    out = to_table(rows, columns)
    if summary:
        out += "\n\n" + to_table(summary, SUMMARY_COLUMNS)
    return out


# --------------------------------------------------------------------------- argparse


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="inline override (repeatable)")
    p.add_argument("--molecule", help="built-in name or 'all'")
    p.add_argument("--material", help="built-in surface material")
    p.add_argument("--d-nm", type=str, help="molecule-surface distance, nm")
    p.add_argument("--r1-um", type=str, help="principal radius R1, um ('inf' for flat)")
    p.add_argument("--r2-um", type=str, help="principal radius R2, um ('inf' for flat)")
    p.add_argument("--temp-k", type=str, help="temperature, K")
    p.add_argument("--branch", help="upper-lower rotational levels, e.g. 1-0")
    p.add_argument("--format", choices=("table", "csv", "json"))
    p.add_argument("--sweep", help="d_nm=50,100,200 or curv=lo:hi:n")
    p.add_argument("--l-max", type=str)
    p.add_argument("--margin", type=str, help="observability factor over both linewidths")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotvdw",
        description="van der Waals shifts of molecular rotational levels near curved dielectric surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("list", help="print built-in molecules or materials")
    p.add_argument("kind", choices=("materials", "molecules"))
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p = sub.add_parser("shift", help="shifted level diagram")
    _common(p)
    p.add_argument("--hz", action="store_true", help="report energies as E/h in Hz")
    p = sub.add_parser("spectrum", help="line catalogue of one branch")
    _common(p)
    p = sub.add_parser("observability", help="curvature splitting vs natural and Doppler widths")
    _common(p)
    return parser


def config_from_args(args) -> RunConfig:
    values: dict[str, str] = {}
    if args.config:
        values.update(read_config_file(args.config))
    for item in args.set:
        k, v = parse_override(item)
        values[k] = v
    for attr, key in _FLAG_KEYS.items():
        v = getattr(args, attr, None)
        if v is not None:
            values[key] = str(v)
    return build_config(values)


def run(argv=None) -> tuple[int, str]:
    """Execute a command; returns (exit code, stdout text)."""
    args = make_parser().parse_args(argv)
    if args.command == "list":
        rows = list_records(args.kind)
        cols = MOLECULE_COLUMNS if args.kind == "molecules" else MATERIAL_COLUMNS
        if args.format == "table":
            return EXIT_OK, list_table(args.kind, rows)
        return EXIT_OK, render("list " + args.kind, rows, cols, args.format)

    cfg = config_from_args(args)
    if args.command == "shift":
        return EXIT_OK, render("shift", shift_records(cfg, args.hz), SHIFT_COLUMNS, cfg.fmt)
    if args.command == "spectrum":
        rows, summary = spectrum_records(cfg)
        return EXIT_OK, render("spectrum", rows, SPECTRUM_COLUMNS, cfg.fmt, summary)
    return EXIT_OK, render("observability", observability_records(cfg), OBSERVABILITY_COLUMNS, cfg.fmt)


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"rotvdw: warning: {message}", file=sys.stderr)


def main(argv=None) -> int:
    warnings.simplefilter("always", CurvatureWarning)
    warnings.showwarning = _show_warning
    try:
        code, text = run(argv)
    except GeometryError as exc:
        print(f"rotvdw: geometry rejected: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ConfigError as exc:
        print(f"rotvdw: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
