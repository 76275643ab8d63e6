"""Plane and curvature splittings of the 1 -> 0 line as a function of distance.

Prints CSV: d_nm, delta_nu_12_hz, delta_nu_pm_hz, conductor_limit_hz. The
curvature ratio d/R is held fixed, so both splittings fall as 1/d^3.
"""

from __future__ import annotations

import argparse
import math

import numpy as np

from rotvdw import greens, materials, rotor, spectra
from rotvdw.units import NM


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--molecule", default="NaCs")
    p.add_argument("--material", default="Sapphire")
    p.add_argument("--ratio", type=float, default=0.1, help="d/R1 of a cylinder (R2 infinite)")
    p.add_argument("--d-min-nm", type=float, default=20.0)
    p.add_argument("--d-max-nm", type=float, default=2000.0)
    p.add_argument("--points", type=int, default=12)
    args = p.parse_args(argv)

    mol, mat = rotor.lookup(args.molecule), materials.lookup(args.material)
    print("d_nm,delta_nu_12_hz,delta_nu_pm_hz,conductor_limit_hz")
    for d_nm in np.geomspace(args.d_min_nm, args.d_max_nm, args.points):
        d = float(d_nm) * NM
        geom = greens.SurfaceGeometry(d, d / args.ratio if args.ratio else math.inf)
        print(
            f"{d_nm:.6g},{spectra.splitting_plane(mol, mat, d):.6e},"
            f"{spectra.splitting_curvature(mol, mat, geom):.6e},"
            f"{spectra.splitting_curvature_conductor(mol.mu, geom):.6e}"
        )


if __name__ == "__main__":
    main()
