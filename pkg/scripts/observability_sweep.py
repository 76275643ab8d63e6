"""Ratio of the curvature splitting to the Doppler and natural widths.

Scans every built-in molecule over temperatures and curvature ratios at a
fixed distance and prints one CSV row per point, with the observability
verdict at the chosen margin.
"""

from __future__ import annotations

import argparse

from rotvdw import greens, materials, rotor, spectra
from rotvdw.units import NM


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--material", default="Sapphire")
    p.add_argument("--d-nm", type=float, default=100.0)
    p.add_argument("--temps", default="4,77,300")
    p.add_argument("--ratios", default="0.01,0.03,0.1")
    p.add_argument("--margin", type=float, default=spectra.OBSERVABILITY_MARGIN)
    args = p.parse_args(argv)

    mat = materials.lookup(args.material)
    d = args.d_nm * NM
    print("molecule,T_K,d_over_R,delta_nu_pm_hz,ratio_to_doppler,ratio_to_natural,observable")
    for mol in rotor.builtin_molecules():
        for T in (float(t) for t in args.temps.split(",")):
            for ratio in (float(r) for r in args.ratios.split(",")):
                geom = greens.SurfaceGeometry(d, d / ratio)
                r = spectra.observability_report(mol, mat, geom, T, args.margin)
                print(
                    f"{mol.name},{T:g},{ratio:g},{r.delta_nu_pm:.4e},"
                    f"{r.ratio_to_doppler:.4g},{r.ratio_to_natural:.4g},{r.observable}"
                )


if __name__ == "__main__":
    main()
