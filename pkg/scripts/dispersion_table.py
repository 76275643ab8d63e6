"""Relative change of the ground-state shift when the static permittivity is
replaced by the Lorentz-oscillator model, for every molecule and material.

The deviation is first order in omega_r / omega_T: it comes from Matsubara
frequencies of order omega_T, where the polarizability has not yet died off.
"""

from __future__ import annotations

import argparse

from rotvdw import engine, greens, materials, rotor
from rotvdw.units import NM


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--d-nm", type=float, default=100.0)
    p.add_argument("--temp-k", type=float, default=300.0)
    args = p.parse_args(argv)

    d = args.d_nm * NM
    ground = rotor.AzimuthalState(0, 0)
    mats = materials.builtin_materials()
    print("molecule," + ",".join(f"{m.name}_percent" for m in mats) + ",omega_r_over_min_omega_T")
    for mol in rotor.builtin_molecules():
        cells = []
        for mat in mats:
            disp = engine.free_energy_shift(mol, ground, args.temp_k, greens.DispersiveProvider(d, mat)).total
            static = engine.shift_total_static(mol, ground, greens.SurfaceGeometry(d), mat.eps_st)
            cells.append(f"{100 * (disp / static - 1):+.3f}")
        ratio = mol.omega_r / min(m.omega_T for m in mats)
        print(f"{mol.name}," + ",".join(cells) + f",{ratio:.3e}")


if __name__ == "__main__":
    main()
