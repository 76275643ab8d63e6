import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rotvdw import rotor
from rotvdw.rotor import (
    AzimuthalState,
    Molecule,
    ParityState,
    azimuthal_states,
    dipole_element,
    energy,
    lookup,
    oracle_second_moment,
    parity_states,
    quadrature_direction_cosine,
    reflect,
    reflection_action,
    reflection_eigenvalue,
    second_moments_m_basis,
    second_moments_parity_basis,
    transition_omega,
    transition_weights,
)
from rotvdw.units import HBAR, H

UNIT = Molecule("unit", 1.0, 1.0, 1.0)


@pytest.fixture(scope="module")
def lih():
    return lookup("LiH")


def states(lmax):
    return [s for l in range(lmax + 1) for s in azimuthal_states(l)]


# ------------------------------------------------------------------ registry


def test_table_values():
    assert lookup("LiH").omega_r == pytest.approx(2790e9)
    assert lookup("NaCs").mu == pytest.approx(19.5e-30)
    assert [m.name for m in rotor.builtin_molecules()] == ["LiH", "LiRb", "LiCs", "NaRb", "NaCs"]


def test_lambda_r_matches_table_to_quoted_precision():
    for mol in rotor.builtin_molecules():
        quoted = rotor.TABLE_LAMBDA_MM[mol.name]
        last_digit = 10.0 ** -len(str(quoted).split(".")[1])
        # within one unit of the last quoted digit (NaRb: 73.87 vs 73.8)
        assert abs(mol.lambda_r() * 1e3 - quoted) <= last_digit


def test_narb_wavelength():
    assert lookup("NaRb").lambda_r() == pytest.approx(73.8e-3, rel=0.01)


def test_relative_masses():
    # 23Na + 133Cs and 7Li + 1H
    assert lookup("NaCs").M_r == pytest.approx(155.895, abs=1e-3)
    assert lookup("LiH").M_r == pytest.approx(8.0238, abs=1e-4)


def test_invalid_molecule():
    with pytest.raises(ValueError):
        Molecule("bad", -1.0, 1e-30, 10)


# ------------------------------------------------------------------ states


def test_state_validation():
    with pytest.raises(ValueError):
        AzimuthalState(1, 2)
    with pytest.raises(ValueError):
        ParityState(2, 0, -1)
    with pytest.raises(ValueError):
        ParityState(1, 1, 0)
    assert len(parity_states(3)) == 7 == len(azimuthal_states(3))


# ------------------------------------------------------------------ energies


def test_energies(lih):
    assert energy(lih, 0) == 0
    assert energy(lih, 1) - energy(lih, 0) == pytest.approx(HBAR * lih.omega_r, rel=1e-15)
    assert energy(lih, 2) / H == pytest.approx(3 * 2790e9 / (2 * math.pi), rel=1e-12)
    assert energy(lih, 2) / H == pytest.approx(1.332e12, rel=1e-3)
    with pytest.raises(ValueError):
        energy(lih, -1)


def test_transition_omega(lih):
    w = lih.omega_r
    assert transition_omega(lih, AzimuthalState(1, 0), AzimuthalState(0, 0)) == -w
    assert transition_omega(lih, AzimuthalState(0, 0), AzimuthalState(1, 1)) == w
    assert transition_omega(lih, AzimuthalState(2, 0), AzimuthalState(1, 0)) == -2 * w


@given(st.sampled_from(states(4)), st.sampled_from(states(4)))
def test_transition_omega_antisymmetric(a, b):
    assert transition_omega(UNIT, a, b) == -transition_omega(UNIT, b, a)


# ------------------------------------------------------------------ dipole elements


def test_dipole_examples(lih):
    g, e10 = AzimuthalState(0, 0), AzimuthalState(1, 0)
    assert dipole_element(lih, g, e10, "z") == pytest.approx(lih.mu / math.sqrt(3), rel=1e-14)
    assert dipole_element(lih, g, AzimuthalState(2, 0), "z") == 0
    assert dipole_element(lih, g, e10, "x") == 0


def test_closed_form_matches_quadrature():
    worst = 0.0
    for a in states(5):
        for b in states(6):
            for ax in range(3):
                q = quadrature_direction_cosine(b, a, ax, 14)
                worst = max(worst, abs(rotor.direction_cosine(b, a, ax) - q))
    assert worst < 1e-12


def test_selection_rules_and_hermiticity():
    for a in states(5):
        for b in states(5):
            for ax in "xyz":
                v = dipole_element(UNIT, a, b, ax)
                if abs(b.l - a.l) != 1:
                    assert v == 0
                if ax == "z" and b.m != a.m:
                    assert v == 0
                if ax in "xy" and abs(b.m - a.m) != 1:
                    assert v == 0
                assert v == pytest.approx(np.conj(dipole_element(UNIT, b, a, ax)), abs=1e-15)


# ------------------------------------------------------------------ second moments


def test_ground_state_isotropic(lih):
    sm = second_moments_m_basis(lih, AzimuthalState(0, 0))
    mu2 = lih.mu**2
    assert (sm.xx, sm.yy, sm.zz) == pytest.approx((mu2 / 3,) * 3, rel=1e-14)


@pytest.mark.parametrize(
    "m, xx, zz",
    [(0, 1 / 5, 3 / 5), (1, 2 / 5, 1 / 5), (-1, 2 / 5, 1 / 5)],
)
def test_l1_moments(m, xx, zz):
    sm = second_moments_m_basis(UNIT, AzimuthalState(1, m))
    assert sm.xx == pytest.approx(xx) and sm.yy == pytest.approx(xx) and sm.zz == pytest.approx(zz)
    st_ = AzimuthalState(1, m)
    assert oracle_second_moment(UNIT, st_, st_, "z", "z").real == pytest.approx(zz, abs=1e-12)
    assert oracle_second_moment(UNIT, st_, st_, "x", "x").real == pytest.approx(xx, abs=1e-12)


def test_parity_doublet_l1():
    plus = second_moments_parity_basis(UNIT, ParityState(1, 1, 1))
    minus = second_moments_parity_basis(UNIT, ParityState(1, 1, -1))
    # 3 L/(8L - 6) and L/(8L - 6) at L = 2
    assert plus.xx == pytest.approx(0.6) and plus.yy == pytest.approx(0.2)
    assert minus.xx == pytest.approx(0.2) and minus.yy == pytest.approx(0.6)
    assert plus.xx + plus.yy == pytest.approx(0.8)


def test_parity_l2_m2_unsplit():
    for s in (1, -1):
        sm = second_moments_parity_basis(UNIT, ParityState(2, 2, s))
        assert sm.xx == pytest.approx(9 / 21) and sm.yy == pytest.approx(9 / 21)
        ps = ParityState(2, 2, s)
        assert oracle_second_moment(UNIT, ps, ps, "x", "x").real == pytest.approx(9 / 21, abs=1e-12)


def test_off_diagonal_x2_in_l1_doublet():
    v = oracle_second_moment(UNIT, AzimuthalState(1, 1), AzimuthalState(1, -1), "x", "x")
    assert v == pytest.approx(-0.2, abs=1e-12)


@pytest.mark.parametrize("st_", [s for l in range(6) for s in parity_states(l)], ids=str)
def test_trace_identity(st_):
    sm = second_moments_parity_basis(UNIT, st_)
    assert sm.trace == pytest.approx(1.0, abs=1e-14)
    az = AzimuthalState(st_.l, st_.m_abs)
    assert second_moments_m_basis(UNIT, az).trace == pytest.approx(1.0, abs=1e-14)


def test_closure_of_transition_weights():
    """sum over l_b = l_a +- 1 of mu_i^ab mu_j^ba equals <a|mu_i mu_j|a>."""
    for l in range(5):
        for st_ in parity_states(l):
            W = sum(transition_weights(UNIT, st_, lb) for lb in (l - 1, l + 1) if lb >= 0)
            sm = second_moments_parity_basis(UNIT, st_)
            assert np.allclose(W, np.diag(sm.as_array()), atol=1e-12, rtol=0)


def test_oracle_closure():
    for st_ in states(5):
        tot = sum(oracle_second_moment(UNIT, st_, st_, i, i) for i in "xyz")
        assert tot == pytest.approx(1.0, abs=1e-10)


def test_oracle_reports_nonconvergence():
    with pytest.raises(rotor.OracleConvergenceError):
        oracle_second_moment(UNIT, AzimuthalState(5, 3), AzimuthalState(5, 3), "x", "x", order=2)


def test_oracle_scales_with_mu(lih):
    g = AzimuthalState(0, 0)
    assert oracle_second_moment(lih, g, g, "z", "z").real == pytest.approx(lih.mu**2 / 3, rel=1e-10)


# ------------------------------------------------------------------ reflections


def test_reflection_rules():
    assert reflection_action(AzimuthalState(1, 1), "x") == (1, AzimuthalState(1, -1))
    assert reflection_action(AzimuthalState(1, 1), "y") == (-1, AzimuthalState(1, -1))
    assert reflection_eigenvalue(ParityState(1, 1, 1), "y") == 1
    with pytest.raises(ValueError):
        reflection_action(AzimuthalState(1, 1), "z")


@pytest.mark.parametrize("ps", [s for l in range(5) for s in parity_states(l)], ids=str)
@pytest.mark.parametrize("axis", ["x", "y"])
def test_parity_states_are_reflection_eigenstates(ps, axis):
    img = reflect(ps, axis)
    lam = reflection_eigenvalue(ps, axis)
    orig = dict((az, c) for c, az in ps.components())
    for az in set(img) | set(orig):
        assert img.get(az, 0) == pytest.approx(lam * orig.get(az, 0), abs=1e-15)


def test_degenerate_doublet_diagonalization():
    """Eigenvectors of mu_x^2 in {|l,1>,|l,-1>} are the parity states."""
    element = lambda b, k, i: oracle_second_moment(UNIT, b, k, i, i)  # noqa: E731
    for l in range(1, 5):
        vals, vecs = rotor.diagonalize_doublet(UNIT, l, 1, (1, 0, 0), element)
        for s, col in ((-1, 0), (1, 1)):  # ascending: s = - has the smaller <mu_x^2>
            expected = second_moments_parity_basis(UNIT, ParityState(l, 1, s)).xx
            assert vals[col] == pytest.approx(expected, abs=1e-10)
            ref = np.array([c for c, _ in ParityState(l, 1, s).components()])
            assert abs(np.vdot(ref, vecs[:, col])) == pytest.approx(1.0, abs=1e-10)
