import csv
import io
import json
import math
from pathlib import Path

import pytest

from rotvdw import cli
from rotvdw.config import ConfigError, parse_grid, read_config_text
from rotvdw.greens import SurfaceGeometry
from rotvdw.materials import lookup as material
from rotvdw.rotor import lookup
from rotvdw.spectra import level_diagram

GOLDEN = Path(__file__).parent / "golden"


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def as_value(s):
    try:
        return float(s)
    except ValueError:
        return s


def out(argv):
    code, text = cli.run(argv)
    assert code == 0
    return text


def test_list_molecules_table():
    text = out(["list", "molecules"])
    for name in ("LiH", "LiRb", "LiCs", "NaRb", "NaCs"):
        assert name in text
    assert "19.6e-30" in text


def test_list_unknown_kind_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["list", "atoms"])
    assert exc.value.code == 2


def test_unknown_molecule_exits_2(capsys):
    assert cli.main(["shift", "--molecule", "KRb"]) == 2
    assert "KRb" in capsys.readouterr().err


def test_geometry_guard_exits_3(capsys):
    assert cli.main(["shift", "--d-nm", "100", "--r1-um", "0.2"]) == 3
    assert "0.3" in capsys.readouterr().err


def test_warning_band_still_runs(capsys):
    assert cli.main(["shift", "--d-nm", "100", "--r1-um", "0.5", "--format", "csv"]) == 0
    assert "warning" in capsys.readouterr().err


def test_shift_four_to_three_ratio():
    rows = rows_of(out(["shift", "--molecule", "LiH", "--format", "csv", "--hz"]))
    by = {(int(r["l"]), int(r["m_abs"])): float(r["shift_plane"]) for r in rows}
    assert by[(1, 0)] / by[(1, 1)] == pytest.approx(4 / 3, rel=1e-12)
    assert by[(0, 0)] < 0


def test_json_matches_library_bit_for_bit():
    payload = json.loads(out(["shift", "--molecule", "NaRb", "--material", "CaF2", "--r1-um", "2", "--format", "json"]))
    assert payload["command"] == "shift"
    assert payload["columns"] == cli.SHIFT_COLUMNS
    lib = level_diagram(lookup("NaRb"), material("CaF2"), SurfaceGeometry(100e-9, 2e-6))
    assert len(payload["rows"]) == len(lib)
    for row, lv in zip(payload["rows"], lib):
        assert row["R2_m"] is None
        assert row["e_total"] == lv.e_total
        assert row["shift_curv"] == lv.shift_curv


def test_spectrum_json_has_summary():
    payload = json.loads(out(["spectrum", "--r1-um", "1", "--format", "json"]))
    assert {r["label"] for r in payload["rows"]} == {"nu2", "nu1+", "nu1-"}
    assert payload["summary"][0]["delta_nu_pm_hz"] > 0


def test_csv_distance_sweep_inverse_cube():
    rows = rows_of(out(["shift", "--sweep", "d_nm=50,100,200", "--format", "csv", "--hz"]))
    ground = [(float(r["d_m"]), float(r["shift_plane"])) for r in rows if r["l"] == "0"]
    assert [d for d, _ in ground] == [5e-8, 1e-7, 2e-7]
    for d, s in ground:
        assert s * d**3 == pytest.approx(ground[0][1] * ground[0][0] ** 3, rel=1e-12)


def test_curvature_sweep_is_linear():
    rows = rows_of(out(["spectrum", "--sweep", "curv=0.01,0.02,0.04", "--format", "csv"]))
    offsets = {}
    for r in rows:
        offsets.setdefault(r["label"], []).append(float(r["offset_hz"]))
    plus, minus = offsets["nu1+"], offsets["nu1-"]
    split = [p - m for p, m in zip(plus, minus)]
    assert split[1] / split[0] == pytest.approx(2, rel=1e-12)
    assert split[2] / split[0] == pytest.approx(4, rel=1e-12)


def test_doppler_cold_shrinks_by_sqrt_75():
    hot = rows_of(out(["spectrum", "--temp-k", "300", "--format", "csv"]))
    cold = rows_of(out(["spectrum", "--temp-k", "4", "--format", "csv"]))
    for h, c in zip(hot, cold):
        assert float(h["doppler_width_hz"]) / float(c["doppler_width_hz"]) == pytest.approx(math.sqrt(75), rel=1e-12)


def test_config_file_and_overrides(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("molecule = custom\nmolecule.omega_r_e9 = 50\nmolecule.mu_e-30 = 10\nmolecule.M_r = 60\nd_nm = 200\n")
    rows = rows_of(out(["shift", "--config", str(cfg), "--set", "T_K=4", "--format", "csv"]))
    assert rows[0]["molecule"] == "custom"
    assert float(rows[0]["d_m"]) == 2e-7
    # explicit flags win over the file
    rows = rows_of(out(["shift", "--config", str(cfg), "--d-nm", "150", "--format", "csv"]))
    assert float(rows[0]["d_m"]) == 1.5e-7


def test_config_errors():
    with pytest.raises(ConfigError):
        parse_grid("1:2")
    with pytest.raises(ConfigError):
        parse_grid("")
    assert read_config_text("d_nm = 50\n")["d_nm"] == "50"
    assert parse_grid("1:3:3") == [1.0, 2.0, 3.0]


@pytest.mark.parametrize(
    "name, argv",
    [
        ("shift_lih_sapphire_plane.csv", ["shift", "--molecule", "LiH", "--format", "csv", "--hz"]),
        ("spectrum_nacs_cylinder.csv", ["spectrum", "--molecule", "NaCs", "--r1-um", "1", "--format", "csv"]),
        ("observability_all.csv", ["observability", "--molecule", "all", "--r1-um", "1", "--format", "csv"]),
        ("materials.csv", ["list", "materials", "--format", "csv"]),
    ],
)
def test_golden_csv(name, argv):
    got = rows_of(out(argv))
    want = rows_of((GOLDEN / name).read_text())
    assert len(got) == len(want)
    for g, w in zip(got, want):
        assert g.keys() == w.keys()
        for k in w:
            gv, wv = as_value(g[k]), as_value(w[k])
            if isinstance(wv, float) and math.isfinite(wv):
                assert gv == pytest.approx(wv, rel=1e-12, abs=0), k
            else:
                assert gv == wv, k
