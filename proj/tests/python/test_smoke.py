"""Smoke tests for the Python module and the CLI binary."""

import math
import os
import subprocess

import pytest

rydblock = pytest.importorskip("rydblock")

MAT = rydblock.MaterialConstants()


def cli_path():
    path = os.environ.get("RYDBLOCK_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("RYDBLOCK_CLI not set")
    return path


def run_cli(*args, **kwargs):
    return subprocess.run([cli_path(), *args], capture_output=True, text=True, **kwargs)


def test_exciton_properties():
    level = rydblock.ExcitonLevel(25, 1, 0.23)
    assert rydblock.mean_radius_um(level, MAT) == pytest.approx(1.03015, rel=1e-12)
    assert rydblock.radiative_linewidth_ghz(24, MAT) == pytest.approx(2.0254629629, rel=1e-9)
    assert rydblock.blockade_volume_um3(24, MAT) == pytest.approx(1375.9414272, rel=1e-12)
    assert rydblock.collective_rabi_ghz(9.0, 8) == pytest.approx(math.sqrt(8) * 9.0)


def test_site_lattice():
    lattice = rydblock.site_lattice(
        rydblock.CrystalGeometry(4.0, 2.0), rydblock.ExcitonLevel(24, 1, 0.23), MAT
    )
    assert len(lattice) == 8
    assert lattice.pitch == pytest.approx(1.8986, rel=1e-12)
    assert list(lattice.positions[0]) == [0.0, 0.0, 0.0]


def test_level_validation():
    with pytest.raises(ValueError):
        rydblock.mean_radius_um(rydblock.ExcitonLevel(0, 0, 0.0), MAT)


def test_emitter_dynamics():
    params = rydblock.EmitterParams(6.0, 1.0)
    assert rydblock.steady_population(params) == pytest.approx(36.0 / 73.0, rel=1e-12)
    assert rydblock.fwhm_ghz(params) == pytest.approx(math.sqrt(73.0), rel=1e-12)

    tau = [0.0, 1.0]
    closed = rydblock.g2_closed_form(params, tau)
    assert closed.value[0] == 0.0
    assert closed.value[1] == pytest.approx(0.5639496521553025, rel=1e-10)
    numeric = rydblock.g2_numeric(params, tau)
    assert numeric.value[1] == pytest.approx(closed.value[1], abs=1e-6)


def test_mollow_triplet():
    params = rydblock.EmitterParams(6.0, 1.0)
    freq = [-40.0 + 0.1 * k for k in range(801)]
    spec = rydblock.emission_spectrum(params, freq)
    centers = sorted(peak.center for peak in spec.peaks)
    assert len(centers) == 3
    assert centers[0] == pytest.approx(-6.0, abs=0.1 + 1e-9)
    assert centers[1] == pytest.approx(0.0, abs=0.1 + 1e-9)
    assert centers[2] == pytest.approx(6.0, abs=0.1 + 1e-9)


def test_blockade_report():
    params = rydblock.default_params()
    report = rydblock.blockade_report_for(params)
    assert report.n_sites == 8
    assert len(report.pair_terms) == 28
    assert report.rate == pytest.approx(2.000137150955269, rel=1e-12)
    assert report.g2_zero == pytest.approx(0.3965061813316564, rel=1e-12)


def test_config_and_sweep():
    params = rydblock.parse_config("sweep.values = 1, 2, 6\n")
    rows = rydblock.run_sweep(params)
    assert [row.sweep_value for row in rows] == [1.0, 2.0, 6.0]
    assert rows[0].rho_ee == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert rows[0].error == ""
    with pytest.raises(rydblock.ConfigError):
        rydblock.parse_config("level.n = 0\n")


def test_optimize():
    opts = rydblock.OptimizeOptions()
    best = rydblock.optimize_point(rydblock.default_params(), opts)
    assert best.derived.g2_zero <= opts.g2_max
    assert best.derived.rate == pytest.approx(1.2027440316061917, rel=1e-9)


def test_cli_report_runs():
    result = run_cli("report")
    assert result.returncode == 0
    assert "g2(0) sensitivity" in result.stdout
    assert "eq7" in result.stdout and "observed" in result.stdout


def test_cli_exit_codes():
    bad_config = run_cli("report", "--set", "level.n=0")
    assert bad_config.returncode == 1

    infeasible = run_cli("optimize", "--side-min", "0.5", "--side-max", "1.0")
    assert infeasible.returncode == 3

    unknown = run_cli("report", "--set", "level.bogus=1")
    assert unknown.returncode == 1

    coarse_grid = run_cli("spectrum", "--points", "5", "--half-span", "40")
    assert coarse_grid.returncode == 2


def test_cli_sweep_deterministic():
    first = run_cli("sweep")
    second = run_cli("sweep")
    assert first.returncode == 0
    assert first.stdout == second.stdout
    header = first.stdout.splitlines()[0]
    assert header == "sweep_value,N,omega_collective_GHz,ratio,rho_ee,rate_GHz,P_rr,g2_zero,error"


def test_cli_quantity_subcommands():
    props = run_cli("props")
    assert props.returncode == 0
    assert props.stdout.startswith("quantity,value")
    assert "blockade_volume_um3,1375.9414272" in props.stdout

    steady = run_cli("steady")
    assert steady.returncode == 0
    assert "rho_ee,0.4937481424072436" in steady.stdout

    g2 = run_cli("g2", "--points", "5", "--numeric")
    assert g2.returncode == 0
    assert g2.stdout.splitlines()[0] == "tau_ns,g2,g2_numeric"
    assert g2.stdout.splitlines()[1].startswith("0,0,")

    blockade = run_cli("blockade")
    assert blockade.returncode == 0
    assert blockade.stdout.splitlines()[0] == "site_i,site_j,distance_um,v_ij_GHz,rho2"
    assert len(blockade.stdout.splitlines()) == 1 + 28


def test_cli_spectrum_json():
    result = run_cli("spectrum", "--format", "json", "--half-span", "40",
                     "--points", "801", "--set", "drive.rabi_single=2.1213203435596424",
                     "--set", "drive.purcell=1", "--set", "material.linewidth_coeff=13.824")
    # sqrt(8) * 2.1213 = 6 GHz collective drive against a 1 GHz linewidth
    assert result.returncode == 0
    import json

    doc = json.loads(result.stdout)
    centers = sorted(peak["center_GHz"] for peak in doc["peaks"])
    assert len(centers) == 3
    assert abs(centers[1]) <= 0.1 + 1e-9


def test_cli_json_report(tmp_path):
    out = tmp_path / "report.json"
    result = run_cli("report", "--format", "json", "-o", str(out))
    assert result.returncode == 0
    import json

    doc = json.loads(out.read_text())
    assert doc["inputs"]["n"] == 24
    assert doc["derived"]["N"] == 8
    assert len(doc["sensitivity"]) == 4
