import csv

import pytest

from swipt_secrecy.cli import CSV_HEADER, main, parse_grid


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sweep_csv_shape_and_header(capsys):
    code, out, _ = run(capsys, "sweep", "--axis", "gbar_s_db", "--grid", "0:50:21")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "axis,axis_value,arch_s,arch_e,mode,p_quad,p_series,p_mc,mc_ci,divergence"
    assert lines[0].split(",") == CSV_HEADER
    assert len(lines) == 1 + 21 * 4 * 2
    row = next(csv.DictReader(lines))
    assert row["axis"] == "gbar_s_db" and row["p_mc"] == ""


def test_sweep_is_byte_identical_with_mc(tmp_path):
    args = ["sweep", "--axis", "n_eves", "--grid", "1,3", "--mc", "--mc-samples", "2000"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["-o", str(a)]) == 0
    assert main(args + ["-o", str(b), "--workers", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_single_eavesdropper_modes_agree(capsys):
    code, out, _ = run(capsys, "outage", "--set", "n_eves=1", "--mode", "both")
    assert code == 0
    vals = {}
    for line in out.splitlines():
        arch, mode, _, value = line.split()[:4]
        vals.setdefault(arch, {})[mode] = float(value)
    assert len(vals) == 4
    for v in vals.values():
        assert v["noncoop"] == pytest.approx(v["coop"], abs=1e-8)


def test_outage_methods(capsys):
    code, out, _ = run(capsys, "outage", "--arch", "sp-in", "--mode", "coop", "--method", "all",
                       "--mc-samples", "2000", "--series-variant", "as_published")
    assert code == 0
    assert "quadrature" in out and "series_as_published" in out and "monte_carlo" in out
    assert "diverged=true" in out


def test_unknown_key_exit_2(capsys):
    code, _, err = run(capsys, "outage", "--set", "warp_factor=9")
    assert code == 2 and "warp_factor" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "validate", "--mc-samples", "50")[0] == 2
    assert run(capsys, "sweep", "--axis", "rho_s")[0] == 2
    assert run(capsys, "sweep", "--axis", "rho_s", "--grid", "0.5,0.2")[0] == 2
    assert run(capsys, "sweep", "--axis", "rho_s", "--grid", "a:b")[0] == 2
    assert run(capsys, "outage", "--config", "/no/such/file")[0] == 2


def test_validate_passes_at_reference_point(capsys):
    code, out, _ = run(capsys, "validate", "--mc-samples", "20000")
    assert code == 0 and "8/8 agree" in out


def test_validate_exit_1_when_oracle_disagrees(capsys, monkeypatch):
    import swipt_secrecy.cli as cli
    from swipt_secrecy.outage import OutageEstimate

    monkeypatch.setattr(cli, "outage_quadrature",
                        lambda p, a, m: OutageEstimate(0.0, "quadrature"))
    code, out, _ = run(capsys, "validate", "--mc-samples", "2000")
    assert code == 1 and "result: FAIL" in out


def test_numerical_failure_exit_3(capsys, monkeypatch):
    import swipt_secrecy.cli as cli
    from swipt_secrecy.quadrature import QuadratureError

    def boom(*a, **k):
        raise QuadratureError("did not converge", {"intervals": 20000})

    monkeypatch.setattr(cli, "outage_quadrature", boom)
    code, _, err = run(capsys, "outage")
    assert code == 3 and "intervals" in err


def test_dump_config_round_trip(tmp_path, capsys):
    first = tmp_path / "a.conf"
    assert main(["outage", "--set", "delta_s=0.31", "--set", "omega_e_db=13",
                 "--dump-config", "-o", str(first)]) == 0
    second = tmp_path / "b.conf"
    assert main(["outage", "--config", str(first), "--dump-config", "-o", str(second)]) == 0
    assert first.read_text() == second.read_text()


def test_region_csv(capsys):
    code, out, _ = run(capsys, "region", "--rho-grid", "0.2,0.6", "--mc-samples", "2000",
                       "--mode", "coop")
    assert code == 0
    rows = list(csv.DictReader(out.splitlines()))
    assert [r["mode"] for r in rows] == ["coop", "coop"]


def test_figure_preset_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--figure", "fig6c", "--arch", "in-in", "--mode", "noncoop")
    assert code == 0 and len(out.splitlines()) == 22


def test_parse_grid():
    assert parse_grid("0:10:3") == [0.0, 5.0, 10.0]
    assert parse_grid("1, 2.5") == [1.0, 2.5]


def test_validate_matches_committed_golden_report(tmp_path, shipped_config):
    from pathlib import Path
    golden = Path(__file__).parent / "golden" / "validate_table1_seed42.txt"
    out = tmp_path / "report.txt"
    assert main(["validate", "--config", str(shipped_config), "--seed", "42",
                 "-o", str(out)]) == 0
    assert out.read_text() == golden.read_text()
    assert "quadrature vs monte carlo:       8/8 agree" in golden.read_text()
