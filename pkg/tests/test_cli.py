import csv
import io
import json

import pytest

from swcorr.cli import ConfigError, RunConfig, main

FAST = ["--N", "14", "--quad-order", "40"]


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


@pytest.mark.parametrize("argv", [
    ["run", "--suite", "heisenberg-core", "--lambda", "-1"],
    ["run", "--suite", "heisenberg-core", "--lambda", "0"],
    ["run", "--suite", "heisenberg-core", "--n", "3"],
    ["run", "--suite", "heisenberg-core", "--N", "10"],
    ["run", "--suite", "heisenberg-core", "--N", "40", "--quad-order", "40"],
    ["run", "--suite", "heisenberg-core", "--k", "su2", "--n", "1"],
    ["run", "--suite", "heisenberg-core", "--k", "su2", "--n", "2", "--j", "0.3"],
    ["run", "--suite", "heisenberg-core", "--m", "1", "2"],
    ["run", "--suite", "no-such-suite"],
    ["run", "--suite", "heisenberg-core", "--tol", "abc"],
    ["run", "--suite", "heisenberg-core", "--tol", "-1"],
    ["run", "--suite", "heisenberg-core", "--k", "sphere"],
    ["run"],
    ["frobnicate"],
])
def test_configuration_errors_exit_2(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_config_validation_raises():
    with pytest.raises(ConfigError):
        RunConfig(lam=float("nan"))
    with pytest.raises(ConfigError):
        RunConfig(k="torus", n=2, m=(1,))
    assert RunConfig(n=2, m=(1, 1)).choice().dim_v == 1


def test_heisenberg_core_passes(capsys):
    code, out = run(capsys, "run", "--suite", "heisenberg-core", "--lambda", "1", "--n", "1", "--N", "24")
    assert code == 0
    doc = json.loads(out.out)
    assert doc["schema"] == "swcorr.report/1" and doc["passed"]
    assert doc["config"] == {"lambda": 1.0, "n": 1, "N": 24, "quad_order": 60, "k": "torus",
                             "m": [1], "seed": 0}
    assert all(c["passed"] for c in doc["reports"][0]["checks"])


def test_tight_tolerance_exits_1(capsys):
    code, out = run(capsys, "run", "--suite", "heisenberg-core", "--tol", "1e-20", *FAST)
    assert code == 1
    assert json.loads(out.out)["passed"] is False


def test_single_check_override(capsys):
    code, out = run(capsys, "run", "--suite", "heisenberg-core", "--tol", "pi.homomorphism=0", *FAST)
    checks = {c["name"]: c for c in json.loads(out.out)["reports"][0]["checks"]}
    assert checks["pi.homomorphism"]["tol"] == 0.0
    assert code == (0 if checks["pi.homomorphism"]["residual"] == 0 else 1)


def test_all_is_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", "--suite", "all", "--seed", "7", "--out", str(a)]) == 0
    assert main(["run", "--suite", "all", "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert len(doc["reports"]) == 9


def test_csv_output(capsys):
    code, out = run(capsys, "run", "--suite", "heisenberg-core", "--suite", "segal-bargmann",
                    "--format", "csv", *FAST)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.out)))
    assert rows[0] == ["suite", "check", "residual", "tol", "passed"]
    assert sum(r == rows[0] for r in rows) == 1
    assert {r[0] for r in rows[1:]} == {"heisenberg-core", "segal-bargmann"}
    mant = rows[1][2].split("e")[0].replace("-", "").replace(".", "")
    assert len(mant) == 17


@pytest.mark.slow
def test_sw_axioms_spin_half(capsys):
    code, out = run(capsys, "run", "--suite", "sw-axioms", "--k", "su2", "--j", "0.5", "--n", "2")
    assert code == 0, out.out


@pytest.mark.parametrize("which", ["dpi-symbols", "dsigma-symbols", "moment-map"])
@pytest.mark.parametrize("kind", [[], ["--k", "su2", "--n", "2", "--j", "1"]], ids=["torus", "su2"])
def test_tables(capsys, which, kind):
    code, out = run(capsys, "table", which, *kind)
    assert code == 0
    doc = json.loads(out.out)
    assert doc["schema"] == "swcorr.table/1" and doc["passed"]
    first = [r for r in doc["rows"] if r["point"] == 0]
    assert all(r["z"] == [[0.0, 0.0]] * len(r["z"]) for r in first)
    assert max(r["residual"] for r in doc["rows"]) < 1e-6


def test_table_values_at_origin(capsys):
    """At (0, phi0): Z gives i lam; the torus generator gives i m (trace term included)."""
    lam = 1.5
    code, out = run(capsys, "table", "dpi-symbols", "--lambda", str(lam), "--m", "2")
    rows = [r for r in json.loads(out.out)["rows"] if r["point"] == 0]
    # basis order X, Y, Z, then A = i
    z_row, a_row = rows[2], rows[3]
    assert complex(*z_row["computed"]) == pytest.approx(1j * lam, abs=1e-12)
    assert complex(*a_row["computed"]) == pytest.approx(2j + 0.5j, abs=1e-12)

    code, out = run(capsys, "table", "moment-map", "--lambda", str(lam), "--m", "2")
    rows = [r for r in json.loads(out.out)["rows"] if r["point"] == 0]
    assert complex(*rows[2]["computed"]) == pytest.approx(1j * lam, abs=1e-12)
    assert complex(*rows[3]["computed"]) == pytest.approx(2j, abs=1e-12)

    code, out = run(capsys, "table", "dsigma-symbols", "--lambda", str(lam))
    rows = [r for r in json.loads(out.out)["rows"] if r["basis"] == 2]
    assert all(complex(*r["computed"]) == pytest.approx(1j * lam, abs=1e-12) for r in rows)


def test_table_csv(capsys):
    code, out = run(capsys, "table", "moment-map", "--format", "csv", "--points", "2")
    rows = list(csv.reader(io.StringIO(out.out)))
    assert rows[0][:4] == ["basis", "point", "z0_re", "z0_im"]
    assert rows[0][-1] == "residual" and len(rows) == 1 + 2 * 4
