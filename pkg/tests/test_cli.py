import csv
import io
import json
import math

import pytest

from whitortho import cli
from whitortho.quadrature import BUDGET_ENV
from whitortho.whittaker import WhittakerOrder, whittaker_w


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# --- tabulate -------------------------------------------------------------


def test_tabulate_default_grid(capsys):
    code, out, _ = run(capsys, "tabulate", "--kappa", "0", "--mu", "1")
    assert code == 0
    assert out.splitlines()[0] == "x,W,dWdx,regime,err"
    table = rows(out)
    assert len(table) == 50
    assert all(r["regime"] in ("series", "asymptotic") for r in table)
    assert float(table[0]["x"]) == pytest.approx(0.1) and float(table[-1]["x"]) == pytest.approx(20.0)


def test_tabulate_values_round_trip_exactly(capsys):
    _, out, _ = run(capsys, "tabulate", "--kappa", "0.3", "--mu", "1.7", "--x-lo", "0.5", "--x-hi", "50", "--points", "7")
    order = WhittakerOrder(0.3, 1.7)
    for r in rows(out):
        assert float(r["W"]) == whittaker_w(order, float(r["x"])).value


def test_tabulate_macdonald_column(capsys):
    code, out, _ = run(capsys, "tabulate", "--kappa", "0", "--mu", "2", "--crosscheck-macdonald", "--points", "12")
    assert code == 0
    for r in rows(out):
        assert float(r["W"]) == pytest.approx(float(r["macdonald"]), rel=1e-8)


def test_tabulate_macdonald_needs_kappa_zero(capsys):
    code, _, err = run(capsys, "tabulate", "--kappa", "0.2", "--crosscheck-macdonald")
    assert code == 2 and "kappa = 0" in err


def test_tabulate_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert cli.main(["tabulate", "--kappa", "-0.5", "--mu", "2.5", "--spacing", "linear", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_tabulate_json_several_mu(capsys):
    code, out, _ = run(capsys, "tabulate", "--mu", "1,2", "--format", "json", "--points", "3")
    assert code == 0
    data = json.loads(out)
    assert [t["mu"] for t in data] == [1, 2]
    assert set(data[0]["rows"][0]) == {"x", "W", "dWdx", "regime", "err"}


def test_tabulate_csv_single_mu_only(capsys):
    code, _, _ = run(capsys, "tabulate", "--mu", "1,2")
    assert code == 2


def test_seventeen_digits(capsys):
    _, out, _ = run(capsys, "tabulate", "--mu", "1", "--points", "2")
    w = rows(out)[0]["W"]
    assert float(w) == float(f"{float(w):.17g}")
    assert cli.fmt(0.1) == "0.10000000000000001"
    assert cli.fmt(math.nan) == "nan"


# --- verify ---------------------------------------------------------------


def test_verify_single_wronskian_row(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "wronskian", "--xi", "0.1", "--mu", "1.0",
                       "--mu-prime", "1.7", "--kappa", "0.3")
    assert code == 0
    (r,) = rows(out)
    assert float(r["error"]) <= 1e-8 and r["passed"] == "true"
    assert "kappa=0.29999999999999999" in r["params"]


def test_verify_gamma_identities(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "gamma-identities", "--format", "json")
    assert code == 0
    reports = json.loads(out)
    assert reports and all(r["passed"] and r["tol"] == 1e-12 for r in reports)


def test_verify_failure_exit_code(capsys):
    # an impossible tolerance turns every row into a failure
    code, out, _ = run(capsys, "verify", "--suite", "normalization", "--tol", "1e-300", "--mu", "0.7")
    table = rows(out)
    assert code == (0 if all(r["passed"] == "true" for r in table) else 1)
    code, _, _ = run(capsys, "verify", "--suite", "ode", "--tol", "1e-300")
    assert code == 1


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "bogus")
    assert code == 2 and "bogus" in err


# --- config and errors ----------------------------------------------------


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"kappa": 0.5, "mu": [1.5], "x_range": {"lo": 1.0, "hi": 2.0, "points": 3}}))
    _, out, _ = run(capsys, "tabulate", "--config", str(cfg))
    table = rows(out)
    assert len(table) == 3
    assert float(table[0]["W"]) == whittaker_w(WhittakerOrder(0.5, 1.5), 1.0).value
    _, out, _ = run(capsys, "tabulate", "--config", str(cfg), "--points", "4", "--kappa", "0")
    table = rows(out)
    assert len(table) == 4
    assert float(table[0]["W"]) == whittaker_w(WhittakerOrder(0.0, 1.5), 1.0).value


@pytest.mark.parametrize("content", ["{", "[1, 2]", '{"colour": "red"}', '{"tolerances": {"quadrature": -1}}'])
def test_bad_config(tmp_path, capsys, content):
    cfg = tmp_path / "bad.json"
    cfg.write_text(content)
    code, _, err = run(capsys, "tabulate", "--config", str(cfg))
    assert code == 2 and "configuration error" in err


@pytest.mark.parametrize("argv", [
    ["tabulate", "--x-lo", "-1"],
    ["tabulate", "--x-lo", "3", "--x-hi", "2"],
    ["tabulate", "--points", "0"],
    ["tabulate", "--mu", "one"],
    ["frobnicate"],
])
def test_bad_flags(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_budget_env(monkeypatch, capsys):
    monkeypatch.setenv(BUDGET_ENV, "many")
    assert run(capsys, "tabulate", "--points", "2")[0] == 2


def test_evaluation_failure_exit_code(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise ArithmeticError("forced")
    monkeypatch.setattr(cli, "whittaker_w_pair", boom)
    code, out, _ = run(capsys, "tabulate", "--points", "2")
    assert code == 3
    assert all(r["regime"].startswith("error:") for r in rows(out))


# --- transform ------------------------------------------------------------


def test_transform_zero_input(tmp_path, capsys):
    spec = tmp_path / "zero.csv"
    spec.write_text("mu,f\n1.0,0\n2.0,0\n3.0,0\n")
    code, out, _ = run(capsys, "transform", "--input", str(spec), "--format", "json", "--points", "4")
    assert code == 0
    doc = json.loads(out)
    assert all(r["f"] == 0 for r in doc["spectral"])
    assert all(r["g"] == 0 for r in doc["radial"])
    assert doc["sup_error"] == 0


def test_transform_bad_input(tmp_path, capsys):
    spec = tmp_path / "bad.csv"
    spec.write_text("m,value\n1,2\n")
    assert run(capsys, "transform", "--input", str(spec))[0] == 2
    assert run(capsys, "transform", "--input", str(tmp_path / "missing.csv"))[0] == 2


def test_read_spectral_formats(tmp_path):
    bundled = cli.read_spectral(None)
    assert bundled.support == (0.5, 4.0)
    js = tmp_path / "f.json"
    js.write_text(json.dumps([{"mu": float(m), "f": float(v)} for m, v in zip(bundled.mu_grid, bundled.values)]))
    again = cli.read_spectral(str(js))
    assert list(again.values) == list(bundled.values)


@pytest.mark.slow
def test_transform_bundled_example(tmp_path):
    out = tmp_path / "rt.csv"
    code = cli.main(["transform", "--out", str(out), "--points", "5"])
    assert code == 0
    summary = rows((tmp_path / "rt_summary.csv").read_text())[0]
    assert float(summary["sup_error"]) <= 0.01 and summary["passed"] == "true"
    spectral = rows(out.read_text())
    assert [float(r["mu"]) for r in spectral] == [1.7, 2.0, 2.3]
    assert len(rows((tmp_path / "rt_radial.csv").read_text())) == 5
