import io
import json

import pytest

from geoquant.cli import run


def _run(args, monkeypatch=None):
    out = io.StringIO()
    code = run(args, out=out)
    return code, [json.loads(line) for line in out.getvalue().splitlines()]


def test_roundtrip_example():
    code, reports = _run(["roundtrip", "--dim", "4", "--trials", "100", "--seed", "7"])
    assert code == 0 and len(reports) == 100
    assert all(r["passed"] for r in reports)
    assert set(reports[0]) == {"check", "passed", "max_error", "tolerance", "runtime_ms"}


def test_odd_dimension_and_unknown_command(capsys):
    assert run(["roundtrip", "--dim", "3"]) == 2
    assert run(["frobnicate"]) == 2


def test_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"dim": 2, "trials": 2}))
    code, reports = _run(["ccr", "--config", str(cfg), "--trials", "3"])
    assert code == 0 and len(reports) == 4       # e1 check + 3 trials (flag wins)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["ccr", "--config", str(bad)]) == 2
    assert run(["ccr", "--config", str(tmp_path / "missing.json")]) == 2


def test_seed_env_and_determinism(monkeypatch):
    def values(args):
        _, reports = _run(args)
        return [r["max_error"] for r in reports]

    monkeypatch.setenv("GEOQUANT_SEED", "11")
    a = values(["intertwine", "--trials", "3"])
    b = values(["intertwine", "--trials", "3", "--seed", "11"])
    c = values(["intertwine", "--trials", "3", "--seed", "12"])
    assert a == b and a != c
    monkeypatch.setenv("GEOQUANT_SEED", "x")
    assert run(["intertwine", "--trials", "1"]) == 2


def test_lattice_vacuum(tmp_path):
    path = tmp_path / "vac.csv"
    code, reports = _run(["lattice-vacuum", "--sites", "8", "--mass", "1.0", "--spacing", "1.0", "--out", str(path)])
    assert code == 0 and reports[0]["passed"]
    rows = path.read_text().splitlines()
    assert rows[0] == "site,value" and len(rows) == 9
    assert run(["lattice-vacuum", "--mass", "-1"]) == 2


@pytest.mark.parametrize("cmd", ["bargmann", "affine", "density-probe"])
def test_other_suites(cmd):
    code, reports = _run([cmd] + (["--trials", "2"] if cmd != "density-probe" else []))
    assert code == 0 and reports and all(r["passed"] for r in reports)


def test_sample(tmp_path):
    path = tmp_path / "s.csv"
    code, _ = _run(["sample", "--dim", "4", "--points", "3", "--label", "0.1", "0.2", "0.3", "0.4", "--out", str(path)])
    assert code == 0
    rows = path.read_text().splitlines()
    assert rows[0] == "phi_1,phi_2,re,im" and len(rows) == 10
    assert run(["sample", "--label", "1.0"]) == 2


def test_failure_exit_code(monkeypatch):
    from geoquant import checks
    monkeypatch.setattr(checks, "monotonicity_violation", lambda r: 1.0)
    assert run(["density-probe"], out=io.StringIO()) == 1
