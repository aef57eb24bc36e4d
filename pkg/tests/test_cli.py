import json

import pytest

from nilbicone.cli import main
from nilbicone.report import FAIL, PASS, Report, dumps, exit_code, loads
from nilbicone.suites import parse_algebras, run_suite


def test_report_roundtrip():
    reports = run_suite("components")
    text = dumps(reports)
    assert dumps(loads(text)) == text
    assert json.loads(text)["schema"] == 1


def test_report_rules():
    with pytest.raises(ValueError):
        Report("x", "maybe")
    with pytest.raises(ValueError):
        Report("x", PASS, provenance="GUESS")
    assert Report.compare("x", 1, 2).status == FAIL
    inconclusive = Report("x", "inconclusive")
    assert not inconclusive.passed and exit_code([inconclusive]) == 0
    assert exit_code([Report("y", "budget-exceeded")]) == 0
    assert exit_code([Report.compare("z", 1, 2)]) == 1
    with pytest.raises(ValueError):
        loads(json.dumps({"schema": 99, "reports": []}))


def test_determinism_with_seed():
    a = dumps(run_suite("identities", [2, 3], seed=5), timings=False)
    b = dumps(run_suite("identities", [2, 3], seed=5), timings=False)
    assert a == b


def test_parse_algebras():
    assert parse_algebras("sl2,sl4") == [2, 4]
    assert parse_algebras(None) == [2, 3, 4]
    with pytest.raises(ValueError):
        parse_algebras("so5")
    with pytest.raises(ValueError):
        run_suite("nonsense")


def test_components_command(capsys, tmp_path):
    out = tmp_path / "c.json"
    assert main(["components", "A1", "A2", "A3", "A4", "A5", "--json", str(out)]) == 0
    data = loads(out.read_text())
    values = {r.claim_id: r.computed for r in data if r.claim_id.startswith("components-")}
    assert values == {"components-A1": 1, "components-A2": 2, "components-A3": 4,
                      "components-A4": 7, "components-A5": 12}
    assert "PASS" in capsys.readouterr().out


def test_components_unknown_reference(tmp_path):
    out = tmp_path / "c.json"
    assert main(["components", "D4", "--json", str(out)]) == 0
    (r,) = [r for r in loads(out.read_text()) if r.claim_id == "components-D4"]
    assert r.status == "inconclusive" and r.computed > 0


def test_dim_command(tmp_path):
    out = tmp_path / "d.json"
    assert main(["dim", "--algebra", "sl2", "--field", "q", "--json", str(out)]) == 0
    (r,) = loads(out.read_text())
    assert r.computed == 3 and r.status == "pass"


def test_dim_budget_exceeded_is_not_failure(tmp_path, capsys):
    out = tmp_path / "d.json"
    code = main(["dim", "--algebra", "sl3", "--field", "p:65521", "--budget-spairs", "2", "--json", str(out)])
    assert code == 0
    (r,) = loads(out.read_text())
    assert r.status == "budget-exceeded"
    assert "budget exceeded" in capsys.readouterr().out


def test_jets_command():
    assert main(["jets", "--algebra", "sl2", "--order", "2"]) == 0


def test_export_is_deterministic(tmp_path, capsys):
    p1, p2 = tmp_path / "a.txt", tmp_path / "b.txt"
    main(["export", "--algebra", "sl3", "--variety", "NilpotentBicone", "-o", str(p1)])
    main(["export", "--algebra", "sl3", "--variety", "NilpotentBicone", "-o", str(p2)])
    assert p1.read_bytes() == p2.read_bytes()
    lines = p1.read_text().splitlines()
    assert lines[0].startswith("vars: x0,") and len(lines) == 8
    main(["export", "--algebra", "sl2"])
    assert len(capsys.readouterr().out.splitlines()) == 4
    main(["export", "--algebra", "sl2", "--variety", "NilpotentCone", "--order", "1"])
    assert "x0_lvl1" in capsys.readouterr().out


def test_report_command_suite(tmp_path):
    out = tmp_path / "r.json"
    assert main(["report", "nullcone", "--algebra", "sl2,sl3", "--json", str(out), "--no-timings"]) == 0
    reports = loads(out.read_text())
    assert all(r.status == "pass" for r in reports)
    assert all(r.elapsed_ms == 0 for r in reports)


def test_bad_field_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["dim", "--field", "p:10"])
    assert exc.value.code == 2
