import pytest

from hyperspec.cli import (
    EXIT_FAIL, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, CommandReport, fmt_complex, fmt_scalar,
    main, run,
)
from fractions import Fraction


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return {
        "edge3": put("edge3.hgf", "3 3 1\n1 2 3\n"),
        "edge4": put("edge4.hgf", "4 4 1\n1 2 3 4\n"),
        "tri": put("tri.hgf", "2 3 3\n1 2\n2 3\n1 3\n"),
        "path3": put("p3.hgf", "2 3 2\n1 2\n2 3\n"),
        "k43": put("k43.hgf", "3 4 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n"),
        "bad": put("bad.hgf", "3 3 1\n1 2\n"),
        "empty": put("empty.hgf", "3 4 0\n"),
        "big": put("big.hgf", "4 9 1\n1 2 3 4\n"),
        "k2": put("k2.hgf", "2 2 1\n1 2\n"),
        "unit": put("unit.tns", "3 2\n1 1 1  1\n2 2 2  1\n"),
        "long": put("long.hgf", "3 13 6\n1 2 3\n3 4 5\n5 6 7\n7 8 9\n9 10 11\n11 12 13\n"),
    }


def test_info(files):
    r = run(["info", files["edge3"]])
    assert r.exit_code == EXIT_OK
    assert r.payload["degrees"] == [1, 1, 1] and r.payload["core_vertices"] == [1, 2, 3]
    assert run(["info", files["tri"]]).payload["core_vertices"] == []


def test_parse_error_exit(files, capsys):
    assert main(["info", files["bad"]]) == EXIT_USAGE
    assert "line 2" in capsys.readouterr().err


def test_trace(files):
    r = run(["trace", files["edge3"], "--tensor", "lap", "--d", "1", "--formula"])
    assert r.payload["trace"] == "12" and r.payload["verdict"] == "EQUAL"
    assert run(["trace", files["edge3"], "--d", "2"]).payload["trace"] == "0"
    assert run(["trace", files["big"], "--d", "4"]).exit_code == EXIT_USAGE
    assert run(["trace", files["edge3"], "--d", "4", "--formula"]).exit_code == EXIT_USAGE


def test_charpoly(files):
    r = run(["charpoly", files["k43"], "--t", "1", "--regular"])
    assert r.payload["coefficients"] == ["-96"] and r.payload["verdict"] == "EQUAL"
    r = run(["charpoly", files["unit"], "--n2"])
    assert r.payload["coefficients"] == ["1", "-4", "6", "-4", "1"]
    assert run(["charpoly", files["edge3"], "--t", "5"]).exit_code == EXIT_USAGE


def test_rho(files):
    assert float(run(["rho", files["tri"]]).payload["rho"]) == pytest.approx(2.0)
    r = run(["rho", files["empty"]])
    assert r.exit_code == EXIT_OK and float(r.payload["rho"]) == 0 and r.warnings
    assert run(["rho", files["long"], "--max-iter", "1"]).exit_code == EXIT_NUMERIC


def test_rho_power_slap(files, tmp_path):
    out = tmp_path / "c3_4.hgf"
    assert run(["power", files["tri"], "--k", "4", "--out", str(out)]).exit_code == EXIT_OK
    r = run(["rho", str(out), "--tensor", "slap"])
    assert float(r.payload["rho"]) == pytest.approx(3.0, abs=1e-6)


def test_oddbip_labeling(files):
    r = run(["oddbip", files["edge4"], "--witness"])
    assert r.payload["V1"] == [1] and r.payload["witness"]["residual"] == "0"
    assert run(["oddbip", files["tri"]]).payload["odd_bipartite"] is False
    assert run(["labeling", files["edge3"]]).payload["reason"] == "k odd"


def test_power_text(files, capsys):
    assert main(["power", files["k2"], "--k", "3"]) == EXIT_OK
    assert capsys.readouterr().out == "3 3 1\n1 2 3\n"
    assert run(["power", files["edge3"], "--k", "4"]).exit_code == EXIT_USAGE


def test_lift(files):
    r = run(["lift", files["tri"], "--k", "4", "--tensor", "slap"])
    assert r.exit_code == EXIT_OK
    assert all(row["status"] == "verified" for row in r.payload["lifts"])
    lifted = [v for row in r.payload["lifts"] for v in row["lifted"]]
    assert "3+0i" in lifted or "3" in lifted
    assert run(["lift", files["path3"], "--k", "4", "--tensor", "slap"]).exit_code == EXIT_USAGE
    assert run(["lift", files["path3"], "--k", "3"]).exit_code == EXIT_OK


def test_conjecture(files):
    r = run(["conjecture", files["edge4"]])
    assert r.payload["consistent"] and r.payload["condition_4_half_sum"]
    r = run(["conjecture", "--k", "3", "--nmax", "5"])
    totals = r.payload["totals"]
    assert totals["(1)=T (4)=T"] == totals["(1)=F (4)=T"] == 0
    r = run(["conjecture", "--k", "4", "--nmax", "6"])
    assert r.payload["totals"]["violations (1)=>(4)"] == 0
    assert r.payload["totals"]["specimens (4) and not (1)"] == 13
    assert run(["conjecture", "--k", "8", "--nmax", "9"]).exit_code == EXIT_USAGE
    assert run(["conjecture"]).exit_code == EXIT_USAGE


def test_check():
    assert run(["check"]).exit_code == EXIT_OK


def test_check_failure_exit(monkeypatch):
    from hyperspec import checks
    monkeypatch.setattr(checks, "CHECKS", [("broken", lambda: (False, "forced"))])
    r = run(["check"])
    assert r.exit_code == EXIT_FAIL


def test_json_roundtrip(files, capsys):
    for argv in (["info", files["edge3"]], ["rho", files["tri"]],
                 ["oddbip", files["edge4"], "--witness"], ["lift", files["tri"], "--k", "3"]):
        assert main(argv + ["--json"]) == EXIT_OK
        text = capsys.readouterr().out
        report = CommandReport.from_json(text)
        assert report.to_json() == text.strip()
        assert report == run(argv)


def test_global_flags_before_subcommand(files):
    assert run(["--json", "--seed", "5", "info", files["edge3"]]).exit_code == EXIT_OK


def test_deterministic(files):
    a = run(["lift", files["tri"], "--k", "4", "--tensor", "slap"]).to_json()
    assert a == run(["lift", files["tri"], "--k", "4", "--tensor", "slap"]).to_json()


def test_formatting():
    assert fmt_scalar(Fraction(-3, 4)) == "-3/4"
    assert fmt_complex(1.5 - 2j) == "1.5-2i"
