from __future__ import annotations

import pytest

from randreal.cli import EXIT_OK, EXIT_PARSE, EXIT_REFUTED, EXIT_UNKNOWN, EXIT_USAGE, main
from randreal.dyadic import DyadicRational
from randreal.mu import MeasureReport

# reads bits 0..2 on the first branch; with depth 2 the region 00 stays open
THREE_READS = "(lam (ifz (oracle (num 0)) (ifz (oracle (num 1)) (ifz (oracle (num 2)) (num 0) (num 0)) (num 0)) (num 0)))"


@pytest.fixture
def put(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text + "\n")
        return str(path)

    return write


def run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_mu_realised(put, capsys):
    code, out = run(capsys, "check", put("f", "(= 0 0)"), put("r", "5"), "--mode", "mu")
    assert code == EXIT_OK
    assert "verdict: MuRealised" in out and "interval 1/2^0 1/2^0 Exact" in out


def test_check_classical_refuted(put, capsys):
    code, out = run(capsys, "check", put("f", "bot"), put("r", "5"), "--mode", "classical")
    assert code == EXIT_REFUTED


def test_check_unknown_below_the_depth(put, capsys):
    args = ("check", put("f", "(and (= 0 0) (= 0 0))"), put("r", THREE_READS), "--depth", "2")
    assert run(capsys, *args, "--r", "1")[0] == EXIT_UNKNOWN
    code, out = run(capsys, *args)
    assert code == EXIT_OK and "at-least: 3/2^2" in out


def test_check_F_family(put, capsys):
    code, _ = run(capsys, "check", put("f", "(= 0 0)"), put("r", "5"), "--mode", "F", "--family", "comeagre")
    assert code == EXIT_OK


def test_parse_and_usage_errors(put, capsys):
    assert run(capsys, "check", put("f", "(= 0"), put("r", "5"))[0] == EXIT_PARSE
    assert run(capsys, "check", "/nonexistent/file", put("r", "5"))[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as err:
        main(["check"])
    assert err.value.code == EXIT_USAGE
    assert run(capsys, "check", put("f", "(= 0 0)"), put("r", "5"), "--fuel", "0")[0] == EXIT_USAGE


def test_synth(put, tmp_path, capsys):
    out_file = tmp_path / "code.txt"
    code, out = run(capsys, "synth", put("f", "(exists x (= x 2))"), "-o", str(out_file))
    assert code == EXIT_OK and "recheck: Realised" in out
    realiser = out_file.read_text().strip()
    assert run(capsys, "check", put("g", "(exists x (= x 2))"), put("r", realiser), "--mode", "classical")[0] == EXIT_OK
    assert run(capsys, "synth", put("h", "(= 0 1)"))[0] == EXIT_UNKNOWN
    code, out = run(capsys, "synth", put("p", "(forall x (= (+ x 0) x))"))
    assert code == EXIT_OK and "class: UniversalPi1" in out


def test_structured_report_round_trips(put, capsys):
    code, out = run(capsys, "measure", put("f", "(and (= 0 0) (= 0 0))"), put("r", THREE_READS), "--depth", "2", "--format", "structured")
    assert code in (EXIT_OK, EXIT_UNKNOWN)
    lines = [ln for ln in out.splitlines() if ln.split(" ")[0] in ("interval", "cylinder", "region", "context")]
    report = MeasureReport.from_text("\n".join(lines) + "\n")
    assert report.interval.lo == DyadicRational(3, 2)
    assert len(report.partition) == 3


@pytest.mark.parametrize(
    "argv",
    [("diagonal",), ("induction", "--n", "3"), ("pushup",), ("lem",), ("positive-measure",)],
)
def test_demos_match(argv, capsys):
    code, out = run(capsys, "demo", *argv)
    assert code == EXIT_OK and "match: yes" in out


def test_induction_demo_value(capsys):
    _, out = run(capsys, "demo", "induction", "--n", "3")
    assert "computed: [1/2^3, 1/2^3] Exact" in out


def test_default_fuel_from_environment(put, monkeypatch, capsys):
    monkeypatch.setenv("RANDREAL_DEFAULT_FUEL", "7")
    _, out = run(capsys, "check", put("f", "(= 0 0)"), put("r", "5"))
    assert "fuel=7 " in out
    monkeypatch.setenv("RANDREAL_DEFAULT_FUEL", "seven")
    assert run(capsys, "check", put("f", "(= 0 0)"), put("r", "5"))[0] == EXIT_USAGE


def test_bes(put, capsys):
    code, out = run(capsys, "bes", "--code", put("c", "(lam (num 42))"), "--input", "0")
    assert code == EXIT_OK and "value: 42" in out and "k: 4" in out
