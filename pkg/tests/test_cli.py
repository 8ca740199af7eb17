import io
import json
import random
import shutil
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctelescope.arith import RatFunc, format_ratfunc
from ctelescope.cli import UsageError, dumps, exit_code, main, run, run_corpus
from ctelescope.errors import DivisionByZero, ExprSyntaxError
from ctelescope.expr import parse_ratfunc
from ctelescope.shiftcase import QSHIFT, SHIFT
from helpers import random_ratfunc

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def job(command, fx, fy, case="shift", **options):
    return {"command": command, "case": case, "input": {"fx": fx, "fy": fy}, "options": options}


def test_parse_examples():
    K = parse_ratfunc("(x-y)/(y*(q*y-1))", QSHIFT)
    assert format_ratfunc(K) == "(-y + x)/(q*y^2 - y)"
    assert parse_ratfunc("1", SHIFT) == RatFunc.const(1)
    f = parse_ratfunc("(y+2)/y", SHIFT)
    assert format_ratfunc(f) == "(y + 2)/y"
    assert parse_ratfunc("2*(y^2-1)/(4*(y-1))", SHIFT) == parse_ratfunc("(y+1)/2", SHIFT)


def test_parse_errors_carry_position():
    with pytest.raises(ExprSyntaxError) as err:
        parse_ratfunc("x+*y", SHIFT)
    assert err.value.pos == 2
    with pytest.raises(ExprSyntaxError) as err:
        parse_ratfunc("q*x", SHIFT)
    assert err.value.pos == 0
    with pytest.raises(DivisionByZero):
        parse_ratfunc("1/(x-x)", SHIFT)


@given(st.sampled_from([SHIFT, QSHIFT]), st.integers(0, 10**6))
def test_print_parse_round_trip(case, seed):
    f = random_ratfunc(random.Random(seed), case, 4)
    assert parse_ratfunc(format_ratfunc(f), case) == f


def test_run_examples():
    out = run(job("telescope", "(x+1)/(x-y+1)", "(x-y)/(y+1)"))
    assert out["order"] == 1 and out["telescoper"] == ["-2", "1"]
    assert "certificate" in out
    out = run(job("telescope", "(x+1)/(x-y+1)", "(x-y)/(y+1)", emit_certificate=False))
    assert "certificate" not in out
    out = run(job("bounds", "(x+2*y+1)/(x+y+1)", "(x+2*y+1)*(x+2*y+2)/((y+1)*(x+y+1))"))
    assert out == {"upper": 2, "lower": 1, "dim_complement": 2, "deg_D0": 0}
    out = run(job("reduce", "1", "1"))
    assert out["remainder"]["value"] == "0"


def test_verify_accepts_a_supplied_pair():
    base = job("verify", "(x+1)/(x-y+1)", "(x-y)/(y+1)")
    assert run(base) == {"verified": True, "order": 1}
    cert = run(job("telescope", "(x+1)/(x-y+1)", "(x-y)/(y+1)"))["certificate"]
    assert run({**base, "telescoper": ["-2", "1"], "certificate": cert})["verified"]
    assert not run({**base, "telescoper": ["-3", "1"], "certificate": cert})["verified"]


def test_errors_are_structured():
    out = run(job("telescope", "y", "x"))
    assert out["error"] == "Incompatible" and out["residual"] == "y - x"
    assert exit_code(out) == 1
    out = run(job("telescope", "(y^2-x)/(y^2-x-1)", "(y^2-x)/((y+1)^2-x)"))
    assert out["no_telescoper"] and out["evidence"] == "y^2 - x"
    assert exit_code(out) == 1
    out = run(job("telescope", "(x+2*y+1)/(x+y+1)", "(x+2*y+1)*(x+2*y+2)/((y+1)*(x+y+1))",
                  max_order=1))
    assert out["error"] == "OrderCapExceeded"


@pytest.mark.parametrize("bad", [
    {"command": "frobnicate", "case": "shift", "input": {"fx": "1", "fy": "1"}},
    {"command": "reduce", "input": {"fx": "1", "fy": "1"}},
    {"command": "reduce", "case": "shift", "input": {"fx": "1"}},
    {"command": "reduce", "case": "shift", "input": {"fx": "x+*", "fy": "1"}},
    {"command": "bounds", "case": "shift", "input": {"qproper": {}}},
    {"command": "bounds", "case": "qshift", "input": {"qproper": {"xi": 0}}},
    {"command": "bounds", "case": "qshift", "input": {"qproper": {"bogus": 1}}},
    {"command": "bounds", "case": "qshift", "input": {"fx": "1", "fy": "1", "qproper": {}}},
])
def test_usage_errors(bad):
    with pytest.raises(UsageError):
        run(bad)


def test_main_exit_codes(tmp_path, capsys):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(job("telescope", "(x+1)/(x-y+1)", "(x-y)/(y+1)")))
    assert main(["telescope", str(path), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 1
    assert main(["bounds", "--case", "shift", "--fx", "y", "--fy", "x"]) == 1
    assert "Incompatible" in capsys.readouterr().out
    assert main(["reduce", "--case", "shift", "--fx", "x+", "--fy", "1"]) == 2
    assert "position" in capsys.readouterr().err
    assert main([]) == 2
    with pytest.raises(SystemExit) as err:
        main(["telescope", "--case", "elliptic"])
    assert err.value.code == 2


def test_output_is_deterministic():
    j = job("telescope", "(x+2*y)/(x+2*y+1)", "(x+2*y)/(x+2*y+2)")
    assert dumps(run(j)) == dumps(run(j))
    text = dumps(run(j))
    assert list(json.loads(text)) == sorted(json.loads(text))


def test_corpus_passes():
    buf = io.StringIO()
    assert run_corpus(CORPUS, out=buf) == 0
    lines = buf.getvalue().splitlines()
    assert lines[-1].startswith(f"{len(lines) - 1}/")
    assert all(line.startswith("PASS") for line in lines[:-1])


def test_corpus_flags_a_mismatch(tmp_path):
    for name in ("binomial_telescope.json", "binomial_telescope.expected.json",
                 "trivial_reduce.json", "trivial_reduce.expected.json"):
        shutil.copy(CORPUS / name, tmp_path / name)
    expected = tmp_path / "binomial_telescope.expected.json"
    data = json.loads(expected.read_text())
    data["order"] = 7
    expected.write_text(json.dumps(data))
    buf = io.StringIO()
    assert run_corpus(tmp_path, out=buf) == 1
    assert "FAIL binomial_telescope.json" in buf.getvalue()
    assert "PASS trivial_reduce.json" in buf.getvalue()
    assert run_corpus(tmp_path, update=True, out=io.StringIO()) == 0
    assert run_corpus(tmp_path, jobs=2, out=io.StringIO()) == 0
    (tmp_path / "trivial_reduce.expected.json").unlink()
    assert run_corpus(tmp_path, out=io.StringIO()) == 1
