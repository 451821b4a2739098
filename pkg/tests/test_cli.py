import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from evilreals.cli import main
from evilreals.evilgf import hit_probability
from evilreals.exact import decimal_of_width
from evilreals.experiments import parse_constant
from evilreals.primes import first_primes, prime_count


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


def test_prob(capsys):
    doc = run_json(capsys, "prob", "--base", "10", "--target", "666", "--digits", "91")
    prob = doc["rows"][0]["value"]
    assert prob["decimal"] == (
        "0.19999999999999999999999999999999999999999999999999999999999999978337773162864760552794625"
    )
    assert F(prob["fraction"]) == hit_probability(10, 666)
    doc = run_json(capsys, "prob", "--base", "2", "--target", "5", "--digits", "8")
    assert doc["rows"][0]["value"]["decimal"] == "1.000000"


def test_prob_table(capsys):
    code, out, _ = run(capsys, "prob", "--base", "3", "--target", "4", "--digits", "8")
    assert code == 0 and "0.687500" in out and "1.454545" in out


def test_parse_constant_grammar():
    assert parse_constant("golden-1").kind == "golden_minus_one"
    assert parse_constant("sqrt 2").params == (2,)
    assert parse_constant("7*pi").params == (7, 1)
    assert parse_constant("pi*sqrt 3").params == (3,)
    assert parse_constant("rational 1/3").params == (1, 3)
    assert parse_constant("file d.txt") == "d.txt"
    with pytest.raises(ValueError):
        parse_constant("tau")


def test_scan(capsys):
    doc = run_json(capsys, "scan", "golden-1")
    row = doc["rows"][0]
    assert row["verdict"] == "evil" and row["location"] == 146
    doc = run_json(capsys, "scan", "rational", "1/3", "--target", "6")
    assert doc["rows"][0]["location"] == 2
    doc = run_json(capsys, "scan", "golden", "--mode", "fractional_only")
    assert doc["rows"][0]["location"] == 146


def test_scan_file(capsys, tmp_path):
    path = tmp_path / "d.txt"
    path.write_text("1.23")
    doc = run_json(capsys, "scan", "file", str(path), "--target", "3")
    assert doc["rows"][0]["location"] == 2
    code, _, err = run(capsys, "scan", "file", str(path), "--target", "30")
    assert code == 2 and "ran out" in err


def test_primes_pi_small_run(capsys):
    doc = run_json(capsys, "experiment", "primes-pi", "--count", "4")
    rows = doc["rows"]
    assert [r["prime"] for r in rows] == [2, 3, 5, 7]
    agg = doc["aggregates"]
    evil = [r for r in rows if r["verdict"] == "evil"]
    assert agg["members"] == 4 and agg["evil"] == len(evil)
    assert F(agg["evil_fraction"]["fraction"]) == F(len(evil), 4)
    if evil:
        assert F(agg["mean_location"]["fraction"]) == F(sum(r["location"] for r in evil), len(evil))


def test_tsv_schema(capsys):
    code, out, _ = run(capsys, "experiment", "primes-pi", "--count", "6", "--format", "tsv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "prime\tverdict\tlocation"
    body = [l for l in lines[1:] if not l.startswith("#")]
    assert len(body) == 6
    for line in body:
        prime, verdict, loc = line.split("\t")
        assert verdict in ("evil", "not_evil")
        assert (loc == "-") == (verdict == "not_evil")
    assert any(l.startswith("# evil_fraction.fraction\t") for l in lines)


def test_determinism(capsys):
    a = run_json(capsys, "experiment", "pi-sqrt", "--count", "30")
    b = run_json(capsys, "experiment", "pi-sqrt", "--count", "30", "--workers", "2")
    assert a["rows"] == b["rows"] and a["aggregates"] == b["aggregates"]


def test_golden_experiment(capsys):
    doc = run_json(capsys, "experiment", "golden")
    got = [(r["constant"], r["mode"], r["verdict"], r["location"]) for r in doc["rows"]]
    assert got == [
        ("golden-1", "generalized", "evil", 146),
        ("golden", "generalized", "not_evil", None),
        ("golden", "fractional_only", "evil", 146),
    ]


def test_normality_mc_small(capsys):
    doc = run_json(capsys, "experiment", "normality-mc", "--target", "30", "--trials", "20000", "--seed", "5")
    assert doc["aggregates"]["trials"] == 20000
    assert abs(float(doc["rows"][0]["z"])) < 5


def test_out_file(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "primes", "--count", "5", "--format", "json", "--out", str(dest))
    assert code == 0 and out == ""
    assert [r["prime"] for r in json.loads(dest.read_text())["rows"]] == [2, 3, 5, 7, 11]


def test_usage_errors(capsys):
    assert run(capsys, "prob", "--base", "1")[0] == 1
    assert run(capsys, "scan", "tau")[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["experiment", "nope"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["prob", "--base", "ten"])
    assert info.value.code == 1


def test_certification_exit_code(capsys, monkeypatch):
    from evilreals import digits

    monkeypatch.setattr(digits, "_interval", lambda c, b, S: (0, b**S))
    code, _, err = run(capsys, "scan", "pi")
    assert code == 2 and "certification" in err


def test_time_limit_partial_report(capsys):
    code, out, err = run(
        capsys, "experiment", "primes-pi", "--count", "1500", "--time-limit", "1e-9", "--format", "json"
    )
    assert code == 3 and "partial" in err
    doc = json.loads(out)
    assert doc["aggregates"]["checkpoint"] == len(doc["rows"]) == 500


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "evilreals", "primes", "--count", "3", "--format", "tsv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.splitlines()[1:] == ["1\t2", "2\t3", "3\t5"]


def test_primes():
    assert first_primes(5) == [2, 3, 5, 7, 11]
    assert first_primes(100_000)[-1] == 1299709
    assert prime_count(1299709) == 100_000


def test_truncation_stability():
    a = hit_probability(10, 666)
    for d in (10, 40, 91, 120):
        assert decimal_of_width(a, d + 10).startswith(decimal_of_width(a, d))
