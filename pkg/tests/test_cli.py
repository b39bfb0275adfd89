import json
import subprocess
import sys

import pytest

from aperycheck.cli import main, parse_primes, UsageError
from aperycheck.congruences import CheckResult
from aperycheck.report import summarize


@pytest.fixture(autouse=True)
def no_user_cache(monkeypatch):
    monkeypatch.delenv("APERY_CACHE", raising=False)


def test_parse_primes():
    assert parse_primes("7..20") == [7, 11, 13, 17, 19]
    assert parse_primes("5") == [5]
    assert parse_primes("11,5,7") == [5, 7, 11]
    with pytest.raises(UsageError):
        parse_primes("7..6")
    with pytest.raises(UsageError):
        parse_primes("9")
    with pytest.raises(UsageError):
        parse_primes("a..b")


def test_verify_theorem1_json_lines(capsys):
    assert main(["verify", "--suite", "theorem1", "--primes", "7..31", "--format", "json-lines"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4 * 8
    obj = json.loads(lines[0])
    assert set(obj) == {"id", "p", "required_k", "achieved_valuation", "status", "elapsed_ms"}
    assert obj["status"] == "pass"


def test_verify_empty_range_is_usage_error(capsys):
    assert main(["verify", "--suite", "all", "--primes", "7..6"]) == 2
    assert "empty range" in capsys.readouterr().err


def test_verify_unknown_suite(capsys):
    assert main(["verify", "--suite", "bogus", "--primes", "7..11"]) == 2


def test_verify_unwritable_output(tmp_path):
    assert main(["verify", "--suite", "theorem1", "--primes", "7", "--output", str(tmp_path / "no" / "x")]) == 2
    assert main(["verify", "--suite", "theorem1", "--primes", "7", "--output", str(tmp_path)]) == 2


def test_bad_arguments_exit_2():
    assert main(["verify", "--parallelism", "x"]) == 2
    assert main([]) == 2


def test_negative_controls_exit_zero(capsys):
    code = main(["verify", "--suite", "theorem1", "--primes", "7..97", "--negative-controls", "--no-timing"])
    assert code == 0
    rows = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    neg = [r for r in rows if r["id"] == "C06'"]
    assert neg and all(r["status"] == "expected-fail" for r in neg)


def test_failing_suite_exit_one(capsys):
    # the printed form of C32 fails at p = 7
    assert main(["verify", "--suite", "imports", "--primes", "7"]) == 1


def test_summary_matches_resummarized_output(tmp_path):
    out, summ = tmp_path / "r.jsonl", tmp_path / "s.json"
    code = main(
        ["verify", "--suite", "all", "--primes", "5..23", "--output", str(out), "--summary", str(summ),
         "--negative-controls", "--c07-n-max", "20"]
    )
    assert code == 1
    results = [CheckResult.from_json(l) for l in out.read_text().splitlines()]
    report = json.loads(summ.read_text())
    assert json.loads(json.dumps(summarize(results))) == report["checks"]
    assert sum(report["totals"].values()) == len(results)
    assert {f["id"] for f in report["failures"]} == {"C18", "C30c", "C32"}


def test_table_format(capsys):
    assert main(["verify", "--suite", "theorem2", "--primes", "5..13", "--format", "table"]) == 0
    out = capsys.readouterr().out
    assert "C09" in out and "total" in out


def test_verify_uses_cache_env(tmp_path, monkeypatch, capsys):
    path = tmp_path / "cache.txt"
    monkeypatch.setenv("APERY_CACHE", str(path))
    assert main(["verify", "--suite", "theorem1", "--primes", "7..13"]) == 0
    assert path.read_text().startswith("BERNOULLI-CACHE v1")


def test_seq(capsys):
    assert main(["seq", "apery", "3"]) == 0
    assert capsys.readouterr().out.split() == ["0", "1", "1", "5", "2", "73", "3", "1445"]
    main(["seq", "bernoulli", "12"])
    assert capsys.readouterr().out.splitlines()[-1] == "12 -691/2730"
    main(["seq", "harmonic", "4"])
    assert capsys.readouterr().out.strip() == "25/12"
    main(["seq", "mhs", "3", "--index", "1,2"])
    assert capsys.readouterr().out.strip() == "5/12"
    assert main(["seq", "mhs", "3", "--index", "1,0"]) == 2
    assert main(["seq", "mhs", "3"]) == 2


def test_identities_command(capsys):
    assert main(["identities", "--trials", "20", "--seed", "3", "--mutants"]) == 0
    out = capsys.readouterr().out
    assert "lemma26" in out and "mutant caught" in out


def test_cache_command(tmp_path, capsys):
    path = tmp_path / "c.txt"
    assert main(["cache", "show", "--path", str(path)]) == 1
    assert main(["cache", "build", "30", "--path", str(path)]) == 0
    assert main(["cache", "show", "--path", str(path)]) == 0
    assert "B_0..B_30" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "aperycheck", "verify", "--suite", "theorem2", "--primes", "5"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.count('"status": "pass"') == 2


def test_theorem1_full_range_exit_zero(capsys):
    assert main(["verify", "--suite", "theorem1", "--primes", "7..199", "--format", "json-lines"]) == 0
    rows = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert {r["status"] for r in rows} == {"pass"}
