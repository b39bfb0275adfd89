"""
Command line runs and the Bernoulli cache
=========================================

The same entry point as the ``aperycheck`` console script.
"""
import json
import tempfile
from pathlib import Path

from aperycheck.cli import main

tmp = Path(tempfile.mkdtemp())
cache = tmp / "bernoulli.txt"

main(["cache", "build", "120", "--path", str(cache)])
print(cache.read_text().splitlines()[:4])

out = tmp / "lemmas.jsonl"
code = main(["verify", "--suite", "lemmas", "--primes", "7..61", "--cache", str(cache),
             "--output", str(out), "--summary", str(tmp / "summary.json")])
print("exit code", code)
summary = json.loads((tmp / "summary.json").read_text())
for f in summary["failures"]:
    print(f)
