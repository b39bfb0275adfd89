"""Aggregate CheckResults into a run report."""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

from .congruences import CheckResult, Status
from .exact_arith import INF

STATUSES = (Status.PASS, Status.FAIL, Status.SKIP, Status.EXPECTED_FAIL)


def summarize(results: Sequence[CheckResult]) -> Dict[str, Dict[str, Any]]:
    """Per-check status counts and the minimum achieved valuation over evaluated primes."""
    out: Dict[str, Dict[str, Any]] = defaultdict(lambda: {**{s: 0 for s in STATUSES}, "min_valuation": "inf"})
    for r in results:
        row = out[r.id]
        row[r.status] += 1
        row["required_k"] = "inf" if r.required_k == INF else int(r.required_k)
        if r.status != Status.SKIP and r.achieved_valuation != INF:
            cur = row["min_valuation"]
            v = int(r.achieved_valuation)
            row["min_valuation"] = v if cur == "inf" else min(cur, v)
    return {k: out[k] for k in sorted(out)}


@dataclass
class Report:
    config: Dict[str, Any]
    results: List[CheckResult]
    elapsed_s: float = 0.0
    checks: Dict[str, Dict[str, Any]] = field(init=False)

    def __post_init__(self):
        self.checks = summarize(self.results)

    @property
    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if r.status == Status.FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> Dict[str, int]:
        tot = {s: 0 for s in STATUSES}
        for row in self.checks.values():
            for s in STATUSES:
                tot[s] += row[s]
        return tot

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        d = {
            "config": self.config,
            "totals": self.counts(),
            "checks": self.checks,
            "failures": [json.loads(r.to_json(timing)) for r in self.failures],
        }
        if timing:
            d["elapsed_s"] = round(self.elapsed_s, 3)
        return d

    def table(self) -> str:
        head = f"{'check':<16}{'pass':>6}{'fail':>6}{'skip':>6}{'xfail':>7}{'need':>6}{'min v':>7}"
        lines = [head, "-" * len(head)]
        for cid, row in self.checks.items():
            lines.append(
                f"{cid:<16}{row['pass']:>6}{row['fail']:>6}{row['skip']:>6}{row['expected-fail']:>7}"
                f"{row['required_k']!s:>6}{row['min_valuation']!s:>7}"
            )
        tot = self.counts()
        lines.append("-" * len(head))
        lines.append(
            f"{'total':<16}{tot['pass']:>6}{tot['fail']:>6}{tot['skip']:>6}{tot['expected-fail']:>7}"
        )
        for r in self.failures:
            params = f" {dict(r.params)}" if r.params else ""
            lines.append(f"FAIL {r.id} p={r.p}{params}: v={r.achieved_valuation}, need {r.required_k}")
        return "\n".join(lines)
