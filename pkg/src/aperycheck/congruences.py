"""Catalog of prime-indexed congruences and the engine that checks them.

Each :class:`CongruenceCheck` holds two formulas evaluated exactly against a
:class:`~aperycheck.sequences.PrimeContext`.  A check passes at ``p`` when the
p-adic valuation of ``lhs - rhs`` reaches the required exponent.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .exact_arith import INF, PrimePowerModulus, is_prime, legendre_symbol, padic_valuation, valuation_int
from .sequences import (
    BernoulliTable,
    PrimeContext,
    apery_list,
    bernoulli_table,
    prime_context,
)

__all__ = [
    "Status",
    "CongruenceCheck",
    "CheckResult",
    "CATALOG",
    "NEGATIVE_CONTROLS",
    "SUITES",
    "LADDER",
    "get_check",
    "suite_checks",
    "run_check",
    "run_checks",
    "run_suite",
    "run_divisibility_c07",
    "run_c01_grid",
    "weighted_apery_poly_coeffs",
    "run_kummer_grid",
    "check_ladder",
    "required_bernoulli_index",
]

Formula = Callable[[PrimeContext], Fraction]


class Status:
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"
    EXPECTED_FAIL = "expected-fail"


@dataclass(frozen=True)
class CongruenceCheck:
    """One congruence ``lhs = rhs (mod p^k)``; ``k=None`` means exact equality."""

    id: str
    description: str
    min_prime: int
    k: Optional[int]
    lhs: Formula = field(repr=False, compare=False)
    rhs: Formula = field(repr=False, compare=False)
    anchor: str = ""
    two_power: int = 0
    negative_control: bool = False

    def modulus(self, p: int) -> Optional[PrimePowerModulus]:
        if self.k is None:
            return None
        return PrimePowerModulus(p, self.k, self.two_power)


@dataclass(frozen=True)
class CheckResult:
    id: str
    p: Optional[int]
    required_k: float
    achieved_valuation: float
    status: str
    elapsed_ms: float = 0.0
    params: Optional[Tuple[Tuple[str, int], ...]] = None

    @property
    def passed(self) -> bool:
        return self.status in (Status.PASS, Status.EXPECTED_FAIL)

    def sort_key(self):
        return (self.id, self.p if self.p is not None else -1, self.params or ())

    def to_json(self, timing: bool = True) -> str:
        obj = {"id": self.id, "p": self.p}
        if self.params:
            obj["params"] = dict(self.params)
        obj["required_k"] = _num(self.required_k)
        obj["achieved_valuation"] = _num(self.achieved_valuation)
        obj["status"] = self.status
        if timing:
            obj["elapsed_ms"] = round(self.elapsed_ms, 3)
        return json.dumps(obj, separators=(", ", ": "))

    @classmethod
    def from_json(cls, line: str) -> "CheckResult":
        obj = json.loads(line)
        params = tuple(sorted(obj["params"].items())) if obj.get("params") else None
        return cls(
            id=obj["id"],
            p=obj["p"],
            required_k=_parse_num(obj["required_k"]),
            achieved_valuation=_parse_num(obj["achieved_valuation"]),
            status=obj["status"],
            elapsed_ms=obj.get("elapsed_ms", 0.0),
            params=params,
        )


def _num(v):
    return "inf" if v == INF else int(v)


def _parse_num(v):
    return INF if v == "inf" else int(v)


# ---------------------------------------------------------------- catalog

F = Fraction


def _sum_hk2_over_k(c: PrimeContext, upto: int) -> Fraction:
    H2 = c.H[2]
    return sum((H2[k] / k for k in range(1, upto + 1)), F(0))


def _sum_mhs_over_k(c: PrimeContext, s) -> Fraction:
    series = c.mhs_series(s)
    return sum((series[k] / k for k in range(1, c.p)), F(0))


def _sum_mhs(c: PrimeContext, s) -> Fraction:
    return sum(c.mhs_series(s), F(0))


def _c19d_rhs(c):
    p = c.p
    return (c.B(2 * p - 4) / 4 - F(2, 3) * c.B(p - 3)) * p**2 - F(1, 18) * p**3 * c.B(p - 3)


def _c23_rhs(c):
    p = c.p
    return (
        F(3, 2 * p**2) * c.h(1)
        + c.hh(3) / 2
        + c.h(2) * c.hh(1) / 2
        - p * c.hh(3) * c.hh(1)
        + 4 * p * (c.B_sum - c.A_sum)
    )


def _c26_rhs(c):
    p = c.p
    return F(1, p) - 2 * p * (c.h(2) - c.hh(2) / 4) + F(1, 2) * p**2 * c.hh(3)


def _c35_lhs(c):
    H2 = c.H[2]
    return sum((H2[2 * k] / k for k in range(1, c.half + 1)), F(0))


def _c35_rhs(c):
    return _sum_hk2_over_k(c, c.p - 1) + c.mhs_series((2, -1))[c.p - 1] + c.hh(3) / 4 - c.h(3)


def _binomial_expansion_residue(c: PrimeContext, order: int) -> Fraction:
    """Return a rational whose p-adic valuation is the minimum over ``0 <= k < p``
    of ``v_p(C(p-1,k)^2 C(p+k,k)^2 - expansion_k)``.

    ``C(p-1,k)^2 C(p+k,k)^2`` is updated through the ratio ``((p^2-k^2)/k^2)^2``.
    """
    p = c.p
    p2 = p * p
    H2, H4 = c.H[2], c.H[4]
    h22 = c.mhs_series((2, 2))
    if order >= 7:
        h24, h42, h222 = c.mhs_series((2, 4)), c.mhs_series((4, 2)), c.mhs_series((2, 2, 2))
    prod = 1
    best = INF
    witness = F(0)
    for k in range(p):
        if k:
            prod = prod * (p2 - k * k) ** 2 // k**4
        approx = 1 - 2 * p2 * H2[k] + p2 * p2 * (H4[k] + 4 * h22[k])
        if order >= 7:
            approx -= p2**3 * (2 * (h24[k] + h42[k]) + 8 * h222[k])
        diff = prod - approx
        v = padic_valuation(diff, p)
        if v < best:
            best, witness = v, diff
    return witness


def _entry(id, description, min_prime, k, lhs, rhs, anchor, **kw):
    return CongruenceCheck(id, description, min_prime, k, lhs, rhs, anchor, **kw)


ZERO: Formula = lambda c: F(0)

CATALOG: Tuple[CongruenceCheck, ...] = (
    _entry(
        "C02", "sum (2k+1)A_k = p + (7/6) p^4 B_{p-3} mod p^5", 5, 5,
        lambda c: F(c.apery_sums[0]),
        lambda c: c.p + F(7, 6) * c.p**4 * c.B(c.p - 3),
        "Sun's generalization of the mod p^2 result at x = 1",
    ),
    _entry(
        "C04", "H_{p-1} = -p^2 B_{p-3}/3 mod p^3", 5, 3,
        lambda c: c.h(1),
        lambda c: -F(c.p**2) * c.B(c.p - 3) / 3,
        "Glaisher",
    ),
    _entry(
        "C05", "sum (2k+1)A_k = p - (7/2) p^2 H_{p-1} mod p^5", 5, 5,
        lambda c: F(c.apery_sums[0]),
        lambda c: c.p - F(7, 2) * c.p**2 * c.h(1),
        "equivalent form of C02 via C04",
    ),
    _entry(
        "C06", "sum (2k+1)A_k = p - (7/2) p^2 H_{p-1} mod p^6", 7, 6,
        lambda c: F(c.apery_sums[0]),
        lambda c: c.p - F(7, 2) * c.p**2 * c.h(1),
        "first main theorem",
    ),
    _entry(
        "C08", "sum (2k+1)^3 A_k = p^3 mod 2p^6", 5, 6,
        lambda c: F(c.apery_sums[1]),
        lambda c: F(c.p**3),
        "Guo-Zeng", two_power=1,
    ),
    _entry(
        "C09", "sum (2k+1)^3 A_k = p^3 + 4p^4 H_{p-1} + (6/5) p^8 B_{p-5} mod p^9", 5, 9,
        lambda c: F(c.apery_sums[1]),
        lambda c: c.p**3 + 4 * c.p**4 * c.h(1) + F(6, 5) * c.p**8 * c.B(c.p - 5),
        "second main theorem",
    ),
    _entry(
        "C10", "2H_{p-1} + p H^(2)_{p-1} = (2/5) p^4 B_{p-5} mod p^5", 7, 5,
        lambda c: 2 * c.h(1) + c.p * c.h(2),
        lambda c: F(2, 5) * c.p**4 * c.B(c.p - 5),
        "CMS",
    ),
    _entry(
        "C11", "H_{(p-1)/2} = -2 q_p(2) mod p", 7, 1,
        lambda c: c.hh(1),
        lambda c: F(-2 * c.q2),
        "harmonic table",
    ),
    _entry(
        "C12", "H^(2)_{p-1} = (4/3 B_{p-3} - 1/2 B_{2p-4}) p + (4/9 B_{p-3} - 1/4 B_{2p-4}) p^2 mod p^3", 7, 3,
        lambda c: c.h(2),
        lambda c: (F(4, 3) * c.B(c.p - 3) - c.B(2 * c.p - 4) / 2) * c.p
        + (F(4, 9) * c.B(c.p - 3) - c.B(2 * c.p - 4) / 4) * c.p**2,
        "harmonic table",
    ),
    _entry(
        "C13", "H^(2)_{(p-1)/2} = (14/3 B_{p-3} - 7/4 B_{2p-4}) p + (14/9 B_{p-3} - 7/8 B_{2p-4}) p^2 mod p^3", 7, 3,
        lambda c: c.hh(2),
        lambda c: (F(14, 3) * c.B(c.p - 3) - F(7, 4) * c.B(2 * c.p - 4)) * c.p
        + (F(14, 9) * c.B(c.p - 3) - F(7, 8) * c.B(2 * c.p - 4)) * c.p**2,
        "harmonic table",
    ),
    _entry(
        "C14", "H^(3)_{p-1} = -(6/5) p^2 B_{p-5} mod p^3", 7, 3,
        lambda c: c.h(3),
        lambda c: -F(6, 5) * c.p**2 * c.B(c.p - 5),
        "harmonic table",
    ),
    _entry(
        "C15", "H^(3)_{(p-1)/2} = 6(2B_{p-3}/(p-3) - B_{2p-4}/(2p-4)) mod p^2", 7, 2,
        lambda c: c.hh(3),
        lambda c: 6 * (2 * c.B(c.p - 3) / (c.p - 3) - c.B(2 * c.p - 4) / (2 * c.p - 4)),
        "harmonic table",
    ),
    _entry(
        "C16", "H^(4)_{p-1} = (4/5) p B_{p-5} mod p^2", 7, 2,
        lambda c: c.h(4),
        lambda c: F(4, 5) * c.p * c.B(c.p - 5),
        "harmonic table",
    ),
    _entry("C17", "H^(4)_{(p-1)/2} = 0 mod p", 7, 1, lambda c: c.hh(4), ZERO, "harmonic table"),
    _entry("C18", "H^(5)_{p-1} = 0 mod p^2", 7, 2, lambda c: c.h(5), ZERO, "harmonic table"),
    _entry(
        "C19a", "B_{2p-4} = (4/3) B_{p-3} mod p", 7, 1,
        lambda c: c.B(2 * c.p - 4),
        lambda c: F(4, 3) * c.B(c.p - 3),
        "Kummer reduction",
    ),
    _entry(
        "C19b", "H^(2)_{p-1} = (4/3 B_{p-3} - 1/2 B_{2p-4}) p + (1/9) p^2 B_{p-3} mod p^3", 7, 3,
        lambda c: c.h(2),
        lambda c: (F(4, 3) * c.B(c.p - 3) - c.B(2 * c.p - 4) / 2) * c.p + F(1, 9) * c.p**2 * c.B(c.p - 3),
        "reduced form",
    ),
    _entry(
        "C19c", "H^(2)_{(p-1)/2} = (14/3 B_{p-3} - 7/4 B_{2p-4}) p + (7/18) p^2 B_{p-3} mod p^3", 7, 3,
        lambda c: c.hh(2),
        lambda c: (F(14, 3) * c.B(c.p - 3) - F(7, 4) * c.B(2 * c.p - 4)) * c.p
        + F(7, 18) * c.p**2 * c.B(c.p - 3),
        "reduced form",
    ),
    _entry(
        "C19d", "H_{p-1} = (B_{2p-4}/4 - 2B_{p-3}/3) p^2 - p^3 B_{p-3}/18 mod p^4", 7, 4,
        lambda c: c.h(1), _c19d_rhs, "reduced form",
    ),
    _entry(
        "C20", "D - 4F = 2B - 2A - q_p(2) B_{p-3} mod p", 7, 1,
        lambda c: c.D_sum - 4 * c.F_sum,
        lambda c: 2 * c.B_sum - 2 * c.A_sum - c.q2 * c.B(c.p - 3),
        "combination of the Tauraso-Zhao relations",
    ),
    _entry(
        "C21a.1", "H(1,-3;p-1) = B - A mod p", 7, 1,
        lambda c: c.mhs_series((1, -3))[c.p - 1],
        lambda c: c.B_sum - c.A_sum,
        "Tauraso-Zhao",
    ),
    _entry(
        "C21a.2", "B - A = 2E - 2D + 2 q_p(2) B_{p-3} mod p", 7, 1,
        lambda c: c.B_sum - c.A_sum,
        lambda c: 2 * c.E_sum - 2 * c.D_sum + 2 * c.q2 * c.B(c.p - 3),
        "Tauraso-Zhao",
    ),
    _entry(
        "C21b", "(5/2) D - 2E - 2F - (3/2) q_p(2) B_{p-3} = 0 mod p", 7, 1,
        lambda c: F(5, 2) * c.D_sum - 2 * c.E_sum - 2 * c.F_sum - F(3, 2) * c.q2 * c.B(c.p - 3),
        ZERO,
        "Tauraso-Zhao",
    ),
    _entry(
        "C22", "H(3,1;(p-1)/2) = H^(3)_{(p-1)/2} H_{(p-1)/2} - 4B + 4A mod p", 7, 1,
        lambda c: c.mhs_series((3, 1))[c.half],
        lambda c: c.hh(3) * c.hh(1) - 4 * c.B_sum + 4 * c.A_sum,
        "half-range depth-2 sum",
    ),
    _entry(
        "C23", "sum_{k<=(p-1)/2} H_k^(2)/k = 3H_{p-1}/(2p^2) + ... + 4p(B-A) mod p", 7, 1,
        lambda c: _sum_hk2_over_k(c, c.half), _c23_rhs, "half-range sum of H_k^(2)/k",
    ),
    _entry(
        "C24", "sum_{k<p} H_k^(2)/k = 3H_{p-1}/p^2 mod p^2", 7, 2,
        lambda c: _sum_hk2_over_k(c, c.p - 1),
        lambda c: 3 * c.h(1) / c.p**2,
        "Liu-Wang",
    ),
    _entry(
        "C25", "H(2,-1;p-1) = -(3/2)X - (7/6) p q_p(2) B_{p-3} + p(B-A) mod p^2", 7, 2,
        lambda c: c.mhs_series((2, -1))[c.p - 1],
        lambda c: -F(3, 2) * c.X - F(7, 6) * c.p * c.q2 * c.B(c.p - 3) + c.p * (c.B_sum - c.A_sum),
        "Tauraso-Zhao",
    ),
    _entry(
        "C26", "Sigma1 = 1/p - 2p(H^(2)_{p-1} - H^(2)_{(p-1)/2}/4) + (1/2) p^2 H^(3)_{(p-1)/2} mod p^4", 7, 4,
        lambda c: c.Sigma1, _c26_rhs, "odd reciprocal sum",
    ),
    _entry(
        "C27", "Sigma2 = H^(2)_{(p-1)/2}/p + 21 H_{p-1}/(2p^2) mod p^2", 7, 2,
        lambda c: c.Sigma2,
        lambda c: c.hh(2) / c.p + 21 * c.h(1) / (2 * c.p**2),
        "sum of H_k^(2)/(2k+1)",
    ),
    _entry(
        "C28", "sum_{k<p} H(2,2;k)/k = -(1/2) B_{p-5} mod p", 7, 1,
        lambda c: _sum_mhs_over_k(c, (2, 2)),
        lambda c: -c.B(c.p - 5) / 2,
        "depth-2 weighted sum",
    ),
    _entry(
        "C29", "sum_{k<p} H_k^(2)/k = 3H_{p-1}/p^2 - (1/2) p^2 B_{p-5} mod p^3", 7, 3,
        lambda c: _sum_hk2_over_k(c, c.p - 1),
        lambda c: 3 * c.h(1) / c.p**2 - F(1, 2) * c.p**2 * c.B(c.p - 5),
        "refinement of C24",
    ),
    _entry(
        "C30a", "sum_{k<p} H(2,2;k) = -(p/2) H^(4)_{p-1} - 3H_{p-1}/p^2 + H^(3)_{p-1} + (1/2) p^2 B_{p-5} mod p^3", 7, 3,
        lambda c: _sum_mhs(c, (2, 2)),
        lambda c: -F(c.p, 2) * c.h(4) - 3 * c.h(1) / c.p**2 + c.h(3) + F(1, 2) * c.p**2 * c.B(c.p - 5),
        "cumulative depth-2 sum",
    ),
    _entry(
        "C30b", "sum_{k<p} (H(2,4;k) + H(4,2;k)) = 3 B_{p-5} mod p", 7, 1,
        lambda c: _sum_mhs(c, (2, 4)) + _sum_mhs(c, (4, 2)),
        lambda c: 3 * c.B(c.p - 5),
        "cumulative depth-2 sum",
    ),
    _entry(
        "C30c", "sum_{k<p} H(2,2,2;k) = -(3/2) B_{p-3} mod p", 7, 1,
        lambda c: _sum_mhs(c, (2, 2, 2)),
        lambda c: -F(3, 2) * c.B(c.p - 3),
        "cumulative depth-3 sum",
    ),
    _entry(
        "C30c.corrected", "sum_{k<p} H(2,2,2;k) = -(3/2) B_{p-5} mod p", 7, 1,
        lambda c: _sum_mhs(c, (2, 2, 2)),
        lambda c: -F(3, 2) * c.B(c.p - 5),
        "C30c with the Bernoulli index used in the final assembly of the second theorem",
    ),
    _entry(
        "C31a", "H(2,3;p-1) = -2 B_{p-5} mod p", 7, 1,
        lambda c: c.mhs_series((2, 3))[c.p - 1], lambda c: -2 * c.B(c.p - 5), "Tauraso-Zhao",
    ),
    _entry(
        "C31b", "H(1,4;p-1) = B_{p-5} mod p", 7, 1,
        lambda c: c.mhs_series((1, 4))[c.p - 1], lambda c: c.B(c.p - 5), "Tauraso-Zhao",
    ),
    _entry(
        "C31c", "H(4,1;p-1) = -B_{p-5} mod p", 7, 1,
        lambda c: c.mhs_series((4, 1))[c.p - 1], lambda c: -c.B(c.p - 5), "Tauraso-Zhao",
    ),
    _entry(
        "C32", "H(2,2,1;p-1) = (3/2) B_{p-3} mod p", 7, 1,
        lambda c: c.mhs_series((2, 2, 1))[c.p - 1], lambda c: F(3, 2) * c.B(c.p - 3), "Zhao",
    ),
    _entry(
        "C32.corrected", "H(2,2,1;p-1) = (3/2) B_{p-5} mod p", 7, 1,
        lambda c: c.mhs_series((2, 2, 1))[c.p - 1], lambda c: F(3, 2) * c.B(c.p - 5),
        "C32 with the weight-5 Bernoulli index",
    ),
    _entry(
        "C33a", "C(p-1,k)^2 C(p+k,k)^2 = 1 - 2p^2 H_k^(2) + p^4 H_k^(4) + 4p^4 H(2,2;k) mod p^5, 0 <= k < p", 7, 5,
        lambda c: _binomial_expansion_residue(c, 5), ZERO, "binomial product expansion",
    ),
    _entry(
        "C33b", "C(p-1,k)^2 C(p+k,k)^2 expansion with p^6 terms mod p^7, 0 <= k < p", 7, 7,
        lambda c: _binomial_expansion_residue(c, 7), ZERO, "binomial product expansion",
    ),
    _entry(
        "C34a", "H(2,2;(p-1)/2) = 0 mod p", 7, 1,
        lambda c: c.mhs_series((2, 2))[c.half], ZERO, "half-range depth-2 sum",
    ),
    _entry("C34b", "H_{p-1} = 0 mod p^2 (Wolstenholme)", 5, 2, lambda c: c.h(1), ZERO, "sanity baseline"),
    _entry("C34c", "H^(2)_{p-1} = 0 mod p (Wolstenholme)", 5, 1, lambda c: c.h(2), ZERO, "sanity baseline"),
    _entry(
        "C35", "sum_{k<=(p-1)/2} H^(2)_{2k}/k = sum_{k<p} H_k^(2)/k + H(2,-1;p-1) + H^(3)_{(p-1)/2}/4 - H^(3)_{p-1}",
        7, None, _c35_lhs, _c35_rhs, "exact decomposition of the even-index sum",
    ),
)

NEGATIVE_CONTROLS: Tuple[CongruenceCheck, ...] = (
    _entry(
        "C06'", "mutated C06: constant 7/2 replaced by 5/2", 7, 6,
        lambda c: F(c.apery_sums[0]),
        lambda c: c.p - F(5, 2) * c.p**2 * c.h(1),
        "negative control", negative_control=True,
    ),
)

_BY_ID: Dict[str, CongruenceCheck] = {c.id: c for c in CATALOG + NEGATIVE_CONTROLS}


def get_check(check_id: str) -> CongruenceCheck:
    try:
        return _BY_ID[check_id]
    except KeyError:
        raise KeyError(f"unknown check {check_id!r}") from None


def _ids(*prefixes: str) -> Tuple[str, ...]:
    return tuple(c.id for c in CATALOG if c.id.split(".")[0].rstrip("abcd") in prefixes)


SUITES: Dict[str, Tuple[str, ...]] = {
    "theorem1": _ids("C02", "C04", "C05", "C06"),
    "theorem2": _ids("C08", "C09"),
    "lemmas": _ids(
        "C10", "C11", "C12", "C13", "C14", "C15", "C16", "C17", "C18", "C19",
        "C24", "C26", "C27", "C28", "C29", "C30", "C33", "C34",
    ),
    "imports": _ids("C20", "C21", "C22", "C23", "C25", "C31", "C32"),
    "identities-as-congruences": _ids("C35"),
}
SUITES["all"] = tuple(c.id for c in CATALOG)

# pass(C06) => pass(C05) => pass(C02) whenever C04 passes
LADDER = ("C06", "C05", "C02")


def suite_checks(suite_id: str, negative_controls: bool = False) -> List[CongruenceCheck]:
    if suite_id not in SUITES:
        raise ValueError(f"unknown suite {suite_id!r}; choose from {sorted(SUITES)}")
    checks = [get_check(i) for i in SUITES[suite_id]]
    if negative_controls:
        checks += list(NEGATIVE_CONTROLS)
    return checks


def required_bernoulli_index(p_max: int, kummer_k_max: int = 0) -> int:
    return max(2 * p_max - 4, kummer_k_max * (p_max - 1) + p_max - 3, 2)


# ---------------------------------------------------------------- engine


def _status(passed: bool, negative: bool) -> str:
    if negative:
        return Status.EXPECTED_FAIL if not passed else Status.FAIL
    return Status.PASS if passed else Status.FAIL


def run_check(check: CongruenceCheck, p: int, ctx: Optional[PrimeContext]) -> CheckResult:
    """Evaluate ``check`` at the prime ``p``.

    Primes below the check's floor give a ``skip`` result.  ``ctx`` may be
    ``None`` only for p = 5, where a context is assembled on the fly.
    """
    required = INF if check.k is None else check.k
    if p < check.min_prime:
        return CheckResult(check.id, p, required, INF, Status.SKIP)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    t0 = time.perf_counter()
    if ctx is None:
        ctx = _small_context(p)
    if ctx.p != p:
        raise ValueError(f"context built for p={ctx.p}, not {p}")
    diff = check.lhs(ctx) - check.rhs(ctx)
    v = padic_valuation(diff, p)
    if check.k is None:
        passed = diff == 0
    else:
        passed = check.modulus(p).divides(diff)
    elapsed = (time.perf_counter() - t0) * 1e3
    return CheckResult(check.id, p, required, v, _status(passed, check.negative_control), elapsed)


class _SmallContext:
    """Just enough of a PrimeContext for the p = 5 checks (C02, C04, C05, C08, C09, C34b/c)."""

    def __init__(self, p: int):
        from .sequences import harmonic_prefix

        self.p = p
        self.half = (p - 1) // 2
        self.H = {m: harmonic_prefix(p, m) for m in range(1, 6)}
        self.bernoulli = bernoulli_table(2 * p)
        self.apery_sums = PrimeContext.apery_sums.func(self)

    def h(self, m):
        return self.H[m][self.p - 1]

    def hh(self, m):
        return self.H[m][self.half]

    def B(self, n):
        return self.bernoulli[n]


def _small_context(p: int):
    if p >= 7:
        raise ValueError("use prime_context for p >= 7")
    return _SmallContext(p)


def _context_for(p: int, table: BernoulliTable):
    return prime_context(p, table) if p >= 7 else _small_context(p)


_WORKER_TABLE: Optional[BernoulliTable] = None


def _init_worker(table: BernoulliTable) -> None:
    global _WORKER_TABLE
    _WORKER_TABLE = table


def _run_prime(args) -> List[CheckResult]:
    p, check_ids, table = args
    table = table if table is not None else _WORKER_TABLE
    checks = [get_check(i) for i in check_ids]
    applicable = [c for c in checks if p >= c.min_prime]
    ctx = _context_for(p, table) if applicable else None
    return [run_check(c, p, ctx) for c in checks]


def _primes(primes: Iterable[int]) -> List[int]:
    ps = sorted(set(primes))
    bad = [n for n in ps if not is_prime(n)]
    if bad:
        raise ValueError(f"not prime: {bad}")
    if not ps:
        raise ValueError("empty prime range")
    return ps


def _parallel_map(fn, tasks, parallelism: int, table: Optional[BernoulliTable]):
    if parallelism <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    # strip the table from each task; workers get it once via the initializer
    stripped = [t[:-1] + (None,) for t in tasks]
    with ProcessPoolExecutor(max_workers=parallelism, initializer=_init_worker, initargs=(table,)) as ex:
        return list(ex.map(fn, stripped, chunksize=1))


def run_checks(
    checks: Sequence[CongruenceCheck],
    primes: Iterable[int],
    parallelism: int = 1,
    table: Optional[BernoulliTable] = None,
) -> List[CheckResult]:
    """Run ``checks`` at every prime; results sorted by (id, p), independent of parallelism."""
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    ps = _primes(primes)
    need = required_bernoulli_index(ps[-1])
    if table is None:
        table = bernoulli_table(need)
    table.require(need)
    ids = tuple(c.id for c in checks)
    # largest primes first so the pool is not left waiting on a straggler
    tasks = [(p, ids, table) for p in sorted(ps, reverse=True)]
    results = [r for batch in _parallel_map(_run_prime, tasks, parallelism, table) for r in batch]
    results.sort(key=CheckResult.sort_key)
    return results


def run_suite(
    suite_id: str,
    primes: Iterable[int],
    parallelism: int = 1,
    table: Optional[BernoulliTable] = None,
    negative_controls: bool = False,
) -> List[CheckResult]:
    """Run every check of ``suite_id`` at every prime; results sorted by (id, p)."""
    return run_checks(suite_checks(suite_id, negative_controls), primes, parallelism, table)


def check_ladder(results: Sequence[CheckResult]) -> List[int]:
    """Primes at which pass(C06) => pass(C05) => pass(C02) is violated."""
    by = {(r.id, r.p): r for r in results}
    bad = []
    for p in sorted({r.p for r in results if r.id == LADDER[0]}):
        chain = [by.get((i, p)) for i in LADDER]
        if any(r is None or r.status == Status.SKIP for r in chain):
            continue
        for hi, lo in zip(chain, chain[1:]):
            if hi.status == Status.PASS and lo.status != Status.PASS:
                bad.append(p)
                break
    return bad


# ---------------------------------------------------------------- grids


def _n_power_valuation(s: int, n: int):
    """Largest e with n^e | s (INF when s == 0 or n == 1)."""
    if s == 0 or n == 1:
        return INF
    e = INF
    m, q = n, 2
    while m > 1:
        if q * q > m:
            q = m
        if m % q == 0:
            a = 0
            while m % q == 0:
                m //= q
                a += 1
            e = min(e, valuation_int(s, q) // a)
        q += 1
    return int(e)


def run_divisibility_c07(n_max: int) -> List[CheckResult]:
    """``n^3 | sum_{k<n} (2k+1)^3 A_k`` for ``n = 1..n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    a = apery_list(n_max)
    out = []
    s = 0
    for n in range(1, n_max + 1):
        t0 = time.perf_counter()
        s += (2 * n - 1) ** 3 * a[n - 1]
        e = _n_power_valuation(s, n)
        status = Status.PASS if s % n**3 == 0 else Status.FAIL
        out.append(CheckResult("C07", None, 3, e, status, (time.perf_counter() - t0) * 1e3, (("n", n),)))
    return out


def weighted_apery_poly_coeffs(n: int) -> List[int]:
    """Coefficients of ``sum_{k<n} (2k+1) A_k(x)`` in increasing powers of x."""
    coeffs = []
    for j in range(n):
        t = math.comb(2 * j, j)  # C(k+j,j) C(k,j) at k = j
        acc = 0
        for k in range(j, n):
            acc += (2 * k + 1) * t * t
            t = t * (k + j + 1) // (k + 1 - j)
        coeffs.append(acc)
    return coeffs


def run_c01_grid(primes: Iterable[int], x_min: int, x_max: int) -> List[CheckResult]:
    """``sum_{k<p} (2k+1) A_k(x) = p (x|p) mod p^2`` over odd primes and integer x.

    Cases with ``p | x`` are reported under the id ``C01.pdivx``.
    """
    ps = _primes(primes)
    if ps[0] == 2:
        raise ValueError("C01 needs odd primes")
    out = []
    for p in ps:
        coeffs = weighted_apery_poly_coeffs(p)
        for x in range(x_min, x_max + 1):
            t0 = time.perf_counter()
            lhs = 0
            for c in reversed(coeffs):
                lhs = lhs * x + c
            diff = lhs - p * legendre_symbol(x, p)
            v = padic_valuation(diff, p)
            status = Status.PASS if v >= 2 else Status.FAIL
            cid = "C01.pdivx" if x % p == 0 else "C01"
            out.append(CheckResult(cid, p, 2, v, status, (time.perf_counter() - t0) * 1e3, (("x", x),)))
    out.sort(key=CheckResult.sort_key)
    return out


def run_kummer_grid(primes: Iterable[int], k_max: int, table: Optional[BernoulliTable] = None) -> List[CheckResult]:
    """``B_{k(p-1)+b}/(k(p-1)+b) = B_b/b mod p`` for even ``2 <= b <= p-3`` and ``k <= k_max``."""
    ps = _primes(primes)
    if ps[0] < 5:
        ps = [p for p in ps if p >= 5]
    if not ps:
        return []
    need = required_bernoulli_index(ps[-1], k_max)
    if table is None:
        table = bernoulli_table(need)
    table.require(k_max * (ps[-1] - 1) + ps[-1] - 3)
    out = []
    for p in ps:
        for b in range(2, p - 2, 2):
            if b % (p - 1) == 0:
                continue
            base = table[b] / b
            for k in range(k_max + 1):
                t0 = time.perf_counter()
                n = k * (p - 1) + b
                v = padic_valuation(table[n] / n - base, p)
                status = Status.PASS if v >= 1 else Status.FAIL
                out.append(
                    CheckResult("C03", p, 1, v, status, (time.perf_counter() - t0) * 1e3, (("b", b), ("k", k)))
                )
    out.sort(key=CheckResult.sort_key)
    return out
