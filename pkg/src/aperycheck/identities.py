"""Exact (equality) checks of the closed-form identities used alongside the congruences.

Every checker returns an :class:`IdentityReport` carrying both sides, so a
failing instance can be inspected.  Passing ``mutant=True`` swaps in a right
hand side with one constant perturbed; the mutated checkers must fail on some
small instance, which guards against vacuous comparisons.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .sequences import apery, apery_second_form, bernoulli_poly, bernoulli_table, binom, harmonic

__all__ = [
    "IdentityReport",
    "check_apery_forms",
    "check_lemma26",
    "check_lemma34",
    "check_bernoulli_half",
    "check_lw_alternating",
    "check_power_sum",
    "FAMILIES",
    "random_instances",
    "sweep",
]


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    instance: Tuple[int, ...]
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def check_apery_forms(n: int, mutant: bool = False) -> IdentityReport:
    """``sum C(n+k,k)^2 C(n,k)^2 == sum C(n+k,2k)^2 C(2k,k)^2``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if mutant:
        rhs = sum(binom(n + k, 2 * k + 1) ** 2 * binom(2 * k, k) ** 2 for k in range(n + 1))
    else:
        rhs = apery_second_form(n)
    return IdentityReport("apery_forms", (n,), Fraction(apery(n)), Fraction(rhs))


def check_lemma26(n: int, k: int, mutant: bool = False) -> IdentityReport:
    """``sum_{m<n} (2m+1) C(m+k,2k)^2 == (n-k)^2/(2k+1) C(n+k,2k)^2``."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    lhs = sum((2 * m + 1) * binom(m + k, 2 * k) ** 2 for m in range(n))
    rhs = Fraction((n - k) ** 2, 2 * k + (2 if mutant else 1)) * binom(n + k, 2 * k) ** 2
    return IdentityReport("lemma26", (n, k), Fraction(lhs), rhs)


def check_lemma34(n: int, k: int, mutant: bool = False) -> IdentityReport:
    """``sum_{m<n} (2m+1)^3 C(m+k,2k)^2 == (n-k)^2 (2n^2-k-1)/(k+1) C(n+k,2k)^2``."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    lhs = sum((2 * m + 1) ** 3 * binom(m + k, 2 * k) ** 2 for m in range(n))
    rhs = Fraction((n - k) ** 2 * (2 * n * n - k - 1), k + (2 if mutant else 1)) * binom(n + k, 2 * k) ** 2
    return IdentityReport("lemma34", (n, k), Fraction(lhs), rhs)


def check_bernoulli_half(n: int, mutant: bool = False) -> IdentityReport:
    """``B_n(1/2) == (2^(1-n) - 1) B_n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    table = bernoulli_table(n)
    lhs = bernoulli_poly(n, Fraction(1, 2), table)
    rhs = (Fraction(2) ** ((2 if mutant else 1) - n) - 1) * table[n]
    return IdentityReport("bernoulli_half", (n,), lhs, rhs)


def check_lw_alternating(q: int, mutant: bool = False) -> IdentityReport:
    """``sum_{k=1}^{q-1} (-1)^k/k C(q-1,k) C(q+k,k) == -2 H_{q-1}`` for odd ``q >= 3``."""
    if q < 3 or q % 2 == 0:
        raise ValueError("q must be an odd integer >= 3")
    lhs = sum((Fraction((-1) ** k * binom(q - 1, k) * binom(q + k, k), k) for k in range(1, q)), Fraction(0))
    rhs = -(3 if mutant else 2) * harmonic(q - 1)
    return IdentityReport("lw_alternating", (q,), lhs, rhs)


def check_power_sum(n: int, m: int, mutant: bool = False) -> IdentityReport:
    """``sum_{k=1}^{n-1} k^(m-1) == (B_m(n) - B_m)/m``."""
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 and m >= 1")
    table = bernoulli_table(m)
    lhs = Fraction(sum(k ** (m - 1) for k in range(1, n)))
    rhs = (bernoulli_poly(m, n, table) - table[m]) / (m + 1 if mutant else m)
    return IdentityReport("power_sum", (n, m), lhs, rhs)


def _lemma_pair(rng: random.Random) -> Tuple[int, int]:
    n = rng.randint(1, 200)
    return n, rng.randint(0, n + 5)


def _odd_q(rng: random.Random) -> Tuple[int]:
    return (2 * rng.randint(1, 100) + 1,)


# family -> (checker, instance sampler, small instances for mutation probing)
FAMILIES: Dict[str, Tuple[Callable[..., IdentityReport], Callable[[random.Random], tuple], List[tuple]]] = {
    "apery_forms": (check_apery_forms, lambda r: (r.randint(0, 300),), [(n,) for n in range(11)]),
    "lemma26": (check_lemma26, _lemma_pair, [(n, k) for n in range(1, 11) for k in range(n + 6)]),
    "lemma34": (check_lemma34, _lemma_pair, [(n, k) for n in range(1, 11) for k in range(n + 6)]),
    "bernoulli_half": (check_bernoulli_half, lambda r: (r.randint(0, 40),), [(n,) for n in range(11)]),
    "lw_alternating": (check_lw_alternating, _odd_q, [(q,) for q in range(3, 11, 2)]),
    "power_sum": (
        check_power_sum,
        # m = 1 fails: the sum starting at k = 1 drops the 0^0 term
        lambda r: (r.randint(2, 50), r.randint(2, 12)),
        [(n, m) for n in range(2, 11) for m in range(2, 11)],
    ),
}


def random_instances(family: str, trials: int, seed: int = 0) -> List[tuple]:
    rng = random.Random(f"{family}:{seed}")
    sampler = FAMILIES[family][1]
    return [sampler(rng) for _ in range(trials)]


def sweep(family: str, trials: int = 500, seed: int = 0, mutant: bool = False) -> List[IdentityReport]:
    """Check ``trials`` random instances of one identity family."""
    if family not in FAMILIES:
        raise ValueError(f"unknown identity family {family!r}")
    checker = FAMILIES[family][0]
    return [checker(*inst, mutant=mutant) for inst in random_instances(family, trials, seed)]
