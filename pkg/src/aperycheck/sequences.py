"""Exact generators for Bernoulli numbers, harmonic sums and Apery numbers.

Everything here returns ints or Fractions.  Sums over a whole range of upper
limits are produced by prefix accumulation (``*_prefix`` functions) so that a
sweep up to ``n`` costs O(n) rational operations rather than O(n^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, Sequence, Tuple

from .exact_arith import RationalLike, as_rational, is_prime

__all__ = [
    "binom",
    "BernoulliTable",
    "bernoulli_table",
    "extend_bernoulli_table",
    "bernoulli_poly",
    "harmonic",
    "harmonic_prefix",
    "MHSIndex",
    "mhs",
    "mhs_prefix",
    "apery",
    "apery_second_form",
    "apery_list",
    "apery_poly",
    "fermat_quotient_2",
    "convolution_sums",
    "PrimeContext",
    "prime_context",
]


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# ---------------------------------------------------------------- Bernoulli


@dataclass(frozen=True)
class BernoulliTable:
    """Exact Bernoulli numbers ``B_0 .. B_N`` with ``B_1 = -1/2``."""

    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("empty Bernoulli table")

    @property
    def max_index(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError(f"negative Bernoulli index {n}")
        if n > self.max_index:
            raise IndexError(f"B_{n} not in table (max index {self.max_index})")
        return self.values[n]

    def __len__(self):
        return len(self.values)

    def require(self, n: int) -> None:
        if n > self.max_index:
            raise ValueError(f"Bernoulli table too short: need B_{n}, have up to B_{self.max_index}")

    def recurrence_residual(self, n: int) -> Fraction:
        """``sum_{k<n} C(n,k) B_k``; zero for every ``2 <= n <= N``."""
        return sum((binom(n, k) * self.values[k] for k in range(n)), Fraction(0))


def _extend(values: List[Fraction], N: int) -> List[Fraction]:
    if not values:
        values = [Fraction(1)]
    if N >= 1 and len(values) < 2:
        values.append(Fraction(-1, 2))
    for n in range(len(values), N + 1):
        if n % 2:
            values.append(Fraction(0))
            continue
        # sum_{k<=n} C(n+1,k) B_k = 0, solved for B_n; odd k >= 3 vanish
        s = Fraction(1) - Fraction(n + 1, 2)
        for k in range(2, n, 2):
            s += math.comb(n + 1, k) * values[k]
        values.append(-s / (n + 1))
    return values


def bernoulli_table(N: int) -> BernoulliTable:
    """Bernoulli numbers ``B_0..B_N`` from the binomial recurrence (``B_0 = 1``).

    >>> bernoulli_table(12)[12]
    Fraction(-691, 2730)
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    return BernoulliTable(tuple(_extend([], N)))


def extend_bernoulli_table(table: BernoulliTable, N: int) -> BernoulliTable:
    if N <= table.max_index:
        return table
    return BernoulliTable(tuple(_extend(list(table.values), N)))


def bernoulli_poly(n: int, x: RationalLike, table: BernoulliTable | None = None) -> Fraction:
    """``B_n(x) = sum_k C(n,k) B_k x^(n-k)``, evaluated by Horner's rule."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if table is None or table.max_index < n:
        table = _cached_table(n)
    x = as_rational(x)
    acc = Fraction(0)
    for k in range(n + 1):
        acc = acc * x + binom(n, k) * table[k]
    return acc


@lru_cache(maxsize=8)
def _cached_table(n: int) -> BernoulliTable:
    # round up so nearby requests share a table
    return bernoulli_table(max(32, 1 << (n.bit_length())))


# ---------------------------------------------------------------- harmonic


def harmonic(n: int, m: int = 1) -> Fraction:
    """``H_n^(m) = sum_{k=1}^n 1/k^m``."""
    if m < 1:
        raise ValueError("order m must be positive")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum((Fraction(1, k**m) for k in range(1, n + 1)), Fraction(0))


def harmonic_prefix(n: int, m: int = 1) -> List[Fraction]:
    """``[H_0^(m), H_1^(m), ..., H_n^(m)]``."""
    if m < 1:
        raise ValueError("order m must be positive")
    out = [Fraction(0)]
    acc = Fraction(0)
    for k in range(1, n + 1):
        acc += Fraction(1, k**m)
        out.append(acc)
    return out


@dataclass(frozen=True)
class MHSIndex:
    """Signed index vector ``(s_1, ..., s_d)`` of an alternating multiple harmonic sum."""

    entries: Tuple[int, ...]

    def __init__(self, entries: Sequence[int] | int):
        if isinstance(entries, int):
            entries = (entries,)
        entries = tuple(int(s) for s in entries)
        if not entries:
            raise ValueError("MHS index needs depth >= 1")
        if any(s == 0 for s in entries):
            raise ValueError(f"MHS index entries must be nonzero: {entries}")
        object.__setattr__(self, "entries", entries)

    @property
    def depth(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return ",".join(map(str, self.entries))


def _as_index(s) -> MHSIndex:
    return s if isinstance(s, MHSIndex) else MHSIndex(s)


def _mhs_term(s: int, k: int) -> Fraction:
    sign = -1 if (s < 0 and k % 2) else 1
    return Fraction(sign, k ** abs(s))


def mhs_prefix(s, n: int) -> List[Fraction]:
    """``[H(s;0), H(s;1), ..., H(s;n)]`` for the alternating MHS

    ``H(s;n) = sum_{1 <= k_1 < ... < k_d <= n} prod_i sgn(s_i)^{k_i} / k_i^{|s_i|}``.

    One pass over ``k`` keeps the partial sums of every leading sub-index, so
    the whole list costs O(d*n) rational operations.
    """
    s = _as_index(s).entries
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = len(s)
    partial = [Fraction(1)] + [Fraction(0)] * d
    out = [Fraction(0)]
    for k in range(1, n + 1):
        # descending i so partial[i-1] still refers to indices < k
        for i in range(d, 0, -1):
            if partial[i - 1]:
                partial[i] += partial[i - 1] * _mhs_term(s[i - 1], k)
        out.append(partial[d])
    return out


def mhs(s, n: int) -> Fraction:
    """Alternating multiple harmonic sum ``H(s;n)``.

    >>> mhs((1, 2), 3)
    Fraction(5, 12)
    """
    return mhs_prefix(s, n)[n]


# ---------------------------------------------------------------- Apery


def apery(n: int) -> int:
    """Apery number ``A_n = sum_k C(n+k,k)^2 C(n,k)^2``."""
    return apery_poly(n, 1)


def apery_poly(n: int, x: int) -> int:
    """Apery polynomial ``A_n(x) = sum_k C(n+k,k)^2 C(n,k)^2 x^k``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = 0
    t = 1  # C(n+k,k) C(n,k) for the current k
    xk = 1
    for k in range(n + 1):
        total += t * t * xk
        t = t * (n + k + 1) * (n - k) // ((k + 1) * (k + 1))
        xk *= x
    return total


def apery_second_form(n: int) -> int:
    """``sum_k C(n+k,2k)^2 C(2k,k)^2``, the second closed form of ``A_n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(binom(n + k, 2 * k) ** 2 * binom(2 * k, k) ** 2 for k in range(n + 1))


@lru_cache(maxsize=4)
def apery_list(n: int) -> Tuple[int, ...]:
    """``(A_0, ..., A_{n-1})``."""
    return tuple(apery(k) for k in range(n))


def fermat_quotient_2(p: int) -> int:
    """Fermat quotient ``q_p(2) = (2^(p-1) - 1)/p``."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    q, r = divmod(2 ** (p - 1) - 1, p)
    if r:
        raise ArithmeticError(f"2^{p - 1} - 1 is not divisible by {p}; p is not prime")
    return q


def convolution_sums(p: int, table: BernoulliTable) -> Tuple[Fraction, ...]:
    """The sums ``(A, B, D, E, F)`` over ``2 <= k <= p-3`` of ``B_k B_{p-3-k}``

    weighted by ``1``, ``2^k``, ``1/k``, ``2^k/k`` and ``2^(p-3-k)/k`` respectively.
    """
    if p < 7:
        raise ValueError("convolution sums need p >= 7")
    table.require(p - 3)
    A = B = D = E = F = Fraction(0)
    for k in range(2, p - 2):
        prod = table[k] * table[p - 3 - k]
        if not prod:
            continue
        A += prod
        B += 2**k * prod
        D += prod / k
        E += 2**k * prod / k
        F += 2 ** (p - 3 - k) * prod / k
    return A, B, D, E, F


# ---------------------------------------------------------------- per prime


@dataclass(frozen=True, eq=False)
class PrimeContext:
    """Every per-prime scalar the congruence catalog refers to.

    ``H[m]`` is the full prefix list ``[H_0^(m), ..., H_p^(m)]`` for ``m = 1..5``;
    the shorthands ``h(m)`` and ``hh(m)`` give ``H_{p-1}^(m)`` and ``H_{(p-1)/2}^(m)``.
    Further MHS prefix lists are computed on demand by :meth:`mhs_series` and memoized.
    """

    p: int
    bernoulli: BernoulliTable = field(repr=False)
    q2: int
    H: Dict[int, List[Fraction]] = field(repr=False)
    A_sum: Fraction
    B_sum: Fraction
    D_sum: Fraction
    E_sum: Fraction
    F_sum: Fraction
    X: Fraction
    Sigma1: Fraction
    Sigma2: Fraction
    _mhs_cache: Dict[Tuple[int, ...], List[Fraction]] = field(default_factory=dict, repr=False)

    @property
    def half(self) -> int:
        return (self.p - 1) // 2

    def h(self, m: int) -> Fraction:
        return self.H[m][self.p - 1]

    def hh(self, m: int) -> Fraction:
        return self.H[m][self.half]

    def B(self, n: int) -> Fraction:
        return self.bernoulli[n]

    def mhs_series(self, s) -> List[Fraction]:
        """``[H(s;0), ..., H(s;p-1)]``."""
        key = _as_index(s).entries
        if key not in self._mhs_cache:
            self._mhs_cache[key] = mhs_prefix(key, self.p - 1)
        return self._mhs_cache[key]

    @cached_property
    def apery_sums(self) -> Tuple[int, int]:
        """``(sum_{k<p} (2k+1) A_k, sum_{k<p} (2k+1)^3 A_k)``."""
        a = apery_list(self.p)
        return (
            sum((2 * k + 1) * a[k] for k in range(self.p)),
            sum((2 * k + 1) ** 3 * a[k] for k in range(self.p)),
        )


def prime_context(p: int, table: BernoulliTable) -> PrimeContext:
    if p < 7 or not is_prime(p):
        raise ValueError(f"prime context needs a prime p >= 7, got {p}")
    table.require(2 * p - 4)
    H = {m: harmonic_prefix(p, m) for m in range(1, 6)}
    A, B, D, E, F = convolution_sums(p, table)
    X = table[p - 3] / (p - 3) - table[2 * p - 4] / (4 * p - 8)
    sigma1 = sum((Fraction(1, 2 * k + 1) for k in range(p)), Fraction(0))
    sigma2 = sum((H[2][k] / (2 * k + 1) for k in range(p)), Fraction(0))
    return PrimeContext(
        p=p,
        bernoulli=table,
        q2=fermat_quotient_2(p),
        H=H,
        A_sum=A,
        B_sum=B,
        D_sum=D,
        E_sum=E,
        F_sum=F,
        X=X,
        Sigma1=sigma1,
        Sigma2=sigma2,
    )
