"""Exact rational arithmetic helpers: p-adic valuations and rational congruences.

Rationals are plain :class:`fractions.Fraction` values, which are always kept
in lowest terms with a positive denominator.  A congruence ``a = b (mod p^k)``
between rationals means ``v_p(a - b) >= k``; neither side needs to be
p-integral.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

__all__ = [
    "INF",
    "Rational",
    "PrimePowerModulus",
    "as_rational",
    "is_prime",
    "primes_in_range",
    "valuation_int",
    "padic_valuation",
    "rat_congruent",
    "mod_inverse",
    "legendre_symbol",
]

Rational = Fraction
INF = math.inf

RationalLike = Union[int, Fraction]

# Deterministic for all n < 3.3 * 10**24, which covers 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_in_range(lo: int, hi: int) -> Iterator[int]:
    """Yield the primes in the inclusive range [lo, hi]."""
    for n in range(max(lo, 2), hi + 1):
        if is_prime(n):
            yield n


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


@dataclass(frozen=True)
class PrimePowerModulus:
    """The modulus ``p**k``, optionally times ``2**two_power`` (e.g. ``2*p**6``)."""

    p: int
    k: int
    two_power: int = 0

    def __post_init__(self):
        _require_prime(self.p)
        if self.p < 3:
            raise ValueError("modulus prime must be odd")
        if self.k < 1:
            raise ValueError("exponent must be positive")
        if self.two_power < 0:
            raise ValueError("power of two must be nonnegative")

    @property
    def value(self) -> int:
        return 2**self.two_power * self.p**self.k

    def divides(self, q: RationalLike) -> bool:
        """True iff ``q = 0`` modulo this modulus, in the valuation sense."""
        if padic_valuation(q, self.p) < self.k:
            return False
        return self.two_power == 0 or padic_valuation(q, 2) >= self.two_power

    def __str__(self):
        base = f"{self.p}^{self.k}"
        if self.two_power:
            return f"2^{self.two_power}*{base}" if self.two_power > 1 else f"2*{base}"
        return base


def valuation_int(n: int, p: int) -> float:
    """Exponent of ``p`` in the nonzero integer ``n`` (``INF`` for zero)."""
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    # square the divisor to strip large powers quickly
    pk = [p]
    while n % pk[-1] == 0:
        n //= pk[-1]
        v += 1 << (len(pk) - 1)
        pk.append(pk[-1] * pk[-1])
    for i in range(len(pk) - 2, -1, -1):
        if n % pk[i] == 0:
            n //= pk[i]
            v += 1 << i
    return v


def padic_valuation(q: RationalLike, p: int):
    """Return ``v_p(q)`` as an int, or ``INF`` when ``q == 0``.

    >>> padic_valuation(Fraction(25, 2), 5)
    2
    >>> padic_valuation(Fraction(343, 180), 7)
    3
    """
    _require_prime(p)
    q = as_rational(q)
    if q == 0:
        return INF
    return int(valuation_int(q.numerator, p) - valuation_int(q.denominator, p))


def rat_congruent(a: RationalLike, b: RationalLike, p: int, k: int) -> bool:
    """``a = b (mod p^k)`` for rationals: ``v_p(a - b) >= k``."""
    if k < 1:
        raise ValueError("exponent must be positive")
    return padic_valuation(as_rational(a) - as_rational(b), p) >= k


def mod_inverse(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` in ``[1, m-1]``; raises ValueError if none exists."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} has no inverse modulo {m}")
    return pow(a, -1, m)


def legendre_symbol(x: int, p: int) -> int:
    """Legendre symbol ``(x|p)`` via Euler's criterion."""
    _require_prime(p)
    if p == 2:
        raise ValueError("Legendre symbol needs an odd prime")
    r = pow(x % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1
