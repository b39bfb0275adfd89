"""
Where the printed statements break
==================================

Three printed claims do not survive an exact sweep. Each is shown next to the
form that does hold.
"""
from fractions import Fraction

from aperycheck import bernoulli_poly, harmonic, mhs, padic_valuation
from aperycheck.exact_arith import primes_in_range
from aperycheck.sequences import bernoulli_table, mhs_prefix

B = bernoulli_table(400)

# H(2,2,1;p-1) is a weight-5 sum: it tracks B_{p-5}, not B_{p-3}
for p in primes_in_range(7, 31):
    h = mhs((2, 2, 1), p - 1)
    s = sum(mhs_prefix((2, 2, 2), p - 1))
    print(
        p,
        "B_(p-3):", padic_valuation(h - Fraction(3, 2) * B[p - 3], p),
        "B_(p-5):", padic_valuation(h - Fraction(3, 2) * B[p - 5], p),
        "| sum H(2,2,2;k) + 3/2 B_(p-5):", padic_valuation(s + Fraction(3, 2) * B[p - 5], p),
    )

# H_{p-1}^(5) = 0 mod p^2 needs p > 7: at p = 7 the valuation is only 1
print([(p, padic_valuation(harmonic(p - 1, 5), p)) for p in primes_in_range(7, 29)])

# the power-sum law at m = 1 counts the k = 0 term
n = 5
print(sum(k**0 for k in range(1, n)), bernoulli_poly(1, n) - B[1])
