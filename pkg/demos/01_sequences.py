"""
Exact sequences
===============

Apery numbers, Bernoulli numbers and (alternating) multiple harmonic sums,
all as exact integers or Fractions.
"""
from fractions import Fraction

from aperycheck import apery, apery_poly, bernoulli_poly, bernoulli_table, harmonic, mhs

# Apery numbers grow roughly like (1 + sqrt 2)^(4n)
print([apery(n) for n in range(8)])
print(apery_poly(3, -2))  # weighted by x^k

# Bernoulli numbers with B_1 = -1/2; odd ones past B_1 vanish
B = bernoulli_table(20)
print(B[12], B[20], B[13])
print(bernoulli_poly(6, Fraction(1, 2)), (Fraction(2) ** -5 - 1) * B[6])

# harmonic numbers and multiple harmonic sums; a negative index entry alternates the sign
print(harmonic(10), harmonic(10, 3))
print(mhs((2, -1), 10))  # sum over j < k <= 10 of (-1)^k / (j^2 k)
print(mhs((2, 2, 1), 6))
