import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from aperycheck.exact_arith import primes_in_range, rat_congruent
from aperycheck.sequences import (
    MHSIndex,
    apery,
    apery_list,
    apery_poly,
    apery_second_form,
    bernoulli_poly,
    bernoulli_table,
    binom,
    convolution_sums,
    extend_bernoulli_table,
    fermat_quotient_2,
    harmonic,
    harmonic_prefix,
    mhs,
    mhs_prefix,
    prime_context,
)


def akiyama_tanigawa(n):
    """B_0..B_n with B_1 = +1/2."""
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


def naive_mhs(s, n):
    total = Fraction(0)
    for ks in itertools.combinations(range(1, n + 1), len(s)):
        term = Fraction(1)
        for si, k in zip(s, ks):
            term *= Fraction((-1) ** k if si < 0 else 1, k ** abs(si))
        total += term
    return total


# ---------------------------------------------------------------- Bernoulli


def test_bernoulli_examples():
    t = bernoulli_table(12)
    assert t[0] == 1 and t[1] == Fraction(-1, 2) and t[2] == Fraction(1, 6)
    assert bernoulli_table(4)[4] == Fraction(-1, 30)
    assert bernoulli_table(3)[3] == 0
    assert t[12] == Fraction(-691, 2730)


def test_bernoulli_matches_akiyama_tanigawa():
    t = bernoulli_table(120)
    at = akiyama_tanigawa(120)
    assert t[1] == -at[1]
    assert all(t[n] == at[n] for n in range(121) if n != 1)


def test_bernoulli_table_invariants(table400):
    assert all(table400[n] == 0 for n in range(3, 401, 2))
    for n in (2, 3, 10, 57, 200, 400):
        assert table400.recurrence_residual(n) == 0


def test_bernoulli_extend_and_bounds():
    t = bernoulli_table(10)
    assert extend_bernoulli_table(t, 30).values == bernoulli_table(30).values
    assert extend_bernoulli_table(t, 5) is t
    with pytest.raises(IndexError):
        t[11]
    with pytest.raises(ValueError):
        t.require(11)
    with pytest.raises(ValueError):
        bernoulli_table(-1)


def test_bernoulli_poly_examples():
    t = bernoulli_table(10)
    for n in range(11):
        assert bernoulli_poly(n, 0) == t[n]
    assert bernoulli_poly(2, Fraction(1, 2)) == Fraction(-1, 12)
    assert bernoulli_poly(1, Fraction(1, 2)) == 0
    x = Fraction(3, 7)
    assert bernoulli_poly(2, x) == x * x - x + Fraction(1, 6)


@pytest.mark.parametrize("m", range(2, 13))
def test_power_sum_law(m):
    t = bernoulli_table(m)
    for n in range(2, 51):
        assert sum(k ** (m - 1) for k in range(1, n)) == (bernoulli_poly(m, n, t) - t[m]) / m


def test_power_sum_law_order_one_needs_zero_term():
    # (B_1(n) - B_1)/1 = n counts k = 0..n-1, one more than the sum from k = 1
    for n in range(2, 51):
        assert (bernoulli_poly(1, n) - Fraction(-1, 2)) == n
        assert sum(k**0 for k in range(1, n)) == n - 1


# ---------------------------------------------------------------- harmonic / MHS


def test_harmonic_examples():
    assert harmonic(0, 3) == 0
    assert harmonic(4, 1) == Fraction(25, 12)
    assert harmonic(2, 2) == Fraction(5, 4)
    assert harmonic_prefix(4, 1)[-1] == Fraction(25, 12)
    with pytest.raises(ValueError):
        harmonic(3, 0)


def test_mhs_examples():
    assert mhs((1, 2), 3) == Fraction(5, 12)
    assert Fraction(1, 4) + Fraction(1, 9) + Fraction(1, 18) == Fraction(5, 12)
    assert mhs((-1,), 2) == Fraction(-1, 2)
    assert mhs((2, 2), 1) == 0
    assert mhs(MHSIndex((3,)), 0) == 0


def test_mhs_index_validation():
    with pytest.raises(ValueError):
        MHSIndex((1, 0))
    with pytest.raises(ValueError):
        MHSIndex(())
    with pytest.raises(ValueError):
        mhs((2, 0, 1), 5)
    assert MHSIndex(3).entries == (3,)
    assert str(MHSIndex((2, -1))) == "2,-1"


entries = st.integers(-4, 4).filter(bool)


@settings(max_examples=60, deadline=None)
@given(st.lists(entries, min_size=1, max_size=3), st.integers(0, 18))
def test_mhs_matches_naive(s, n):
    assert mhs(s, n) == naive_mhs(s, n)


@given(st.integers(0, 60), st.integers(1, 6))
def test_harmonic_is_depth_one_mhs(n, m):
    assert harmonic(n, m) == mhs((m,), n)


def test_mhs_prefix_is_consistent():
    pre = mhs_prefix((2, -1, 3), 25)
    assert pre == [naive_mhs((2, -1, 3), n) for n in range(26)]


# ---------------------------------------------------------------- binomials / Apery


def test_pascal_consistency():
    row = [1]
    for n in range(61):
        assert [binom(n, k) for k in range(n + 1)] == row
        row = [1] + [row[i] + row[i + 1] for i in range(n)] + [1]
    assert binom(5, -1) == binom(5, 6) == binom(-1, 0) == 0


def test_apery_examples():
    assert [apery(0), apery(1), apery(2)] == [1, 5, 73]
    assert 1 + 4 == 5 and 1 + 36 + 36 == 73


def test_apery_recurrence():
    # n^3 A_n = (34n^3 - 51n^2 + 27n - 5) A_{n-1} - (n-1)^3 A_{n-2}
    a = apery_list(201)
    for n in range(2, 201):
        assert n**3 * a[n] == (34 * n**3 - 51 * n**2 + 27 * n - 5) * a[n - 1] - (n - 1) ** 3 * a[n - 2]


def test_apery_positive_increasing():
    a = apery_list(201)
    assert a[0] > 0
    assert all(x < y for x, y in zip(a, a[1:]))


def test_apery_forms_agree():
    assert all(apery(n) == apery_second_form(n) for n in range(60))


def test_apery_poly():
    assert all(apery_poly(n, 1) == apery(n) for n in range(21))
    assert apery_poly(1, 2) == 9
    assert apery_poly(3, 0) == 1
    direct = sum(binom(7 + k, k) ** 2 * binom(7, k) ** 2 * (-3) ** k for k in range(8))
    assert apery_poly(7, -3) == direct


def test_fermat_quotient():
    assert fermat_quotient_2(3) == 1
    assert fermat_quotient_2(7) == 9
    assert fermat_quotient_2(11) == 93
    with pytest.raises(ArithmeticError):
        fermat_quotient_2(9)
    with pytest.raises(ValueError):
        fermat_quotient_2(4)


# ---------------------------------------------------------------- per prime


def brute_convolution(p, t):
    ks = range(2, p - 2)
    return (
        sum((t[k] * t[p - 3 - k] for k in ks), Fraction(0)),
        sum((2**k * t[k] * t[p - 3 - k] for k in ks), Fraction(0)),
        sum((t[k] * t[p - 3 - k] / k for k in ks), Fraction(0)),
        sum((2**k * t[k] * t[p - 3 - k] / k for k in ks), Fraction(0)),
        sum((2 ** (p - 3 - k) * t[k] * t[p - 3 - k] / k for k in ks), Fraction(0)),
    )


def test_convolution_sums_p7(table400):
    A, B, D, E, F = convolution_sums(7, table400)
    assert A == Fraction(1, 36) - Fraction(1, 30) == Fraction(-1, 180)
    assert D == Fraction(1, 72) - Fraction(1, 120) == Fraction(1, 180)
    assert B == Fraction(1, 9) - Fraction(8, 15) == Fraction(-19, 45)
    assert E == Fraction(-7, 90)
    assert F == Fraction(17, 360)


@pytest.mark.parametrize("p", [11, 13, 31, 97])
def test_convolution_sums_brute(p, table400):
    assert convolution_sums(p, table400) == brute_convolution(p, table400)


def test_convolution_sums_rejects_short_table():
    with pytest.raises(ValueError):
        convolution_sums(31, bernoulli_table(20))


def test_prime_context_p7(table400):
    c = prime_context(7, table400)
    assert c.h(1) == Fraction(49, 20)
    assert c.q2 == 9
    assert c.Sigma1 == sum(Fraction(1, d) for d in (1, 3, 5, 7, 9, 11, 13))
    assert c.Sigma2 == sum(harmonic(k, 2) / (2 * k + 1) for k in range(7))
    assert c.X == table400[4] / 4 - table400[10] / 20
    assert c.hh(3) == harmonic(3, 3)
    assert c.mhs_series((2, -1)) == mhs_prefix((2, -1), 6)
    assert c.apery_sums == (
        sum((2 * k + 1) * apery(k) for k in range(7)),
        sum((2 * k + 1) ** 3 * apery(k) for k in range(7)),
    )


def test_prime_context_rejects():
    with pytest.raises(ValueError):
        prime_context(11, bernoulli_table(10))
    with pytest.raises(ValueError):
        prime_context(9, bernoulli_table(40))
    with pytest.raises(ValueError):
        prime_context(5, bernoulli_table(40))


@pytest.mark.parametrize("p", list(primes_in_range(3, 97)))
def test_harmonic_reflection(p):
    H1 = harmonic_prefix(p - 1, 1)
    H2 = harmonic_prefix(p - 1, 2)
    for k in range(p):
        assert rat_congruent(H1[p - 1 - k], H1[k], p, 1)
        if p >= 5:
            assert rat_congruent(H2[p - 1 - k], -H2[k], p, 1)


def test_second_order_reflection_fails_at_3():
    # the k = 0 case is H_{p-1}^(2) = 0 mod p, false for p = 3
    assert harmonic(2, 2) == Fraction(5, 4)
    assert not rat_congruent(harmonic(2, 2), 0, 3, 1)
