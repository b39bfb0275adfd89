"""Exact verification of Apery-number congruences and the harmonic-sum machinery behind them."""
from .congruences import CATALOG, CheckResult, CongruenceCheck, run_c01_grid, run_check, run_divisibility_c07, run_kummer_grid, run_suite
from .exact_arith import INF, PrimePowerModulus, is_prime, legendre_symbol, mod_inverse, padic_valuation, rat_congruent
from .identities import IdentityReport
from .sequences import (
    BernoulliTable,
    MHSIndex,
    PrimeContext,
    apery,
    apery_poly,
    bernoulli_poly,
    bernoulli_table,
    convolution_sums,
    fermat_quotient_2,
    harmonic,
    mhs,
    prime_context,
)

__version__ = "0.1.0"
