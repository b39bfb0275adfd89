"""
Sweeping the two main congruences
=================================

Both sides are evaluated exactly; the p-adic valuation of their difference
must reach 6 (first theorem) or 9 (second theorem).
"""
from aperycheck import run_suite
from aperycheck.exact_arith import primes_in_range

primes = list(primes_in_range(5, 101))
results = run_suite("theorem1", primes) + run_suite("theorem2", primes)

print(f"{'p':>4} {'C06 v_p':>8} {'C09 v_p':>8} {'C08 v_p':>8}")
by = {(r.id, r.p): r for r in results}
for p in primes:
    cells = [by[(i, p)] for i in ("C06", "C09", "C08")]
    print(f"{p:>4}", *(f"{c.achieved_valuation if c.status != 'skip' else '-':>8}" for c in cells))

# the valuation is often larger than required, never smaller
assert all(r.status in ("pass", "skip") for r in results)
