"""
Exact identity sweeps and mutation probes
=========================================
"""
from aperycheck.identities import FAMILIES, check_lemma34, sweep

for fam in FAMILIES:
    reports = sweep(fam, trials=100, seed=1)
    print(f"{fam:<16} {sum(r.passed for r in reports)}/100")

r = check_lemma34(6, 2)
print(r.lhs, r.rhs, r.passed)

# perturb one constant of the right hand side and the checker notices
r = check_lemma34(6, 2, mutant=True)
print(r.lhs, r.rhs, r.passed)
