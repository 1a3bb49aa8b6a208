"""
Counting along a tower of blow-ups
==================================

Blow up a line in P^3 twice, with orders of annulment 2 then 1.  The number
of singular points on the second exceptional divisor grows linearly with
the foliation degree m.  A second tower reproduces a Milnor number of 22
on the strict transform, and the integrality of the recursion limits how
long a constant tower can run.
"""

from foliations.tower import (
    TowerState,
    blowup_bound,
    chern_integrals,
    first_nonintegral_level,
    mu_along,
    n_on_divisor,
    n_total,
)

for m in range(6, 13):
    t = TowerState(n=3, k=m, deg_w=1, chi=2, ells=(2, 1))
    print(f"m = {m:2d}: N(E_2) = {n_on_divisor(t, 2):3d}   4m - 8 = {4 * m - 8}")

# Chern integrals after each step (exact rationals).
t = TowerState(3, 7, 1, 2, (2, 1))
for j in range(3):
    print(j, chern_integrals(t, j))

# Degree-4 foliation with orders (1, 1).
q = TowerState(3, 4, 1, 2, (1, 1))
print("mu(W_1) =", mu_along(q, 1), " isolated points after two steps:", n_total(q, 2))

# Upper bound on the length of the tower and the first level where the
# integrality sequence fails for a constant tower.
for lam in (2, 30):
    for ell in (1, 2):
        print(f"Lambda0 = {lam:2d}, ell = {ell}: bound {blowup_bound(3, lam, ell):2d},"
              f" first non-integral level {first_nonintegral_level(3, lam, ell)}")
