"""The Diophantine class recursions behind the staircase steps.

Generates the outer and inner families, checks their defining equations
as raw integer identities, and shows the family generator for other n.
"""

from polycap import MAIN_BETA, acc_point
from polycap.cfweights import cf_of_rational
from polycap.perfclass import (
    STEP_MAIN,
    adjacency,
    brahmagupta_shift,
    ech_index,
    family_n,
    from_pq,
    inner_family,
    mu_at_center,
    outer_family,
    qp_check,
    t_compat,
)

beta = MAIN_BETA

print("Outer classes E_k = 22 E_{k-1} - E_{k-2}:")
for k in range(5):
    c = outer_family(k)
    print(f"  E_{k} = {c}  center {c.center}  cf {cf_of_rational(c.p, c.q)}  "
          f"ech index {ech_index(c)}")
print()

print("Inner classes (x-mutations) t_{k-1} E_k - (17,6,41,5,22):")
for k in (1, 2):
    c = inner_family(k)
    print(f"  Ehat_{k} = {c}  qp_check: {qp_check(c.tuple())[0]}")
print()

print("Adjacency and compatibility chain (exact integer identities):")
for k in range(3):
    a, b = outer_family(k), outer_family(k + 1)
    print(f"  (E_{k}, E_{k + 1}): adjacent {adjacency(a, b)}, "
          f"22-compatible {t_compat(a, b, 22)}, |p'q - pq'| = "
          f"{abs(b.p * a.q - a.p * b.q)}")
print()

print("Obstruction values at the centers climb toward vol(beta):")
for k in range(4):
    c = outer_family(k)
    print(f"  mu(E_{k}) at center ≈ {mu_at_center(c, beta).decimal(12)}")
print()

print("from_pq recovers classes from their centers:")
print(f"  41/5 -> {from_pq(41, 5)},  7/1 -> {from_pq(7, 1)},  6/1 -> {from_pq(6, 1)}")
print()

print("Family generator (shift every cf entry by 2n-4):")
for n in (2, 3, 4):
    fd = family_n(n)
    print(f"  n={n}: beta_n = {fd.beta}, step {fd.step_class} "
          f"(index {ech_index(fd.step_class)}), seeds {fd.seed_centers}")
print()

print("The center symmetry S(z) = 6 - 1/z:")
print(f"  S(7) = {brahmagupta_shift(7)}, S(41/5) = {brahmagupta_shift(STEP_MAIN.center)}")
print(f"  S fixes acc(1): {brahmagupta_shift(acc_point(1)) == acc_point(1)}")
