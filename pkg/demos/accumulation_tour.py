"""Tour of the exact accumulation-point identities.

Every equality printed below is checked bit-exactly in Q(sqrt(30)) (or the
relevant quadratic field); decimals are renderings only.
"""

from fractions import Fraction as F

from polycap import (
    MAIN_BETA,
    QuadNum,
    acc_point,
    cf_of_quadratic,
    is_blocked,
    vol_at_acc,
)
from polycap.perfclass import STEP_MAIN, blocker_class, outer_family

beta = MAIN_BETA
acc = acc_point(beta)
vol = vol_at_acc(beta)

print(f"beta      = {beta}  ≈ {beta.decimal(12)}")
print(f"acc(beta) = {acc}  ≈ {acc.decimal(12)}")
print(f"vol(beta) = {vol}  ≈ {vol.decimal(12)}")
print()

print("The accumulation point is a root of z^2 - (2(b+1)^2/b - 2) z + 1:")
c = (beta + 1) * (beta + 1) * 2 / beta - 2
print(f"  residue = {acc * acc - c * acc + 1}  (exact zero)")
print(f"  smaller root = 1/acc: acc * (c - acc) = {acc * (c - acc)}")
print()

print("Its continued fraction is purely four-periodic:")
print(f"  cf(acc) = {cf_of_quadratic(acc)}")
print()

print("Closed identities tying the step class (17,6,41,5,22) to the volume:")
print(f"  1/vol == (4b-7)/5:        {vol.inverse() == (beta * 4 - 7) / 5}")
print(f"  vol == 5 acc/(17+6b):     {vol == acc * 5 / (beta * 6 + 17)}")
print(f"  is_blocked(step, beta) -> {is_blocked(STEP_MAIN, beta)!r} (exact equality case)")
print(f"  is_blocked(E_0, beta)  -> {is_blocked(outer_family(0), beta)!r}")
print()

print("Integer polydisks are blocked by their blocker classes:")
for n in (2, 3, 4):
    a_n = acc_point(n)
    print(f"  n={n}: acc = {a_n} ≈ ({a_n.decimal(3)}, {vol_at_acc(n).decimal(3)})"
          f"  -> {is_blocked(blocker_class(n), n)}")
print()

print("acc increases and vol decreases along rational beta samples:")
for b in (1, F(3, 2), 2, F(5, 2), 3):
    q = QuadNum.of(b)
    print(f"  beta={str(b):>4}: acc ≈ {acc_point(q).decimal(8)}, "
          f"vol ≈ {vol_at_acc(q).decimal(8)}")
