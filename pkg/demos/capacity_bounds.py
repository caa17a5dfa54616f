"""Capacity tables, the lattice-path oracle, and the lower-bound sweep.

Shows the two independent routes to polydisk capacities agreeing, the
capacity-ratio values that reproduce the class obstructions, and a small
sweep with its saturation diagnostics.
"""

from fractions import Fraction as F

from polycap import (
    MAIN_BETA,
    ConvexLatticePath,
    QuadNum,
    ellipsoid_caps,
    lattice_count,
    lower_bound_sweep,
    omega_length,
    polydisk_cap,
    polydisk_cap_bruteforce,
    ratio_at,
)
from polycap.perfclass import STEP_MAIN, ech_index, inner_family, outer_family

beta = MAIN_BETA

print("Polydisk capacities c_k(P(1, beta)), closed form vs exhaustive paths:")
for k in (0, 1, 7, 20, 33):
    fast, slow = polydisk_cap(k, beta), polydisk_cap_bruteforce(k, beta)
    print(f"  k={k:>3}: {str(fast):>14}  oracle agrees: {fast == slow}")
print()

print("The realizing path for k = 125 is the 17 x 6 rectangle:")
rect = ConvexLatticePath(((0, 6), (17, 6), (17, 0)))
print(f"  encloses {lattice_count(rect)} lattice points (= 126 = k+1)")
print(f"  Omega-length {omega_length(rect, beta)} = 17 + 6 beta")
print()

print("Capacity ratios at the class indices reproduce the obstructions:")
for cls in (outer_family(0), STEP_MAIN, inner_family(1)):
    k = ech_index(cls)
    lhs = ratio_at(beta, k, cls.center)
    rhs = QuadNum.of(cls.p) / (beta * cls.e + cls.d)
    print(f"  class {cls} (k={k}): ratio == p/(d+e*beta): {lhs == rhs}")
print()

print("Ellipsoid capacities N(1, 7): first values", [
    str(v) for v in ellipsoid_caps(1, 7, 8).values])
print()

print("A small sweep (K = 300) around the first step:")
samples = [F(5), F(6), F(7), F(15, 2), F(8), F(41, 5), F(17, 2)]
for s in lower_bound_sweep(beta, 300, samples):
    note = "" if s.kind == "ech-ratio" else "   <- volume bound binding here"
    print(f"  z = {str(s.z.as_fraction()):>5}: lambda ≈ {s.lam.decimal(10)} "
          f"(argmax k = {s.label}){note}")
