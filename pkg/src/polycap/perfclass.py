"""Quasi-perfect Diophantine class algebra.

A class is an integer 5-tuple (d, e, p, q, t) with

    2(d + e) = p + q,   2de = pq - 1,   t**2 = p**2 + q**2 - 6pq + 8,

equivalently 4d = p + q + t and 4e = p + q - t.  Classes are generated by
the linear recursion x_i = nu*x_{i-1} - x_{i-2} on the quadric surface
x^T A x = 8 over (p, q, t), with A = [[-1,3,0],[3,-1,0],[0,0,1]]; the
recursion transfers to d and e.  Each class carries the obstruction
mu(z) = W(p, q) . w(z) / (d + e*beta) bounding the embedding function
from below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence, Union

from .cfweights import (
    cf_eval,
    cf_of_rational,
    cf_shift_entries,
    integral_weights,
    weight_expansion,
    weight_prefix,
)
from .exactnum import QuadLike, QuadNum


class SeedIncompatibleError(ValueError):
    """Recursion seeds fail the quadric or 4*nu compatibility conditions."""


def qp_check(c: Sequence[int]) -> tuple[bool, list[str]]:
    """Verify all quasi-perfect invariants; returns (ok, failed equations)."""
    d, e, p, q, t = (int(v) for v in c)
    bad: list[str] = []
    if 2 * (d + e) != p + q:
        bad.append(f"2(d+e) != p+q ({2 * (d + e)} != {p + q})")
    if 2 * d * e != p * q - 1:
        bad.append(f"2de != pq-1 ({2 * d * e} != {p * q - 1})")
    if t * t != p * p + q * q - 6 * p * q + 8:
        bad.append(f"t^2 != p^2+q^2-6pq+8 ({t * t} != {p * p + q * q - 6 * p * q + 8})")
    if p < 1 or q < 1 or gcd(p, q) != 1:
        bad.append(f"gcd(p,q) != 1 or nonpositive ({p},{q})")
    if not (p > q >= 1):
        bad.append(f"p > q >= 1 fails ({p},{q})")
    if not (d > e >= 1):
        bad.append(f"d > e >= 1 fails ({d},{e})")
    if 4 * d != p + q + t:
        bad.append(f"4d != p+q+t ({4 * d} != {p + q + t})")
    if 4 * e != p + q - t:
        bad.append(f"4e != p+q-t ({4 * e} != {p + q - t})")
    return (not bad, bad)


@dataclass(frozen=True)
class QuasiPerfectClass:
    d: int
    e: int
    p: int
    q: int
    t: int

    def __post_init__(self) -> None:
        ok, bad = qp_check((self.d, self.e, self.p, self.q, self.t))
        if not ok:
            raise ValueError(f"not a quasi-perfect class {self.tuple()}: " + "; ".join(bad))

    def tuple(self) -> tuple[int, int, int, int, int]:
        return (self.d, self.e, self.p, self.q, self.t)

    @property
    def center(self) -> Fraction:
        return Fraction(self.p, self.q)

    def to_json(self) -> dict:
        return {k: str(v) for k, v in zip("depqt", self.tuple())}

    @staticmethod
    def from_json(obj: dict) -> "QuasiPerfectClass":
        return QuasiPerfectClass(*(int(obj[k]) for k in "depqt"))

    def __str__(self) -> str:
        return f"({self.d},{self.e},{self.p},{self.q},{self.t})"


def from_pq(p: int, q: int) -> Optional[QuasiPerfectClass]:
    """The class centered at p/q, if the Diophantine conditions admit one."""
    if not (p > q >= 1) or gcd(p, q) != 1:
        raise ValueError("requires p > q >= 1 coprime")
    disc = p * p + q * q - 6 * p * q + 8
    if disc < 0:
        return None
    t = isqrt(disc)
    if t * t != disc:
        return None
    if (p + q + t) % 4 or (p + q - t) % 4:
        return None
    d, e = (p + q + t) // 4, (p + q - t) // 4
    ok, _ = qp_check((d, e, p, q, t))
    return QuasiPerfectClass(d, e, p, q, t) if ok else None


def _quadric_product(c1: QuasiPerfectClass, c2: QuasiPerfectClass) -> int:
    """x1^T A x2 over the (p, q, t) coordinates."""
    return (3 * (c1.p * c2.q + c1.q * c2.p)
            - c1.p * c2.p - c1.q * c2.q + c1.t * c2.t)


def combine(t: int, c1: QuasiPerfectClass, c2: QuasiPerfectClass) -> tuple[int, ...]:
    """Raw componentwise t*c1 - c2 (the x-mutation primitive); caller re-verifies."""
    return tuple(t * a - b for a, b in zip(c1.tuple(), c2.tuple()))


def recurse(x0: QuasiPerfectClass, x1: QuasiPerfectClass,
            nu: int, n: int) -> list[QuasiPerfectClass]:
    """Extend seeds by x_i = nu*x_{i-1} - x_{i-2}, n steps, verified per step."""
    if _quadric_product(x0, x0) != 8 or _quadric_product(x1, x1) != 8:
        raise SeedIncompatibleError("seed does not lie on the quadric x^T A x = 8")
    if _quadric_product(x1, x0) != 4 * nu:
        raise SeedIncompatibleError(
            f"x1^T A x0 = {_quadric_product(x1, x0)} != 4*{nu}")
    out: list[QuasiPerfectClass] = []
    prev2, prev1 = x0, x1
    for _ in range(n):
        nxt = QuasiPerfectClass(*combine(nu, prev1, prev2))
        out.append(nxt)
        prev2, prev1 = prev1, nxt
    return out


def blocker_class(n: int) -> QuasiPerfectClass:
    """The class centered at the integer-polydisk-blocking value (2n+3)/1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return QuasiPerfectClass(n + 1, 1, 2 * n + 3, 1, 2 * n)


def step_class(n: int) -> QuasiPerfectClass:
    """The class giving the first step past the accumulation point, family n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return QuasiPerfectClass(2 * n * n + 4 * n + 1, 2 * n + 2,
                             4 * n * n + 10 * n + 5, 2 * n + 1,
                             2 * (2 * n * n + 2 * n - 1))


#: Step class for the main staircase (family n = 2); recursion constant t = 22.
STEP_MAIN = step_class(2)

_OUTER_SEEDS = (QuasiPerfectClass(3, 1, 7, 1, 4),
                QuasiPerfectClass(64, 23, 155, 19, 82))
_outer_cache: list[QuasiPerfectClass] = list(_OUTER_SEEDS)


def outer_family(k: int) -> QuasiPerfectClass:
    """k-th outer class of the main staircase (recursion constant 22)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    while len(_outer_cache) <= k:
        _outer_cache.append(
            QuasiPerfectClass(*combine(22, _outer_cache[-1], _outer_cache[-2])))
    return _outer_cache[k]


def inner_family(k: int) -> QuasiPerfectClass:
    """k-th inner class: the x-mutation t_{k-1} * E_k - STEP_MAIN, k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return QuasiPerfectClass(*combine(outer_family(k - 1).t, outer_family(k), STEP_MAIN))


def mu(c: QuasiPerfectClass, beta: QuadLike, z: QuadLike) -> QuadNum:
    """Obstruction W(p, q) . w(z) / (d + e*beta), exact.

    The dot product zero-pads the shorter sequence; for irrational z only
    len(W(p, q)) weights are ever needed.
    """
    b = QuadNum.of(beta)
    weights = integral_weights(c.p, c.q)
    zq = QuadNum.of(z)
    if zq.is_rational:
        wz: Sequence[Union[Fraction, QuadNum]] = weight_expansion(zq.as_fraction())
    else:
        wz = weight_prefix(zq, len(weights))
    dot = QuadNum.of(0)
    for wi, vi in zip(weights, wz):
        dot = dot + vi * wi
    return dot / (b * c.e + c.d)


def mu_at_center(c: QuasiPerfectClass, beta: QuadLike) -> QuadNum:
    """mu at z = p/q, which collapses to p / (d + e*beta)."""
    return QuadNum.of(c.p) / (QuadNum.of(beta) * c.e + c.d)


def adjacency(c1: QuasiPerfectClass, c2: QuasiPerfectClass) -> bool:
    """(p+q)(p'+q') - tt' = 8pq' with centers ordered p/q < p'/q'."""
    if c1.center > c2.center:
        c1, c2 = c2, c1
    lhs = (c1.p + c1.q) * (c2.p + c2.q) - c1.t * c2.t
    return lhs == 8 * c1.p * c2.q


def t_compat(c1: QuasiPerfectClass, c2: QuasiPerfectClass, t2: int) -> bool:
    """x^T A x' = 4 t''."""
    return _quadric_product(c1, c2) == 4 * t2


def ech_index(c: QuasiPerfectClass) -> int:
    """The capacity index (d+1)(e+1) - 1 = (p+1)(q+1)/2 - 1 of the class."""
    k1 = (c.d + 1) * (c.e + 1) - 1
    k2 = (c.p + 1) * (c.q + 1) // 2 - 1
    assert k1 == k2, f"index formulas disagree for {c}"
    return k1


def brahmagupta_shift(z: Union[Fraction, int, QuadNum]) -> Union[Fraction, QuadNum]:
    """The center symmetry S(z) = 6 - 1/z transporting staircases."""
    if isinstance(z, QuadNum):
        if z < 1:
            raise ValueError("requires z >= 1")
        return QuadNum.of(6) - z.inverse()
    z = Fraction(z)
    if z < 1:
        raise ValueError("requires z >= 1")
    return 6 - 1 / z


@dataclass(frozen=True)
class FamilyData:
    """Generated data for the n-th conjectural staircase family."""

    beta: QuadNum
    blocker: QuasiPerfectClass
    step_class: QuasiPerfectClass
    seed_centers: list[Fraction]


def family_n(n: int) -> FamilyData:
    """beta_n, its blocker and step classes, and the shifted-CF seed centers.

    beta_n = 1/2 + (2n+1) sqrt(n(n^3 + 2n^2 - 1)) / (2n(n+1)); any square
    factor of the radicand folds into the rational coefficient.  Seed
    centers come from the n = 2 seeds by adding 2n - 4 to each
    continued-fraction entry.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    radicand = n * (n ** 3 + 2 * n * n - 1)
    beta = QuadNum(Fraction(1, 2), Fraction(2 * n + 1, 2 * n * (n + 1)), radicand)
    shift = 2 * n - 4
    seeds = []
    for p, q in ((7, 1), (155, 19)):
        cf = cf_shift_entries(cf_of_rational(p, q), shift)
        seeds.append(cf_eval(cf))
    return FamilyData(beta=beta, blocker=blocker_class(n),
                      step_class=step_class(n), seed_centers=seeds)


#: Inner class at k = 1.  Its t-component is pinned three independent ways:
#: t = 2(d - e), the quadric t**2 = p**2 + q**2 - 6pq + 8, and the recursion
#: t_0 * t(E_1) - t(step) = 4*82 - 22.
INNER_1 = (239, 86, 579, 71, 306)


def verify_families(k_max: int) -> list[dict]:
    """Diophantine verification of both recursion families up to k_max.

    Recomputes the raw tuples by pure integer recursion (independently of
    the validating constructors), runs qp_check on each, pins the literal
    seed tuples, and checks the adjacency/compatibility chain.
    """
    from .report import entry

    report: list[dict] = []
    raw_outer: list[tuple[int, ...]] = [(3, 1, 7, 1, 4), (64, 23, 155, 19, 82)]
    while len(raw_outer) <= k_max:
        raw_outer.append(tuple(22 * a - b for a, b in zip(raw_outer[-1], raw_outer[-2])))
    step_raw = (17, 6, 41, 5, 22)
    for k in range(k_max + 1):
        ok, bad = qp_check(raw_outer[k])
        report.append(entry("qp-outer", k, ok, list(raw_outer[k]), bad or "quasi-perfect"))
        if k >= 1:
            t_prev = raw_outer[k - 1][4]
            raw_inner = tuple(t_prev * a - b for a, b in zip(raw_outer[k], step_raw))
            ok, bad = qp_check(raw_inner)
            report.append(entry("qp-inner", k, ok, list(raw_inner), bad or "quasi-perfect"))
    literals = [
        ("literal-outer0", outer_family(0).tuple(), (3, 1, 7, 1, 4)),
        ("literal-outer1", outer_family(1).tuple(), (64, 23, 155, 19, 82)),
        ("literal-step", STEP_MAIN.tuple(), (17, 6, 41, 5, 22)),
        ("literal-inner1", inner_family(1).tuple(), INNER_1),
    ]
    for name, got, want in literals:
        report.append(entry(name, None, got == want, list(got), list(want)))
    for k in range(min(k_max, 10)):
        ek, ek1, hk1 = outer_family(k), outer_family(k + 1), inner_family(k + 1)
        report.append(entry("adjacent-outer", k, adjacency(ek, ek1), str(ek), str(ek1)))
        report.append(entry("compat-outer-22", k, t_compat(ek, ek1, 22), str(ek), str(ek1)))
        report.append(entry("adjacent-inner", k, adjacency(hk1, ek1), str(hk1), str(ek1)))
        report.append(entry("compat-inner-tk", k, t_compat(hk1, ek1, ek.t), str(hk1), str(ek1)))
    return report


@dataclass(frozen=True)
class ClassTriple:
    """Triple (lam, mid, rho) with the compatibility/adjacency hypotheses checked:
    (lam, mid) are t_rho-compatible and adjacent, (rho, mid) t_lam-compatible
    and adjacent."""

    lam: QuasiPerfectClass
    mid: QuasiPerfectClass
    rho: QuasiPerfectClass

    def __post_init__(self) -> None:
        if not (adjacency(self.lam, self.mid) and t_compat(self.lam, self.mid, self.rho.t)):
            raise ValueError("(lam, mid) must be t_rho-compatible and adjacent")
        if not (adjacency(self.rho, self.mid) and t_compat(self.rho, self.mid, self.lam.t)):
            raise ValueError("(rho, mid) must be t_lam-compatible and adjacent")


def triple_identities(tr: ClassTriple) -> list[dict]:
    """Instance-check the seven recursion/adjacency identities of a triple.

    Returns one report entry per identity with exact lhs/rhs; q_x and q_y
    denote the q-components of the x- and y-mutations of the triple.
    """
    lam, mid, rho = tr.lam, tr.mid, tr.rho
    q_x = lam.t * mid.q - rho.q
    q_y = rho.t * mid.q - lam.q
    checks: list[tuple[str, int, int]] = [
        ("i.a", lam.p + lam.q, mid.q * rho.t - rho.q * mid.t),
        ("i.b", 7 * lam.p - lam.q, mid.p * rho.t - mid.t * rho.p),
        ("ii.a", rho.p + rho.q, mid.p * lam.t - lam.p * mid.t),
        ("ii.b", rho.p - 7 * rho.q, lam.q * mid.t - mid.q * lam.t),
        ("iii.a", mid.p + mid.q, rho.q * lam.t + lam.p * rho.t),
        ("iii.b", 7 * mid.p - mid.q,
         6 * lam.p * rho.t + rho.p * lam.t - lam.q * rho.t),
        ("iii.c", 7 * mid.q - mid.p,
         6 * rho.q * lam.t + lam.q * rho.t - rho.p * lam.t),
        ("iv", lam.p * (rho.p - 6 * rho.q) + lam.q * rho.q, mid.t),
        ("v", lam.q * lam.t + rho.q * rho.t + mid.q * mid.t,
         mid.q * lam.t * rho.t),
        ("vi.1", lam.t * (1 + mid.p * mid.q - 6 * mid.q ** 2),
         q_x * (mid.p - 6 * mid.q) + mid.q * (rho.p - 6 * rho.q)),
        ("vi.2", lam.t * mid.q ** 2, q_x * mid.q + mid.q * rho.q),
        ("vii.1", rho.t * mid.q ** 2, q_y * mid.q + mid.q * lam.q),
        ("vii.2", rho.t * (mid.q * mid.p - 1), q_y * mid.p + mid.q * lam.p),
    ]
    report = []
    for name, lhs, rhs in checks:
        report.append({"check": f"triple-{name}", "k": None,
                       "status": "pass" if lhs == rhs else "fail",
                       "lhs": str(lhs), "rhs": str(rhs)})
    return report
