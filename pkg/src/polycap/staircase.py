"""Accumulation points, volume comparisons, blocked values, and corner suites.

The accumulation point of P(1, beta) is the larger root of

    z**2 - (2*(beta+1)**2/beta - 2)*z + 1 = 0,

kept exact whenever the discriminant's square root lives in beta's own
quadratic field.  Volume-curve comparisons are decided by squaring
(lam**2 * 2*beta vs z), so sqrt(z / (2*beta)) is never constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import KIND_CLASS, KIND_CORNER, KIND_VOLUME_ONLY, BoundSample
from .cfweights import cf_of_rational
from .exactnum import MixedRadicandError, QuadLike, QuadNum, quad_sqrt
from .perfclass import QuasiPerfectClass, inner_family, mu, mu_at_center, outer_family
from .report import entry

BLOCKED = "blocked"
EQUAL = "equal"
BELOW = "below"


class RadicandExplosionError(ArithmeticError):
    """acc(beta) does not lie in beta's quadratic field."""


def _acc_coefficient(beta: QuadNum) -> QuadNum:
    """The linear coefficient 2*(beta+1)**2/beta - 2 of the accumulation quadratic."""
    return (beta + 1) * (beta + 1) * 2 / beta - 2


def acc_point(beta: QuadLike) -> QuadNum:
    """Larger root of the accumulation quadratic, exact.

    The smaller root is its reciprocal (the roots multiply to 1).  When the
    discriminant's square-free part is incompatible with beta's radicand,
    the value lives in a biquadratic field and RadicandExplosionError is
    raised with certified 50-digit bounds instead of an approximation.
    """
    b = QuadNum.of(beta)
    if b < 1:
        raise ValueError("beta must be >= 1")
    c = _acc_coefficient(b)
    disc = c * c - 4
    root = quad_sqrt(disc)
    if root is None:
        root_mixed = True
    else:
        try:
            return (c + root) / 2
        except MixedRadicandError:
            root_mixed = True
    if root_mixed:
        lo = (Fraction(c.decimal(50, "down")) + _frac_sqrt_down(disc, 50)) / 2
        hi = (Fraction(c.decimal(50, "up")) + _frac_sqrt_up(disc, 50)) / 2
        raise RadicandExplosionError(
            f"acc(beta) is not in Q(sqrt({b.D})); certified bounds "
            f"[{lo}, {hi}]")


def _frac_sqrt_down(x: QuadNum, digits: int) -> Fraction:
    from math import isqrt
    scaled = x * 10 ** (2 * digits)
    return Fraction(isqrt(scaled.floor()), 10 ** digits)


def _frac_sqrt_up(x: QuadNum, digits: int) -> Fraction:
    from math import isqrt
    scaled = x * 10 ** (2 * digits)
    r = isqrt(scaled.floor())
    return Fraction(r + 1, 10 ** digits)


def vol_at_acc(beta: QuadLike) -> QuadNum:
    """Value of the volume curve at the accumulation point: (1 + acc)/(2 + 2*beta)."""
    b = QuadNum.of(beta)
    return (acc_point(b) + 1) / ((b + 1) * 2)


@dataclass(frozen=True)
class AccumulationData:
    """beta with its accumulation point and volume value, invariants checked."""

    beta: QuadNum
    acc: QuadNum
    vol: QuadNum

    def __post_init__(self) -> None:
        c = _acc_coefficient(self.beta)
        residue = self.acc * self.acc - c * self.acc + 1
        if not residue.is_zero():
            raise ValueError("acc does not satisfy the accumulation quadratic")
        if not self.acc > 1:
            raise ValueError("acc must exceed 1")
        if self.vol != (self.acc + 1) / ((self.beta + 1) * 2):
            raise ValueError("vol != (1+acc)/(2+2*beta)")


def accumulation_data(beta: QuadLike) -> AccumulationData:
    b = QuadNum.of(beta)
    return AccumulationData(beta=b, acc=acc_point(b), vol=vol_at_acc(b))


def is_above_volume(lam: QuadLike, z: QuadLike, beta: QuadLike) -> bool:
    """lam >= sqrt(z / (2*beta)), decided exactly by squaring."""
    lam_q, z_q, b = QuadNum.of(lam), QuadNum.of(z), QuadNum.of(beta)
    if lam_q.sign() <= 0:
        raise ValueError("lam must be positive")
    return (lam_q * lam_q * 2 * b - z_q).sign() >= 0


def is_blocked(c: QuasiPerfectClass, beta: QuadLike) -> str:
    """Trichotomy of mu(c, beta, acc(beta)) against the volume value.

    "blocked" rules out an infinite staircase; the staircase case is exact
    equality and must stay distinguishable from strict inequality.
    """
    b = QuadNum.of(beta)
    obstruction = mu(c, b, acc_point(b))
    s = obstruction.cmp(vol_at_acc(b))
    return BLOCKED if s > 0 else (EQUAL if s == 0 else BELOW)


def corner_points(k: int, beta: QuadLike) -> tuple[BoundSample, Optional[BoundSample]]:
    """Outer corners: O_k from the outer class, and (for k >= 1) the hat corner."""
    b = QuadNum.of(beta)
    ek = outer_family(k)
    outer = BoundSample(z=QuadNum.of(ek.center), lam=mu_at_center(ek, b),
                        kind=KIND_CORNER, label=f"O{k}")
    if k < 1:
        return outer, None
    hk = inner_family(k)
    hat = BoundSample(z=QuadNum.of(hk.center), lam=mu_at_center(hk, b),
                      kind=KIND_CORNER, label=f"Ohat{k}")
    return outer, hat


def inner_corners(k: int, beta: QuadLike) -> tuple[BoundSample, BoundSample]:
    """The two inner-corner intersections below/above the k-th outer corner.

    The first is where the horizontal line through O_k meets the ray from
    the origin through the (k+1)-th hat corner; the second swaps the roles.
    """
    b = QuadNum.of(beta)
    ek, hk1, ek1 = outer_family(k), inner_family(k + 1), outer_family(k + 1)
    den_k = b * ek.e + ek.d
    den_h = b * hk1.e + hk1.d
    den_k1 = b * ek1.e + ek1.d
    first = BoundSample(
        z=den_h * ek.p / (den_k * hk1.q),
        lam=QuadNum.of(ek.p) / den_k,
        kind=KIND_CORNER, label=f"I{k + 1}")
    second = BoundSample(
        z=den_k1 * hk1.p / (den_h * ek1.q),
        lam=QuadNum.of(hk1.p) / den_h,
        kind=KIND_CORNER, label=f"Ihat{k + 1}")
    return first, second


_entry = entry


def verify_alternation(k_max: int, beta: QuadLike) -> list[dict]:
    """Ordering chains of centers and obstruction values, plus the sandwich
    of each inner corner between the neighbouring centers.  Exact."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    b = QuadNum.of(beta)
    report: list[dict] = []
    for k in range(k_max):
        ek, hk1, ek1 = outer_family(k), inner_family(k + 1), outer_family(k + 1)
        report.append(_entry("center<hat-center", k,
                             ek.center < hk1.center, ek.center, hk1.center))
        report.append(_entry("hat-center<center", k,
                             hk1.center < ek1.center, hk1.center, ek1.center))
        mu_k, mu_h, mu_k1 = (mu_at_center(c, b) for c in (ek, hk1, ek1))
        report.append(_entry("mu<hat-mu", k, mu_k < mu_h, mu_k, mu_h))
        report.append(_entry("hat-mu<mu", k, mu_h < mu_k1, mu_h, mu_k1))
        z_in = inner_corners(k, b)[0].z
        report.append(_entry("center<=z_in", k,
                             QuadNum.of(ek.center) <= z_in, ek.center, z_in))
        report.append(_entry("z_in<=hat-center", k,
                             z_in <= QuadNum.of(hk1.center), z_in, hk1.center))
    return report


#: Convergent matrix of the accumulation point's continued fraction: columns
#: are the third and second convergents (457/56 and 204/25).
CF_STEP_MATRIX = ((457, 204), (56, 25))

MAIN_BETA = QuadNum(Fraction(1, 2), Fraction(5, 12), 30)


def verify_cf_recursion(k_max: int) -> list[dict]:
    """The two-step convergent matrix reproduces the outer centers, the
    continued fractions carry the four-periodic prefix, and the centers
    approach the accumulation point monotonically."""
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    acc = acc_point(MAIN_BETA)
    report: list[dict] = []
    (m11, m12), (m21, m22) = CF_STEP_MATRIX
    for k in range(2, k_max + 1):
        prev, cur = outer_family(k - 2), outer_family(k)
        u = m11 * prev.p + m12 * prev.q
        v = m21 * prev.p + m22 * prev.q
        report.append(_entry("matrix-step-p", k, u == cur.p, u, cur.p))
        report.append(_entry("matrix-step-q", k, v == cur.q, v, cur.q))
        cf_cur = cf_of_rational(cur.p, cur.q)
        cf_prev = cf_of_rational(prev.p, prev.q)
        want = (8, 6, 4, 2) + cf_prev.pre
        report.append(_entry("cf-prefix", k, cf_cur.pre == want,
                             cf_cur.to_json(), {"pre": list(want), "period": []}))
    for k in range(k_max):
        gap = abs(QuadNum.of(outer_family(k).center) - acc)
        gap_next = abs(QuadNum.of(outer_family(k + 1).center) - acc)
        report.append(_entry("center-gap-decreasing", k,
                             gap_next < gap, gap_next, gap))
    return report


def _closed_form_constants() -> dict[str, tuple[QuadNum, QuadNum]]:
    def pair(a: Fraction, b: Fraction) -> tuple[QuadNum, QuadNum]:
        return QuadNum(a, b, 30), QuadNum(a, -b, 30)
    return {
        "d": pair(Fraction(3, 2), Fraction(31, 120)),
        "e": pair(Fraction(1, 2), Fraction(1, 10)),
        "q": pair(Fraction(1, 2), Fraction(1, 15)),
        "p": pair(Fraction(7, 2), Fraction(13, 20)),
    }


def verify_closed_forms(k_max: int) -> list[dict]:
    """x_k = X*r**k + Xbar*r**-k with r = 11 + 2*sqrt(30), checked exactly by
    clearing r**-k: x_k * r**k == X * r**2k + Xbar."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    r = QuadNum(Fraction(11), Fraction(2), 30)
    consts = _closed_form_constants()
    report: list[dict] = []
    rk = QuadNum.of(1)
    for k in range(k_max + 1):
        ek = outer_family(k)
        comps = {"d": ek.d, "e": ek.e, "p": ek.p, "q": ek.q}
        r2k = rk * rk
        for name, (x, xbar) in consts.items():
            lhs = rk * comps[name]
            rhs = x * r2k + xbar
            report.append(_entry(f"closed-form-{name}", k, lhs == rhs, lhs, rhs))
        rk = rk * r
    return report


def volume_curve_decimal(z: QuadLike, beta: QuadLike, digits: int = 40) -> str:
    """sqrt(z / (2*beta)) rounded down at `digits` digits, via integer sqrt.

    Rendering only; the exact modules never build this square root.
    """
    from math import isqrt
    zq, b = QuadNum.of(z), QuadNum.of(beta)
    scaled = zq / (b * 2) * 10 ** (2 * digits)
    n = isqrt(scaled.floor())
    whole, frac = divmod(n, 10 ** digits)
    return f"{whole}.{frac:0{digits}d}"


def envelope(beta: QuadLike, classes: Sequence[QuasiPerfectClass],
             z_samples: Sequence[QuadLike]) -> list[BoundSample]:
    """Pointwise max of the class obstructions, tagged with the argmax class.

    An empty class list yields volume-only sentinels (lam is None): the
    volume curve is the only bound in play and is rendered elsewhere.
    """
    b = QuadNum.of(beta)
    out: list[BoundSample] = []
    for z in z_samples:
        zq = QuadNum.of(z)
        if not classes:
            out.append(BoundSample(z=zq, lam=None, kind=KIND_VOLUME_ONLY))
            continue
        best: Optional[QuadNum] = None
        best_c: Optional[QuasiPerfectClass] = None
        for c in classes:
            val = mu(c, b, zq)
            if best is None or val > best:
                best, best_c = val, c
        out.append(BoundSample(z=zq, lam=best, kind=KIND_CLASS, label=str(best_c)))
    return out
