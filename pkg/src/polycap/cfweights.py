"""Weight expansions and continued fractions, rational and quadratic.

The weight expansion of z >= 1 is produced by the subtract/swap recursion
W(p, q) = (q) ∪ W(p - q, q) (symmetric in its arguments); its run lengths
are exactly the continued-fraction entries of z.  Quadratic irrationals get
eventually-periodic continued fractions, detected by exact repetition of
the complete quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional, Union

from .exactnum import QuadNum, QuadLike, quad_sqrt


class NotCoprimeError(ValueError):
    """p and q share a common factor."""


class EntryUnderflowError(ValueError):
    """An entrywise shift drove a continued-fraction entry below 1."""


@dataclass(frozen=True)
class ContinuedFraction:
    """Canonical CF: preperiod entries, plus a period for quadratic irrationals.

    All entries are >= 1, and a finite CF of length > 1 never ends in 1
    (trailing [..., a, 1] folds to [..., a + 1]), so equality of values is
    equality of representations.
    """

    pre: tuple[int, ...]
    period: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        pre = tuple(int(a) for a in self.pre)
        period = tuple(int(a) for a in self.period)
        if not pre and not period:
            raise ValueError("empty continued fraction")
        if not period and len(pre) > 1 and pre[-1] == 1:
            pre = pre[:-2] + (pre[-2] + 1,)
        if any(a < 1 for a in pre) or any(a < 1 for a in period):
            raise ValueError(f"entries must be >= 1: {pre} {period}")
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "period", period)

    @property
    def is_finite(self) -> bool:
        return not self.period

    def entries(self) -> Iterator[int]:
        """All entries, unrolling the period forever if present."""
        yield from self.pre
        while self.period:
            yield from self.period

    def to_json(self) -> dict:
        return {"pre": list(self.pre), "period": list(self.period)}

    @staticmethod
    def from_json(obj: dict) -> "ContinuedFraction":
        return ContinuedFraction(tuple(obj["pre"]), tuple(obj.get("period", ())))

    def __str__(self) -> str:
        inner = ",".join(str(a) for a in self.pre)
        if self.period:
            per = ",".join(str(a) for a in self.period)
            inner = f"{inner},{{{per}}}^∞" if inner else f"{{{per}}}^∞"
        return f"[{inner}]"


def integral_weights(p: int, q: int) -> list[int]:
    """Integral weight expansion W(p, q) for coprime positive p, q."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if gcd(p, q) != 1:
        raise NotCoprimeError(f"gcd({p},{q}) != 1")
    out: list[int] = []
    a, b = max(p, q), min(p, q)
    while a != b:
        out.append(b)
        a, b = max(a - b, b), min(a - b, b)
    out.append(b)
    return out


def weight_expansion(z: QuadLike) -> list[Fraction]:
    """Full finite weight expansion w(z) = W(p, q)/q of a rational z >= 1."""
    if isinstance(z, QuadNum):
        z = z.as_fraction()
    z = Fraction(z)
    if z < 1:
        raise ValueError("weight expansion requires z >= 1")
    p, q = z.numerator, z.denominator
    return [Fraction(w, q) for w in integral_weights(p, q)]


def weight_prefix(z: QuadNum, m: int) -> list[QuadNum]:
    """First m weights of w(z), exact, via the same subtract/swap recursion.

    For irrational z the expansion is infinite and this truncates; for
    rational z it stops early if the finite expansion runs out.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    z = QuadNum.of(z)
    if z < 1:
        raise ValueError("weight expansion requires z >= 1")
    out: list[QuadNum] = []
    x, y = z, QuadNum.of(1)
    while len(out) < m:
        if x < y:
            x, y = y, x
        out.append(y)
        x = x - y
        if x.is_zero():
            break
    return out


def cf_of_rational(p: int, q: int) -> ContinuedFraction:
    """Canonical finite continued fraction of p/q >= 1, coprime p, q."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    if p < q:
        raise ValueError("requires p/q >= 1")
    if gcd(p, q) != 1:
        raise NotCoprimeError(f"gcd({p},{q}) != 1")
    entries = []
    while q:
        a, r = divmod(p, q)
        entries.append(a)
        p, q = q, r
    return ContinuedFraction(tuple(entries))


def cf_eval(cf: ContinuedFraction, tail: Optional[QuadLike] = None) -> Union[Fraction, QuadNum]:
    """Exact value of a continued fraction.

    A finite CF evaluates to a Fraction (or QuadNum with a real tail >= 1
    appended as the last entry).  A periodic CF without a tail evaluates to
    its quadratic irrational value by solving the period's fixed point.
    """
    if cf.period:
        if tail is not None:
            raise ValueError("tail not allowed on a periodic continued fraction")
        tail = _period_fixed_point(cf.period)
    entries = list(cf.pre)
    if tail is None:
        v = Fraction(entries[-1])
        for a in reversed(entries[:-1]):
            v = a + 1 / v
        return v
    t = QuadNum.of(tail)
    if t < 1:
        raise ValueError("tail must be >= 1")
    v = t
    for a in reversed(entries):
        v = a + v.inverse()
    return v


def _period_fixed_point(period: tuple[int, ...]) -> QuadNum:
    """Purely periodic value y = [period..., y], the larger quadratic root."""
    r1, r0 = 1, 0  # convergent numerators of the period block
    s1, s0 = 0, 1
    for a in period:
        r1, r0 = a * r1 + r0, r1
        s1, s0 = a * s1 + s0, s1
    # y = (r1*y + r0)/(s1*y + s0)  =>  s1*y^2 + (s0 - r1)*y - r0 = 0
    disc = QuadNum.of(Fraction((s0 - r1) ** 2 + 4 * s1 * r0))
    root = quad_sqrt(disc)
    if root is None:
        raise ArithmeticError("period discriminant is not a quadratic surd")
    return (QuadNum.of(r1 - s0) + root) / (2 * s1)


def convergents(cf: ContinuedFraction, n: int) -> list[tuple[int, int]]:
    """Convergents (r_i, s_i) for i = 0..n, unrolling the period as needed."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if cf.is_finite and n >= len(cf.pre):
        raise ValueError(f"only {len(cf.pre)} entries available")
    out = []
    r1, r0 = 1, 0
    s1, s0 = 0, 1
    for i, a in enumerate(cf.entries()):
        r1, r0 = a * r1 + r0, r1
        s1, s0 = a * s1 + s0, s1
        out.append((r1, s1))
        if i == n:
            break
    return out


def cf_of_quadratic(x: QuadNum) -> ContinuedFraction:
    """Eventually-periodic continued fraction of a quadratic irrational x > 1.

    Iterates a -> floor(t), t -> 1/(t - a) with exact complete quotients;
    the first repeated quotient marks the earliest period start and the
    minimal period.
    """
    x = QuadNum.of(x)
    if x.is_rational:
        raise ValueError("x must be irrational; use cf_of_rational")
    if x <= 1:
        raise ValueError("requires x > 1")
    seen: dict[QuadNum, int] = {}
    entries: list[int] = []
    t = x
    while t not in seen:
        seen[t] = len(entries)
        a = t.floor()
        entries.append(a)
        t = (t - a).inverse()
    start = seen[t]
    return ContinuedFraction(tuple(entries[:start]), tuple(entries[start:]))


def cf_shift_entries(cf: ContinuedFraction, delta: int) -> ContinuedFraction:
    """Add delta to every entry, re-canonicalized; underflow below 1 is an error."""
    pre = tuple(a + delta for a in cf.pre)
    period = tuple(a + delta for a in cf.period)
    if any(a < 1 for a in pre) or any(a < 1 for a in period):
        raise EntryUnderflowError(f"shift by {delta} drives an entry below 1")
    return ContinuedFraction(pre, period)
