"""Exact arithmetic over Q and real quadratic extensions Q(sqrt(D)).

Every quantity in this package is either a rational number or an element
a + b*sqrt(D) of a real quadratic field with square-free radicand D.  All
arithmetic, comparison, floor and decimal rendering below is exact: signs
are decided by integer case analysis (one squaring), never by floating
point.  Rational values are stored canonically with b = 0 and the wildcard
radicand D = 0, so they mix freely with values from any field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Union


class MixedRadicandError(ArithmeticError):
    """Two irrational operands live in different quadratic fields."""


RatLike = Union[int, Fraction]
QuadLike = Union[int, Fraction, "QuadNum"]


def square_free_split(n: int) -> tuple[int, int]:
    """Write n = s**2 * f with f square-free; returns (s, f)."""
    if n <= 0:
        raise ValueError("positive integer required")
    s, f = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                f *= d
        d += 1 if d == 2 else 2
    return s, f * n


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        raise ValueError("negative rational has no real square root")
    pn, pd = x.numerator, x.denominator
    rn, rd = isqrt(pn), isqrt(pd)
    if rn * rn == pn and rd * rd == pd:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class QuadNum:
    """The exact value a + b*sqrt(D), with rational a, b.

    Invariants: D is square-free and >= 2 whenever b != 0, and D == 0
    (wildcard) whenever b == 0.  Construction canonicalizes, folding any
    square factor of the radicand into b.
    """

    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self) -> None:
        a = Fraction(self.a)
        b = Fraction(self.b)
        D = self.D
        if b == 0:
            D = 0
        else:
            if D < 2:
                raise ValueError("irrational part requires radicand D >= 2")
            s, f = square_free_split(D)
            if f == 1:
                a, b, D = a + b * s, Fraction(0), 0
            else:
                b, D = b * s, f
                if b == 0:
                    D = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", D)

    # -- construction -------------------------------------------------

    @staticmethod
    def of(x: QuadLike) -> "QuadNum":
        if isinstance(x, QuadNum):
            return x
        return QuadNum(Fraction(x), Fraction(0), 0)

    @staticmethod
    def root(D: int, coeff: RatLike = 1) -> "QuadNum":
        """coeff * sqrt(D)."""
        return QuadNum(Fraction(0), Fraction(coeff), D)

    # -- predicates ---------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    def _join(self, other: "QuadNum") -> int:
        """Common radicand of two operands, or raise MixedRadicandError."""
        if self.D == 0:
            return other.D
        if other.D == 0 or other.D == self.D:
            return self.D
        raise MixedRadicandError(f"radicands differ: {self.D} vs {other.D}")

    # -- field arithmetic ----------------------------------------------

    def __add__(self, other: QuadLike) -> "QuadNum":
        o = QuadNum.of(other)
        D = self._join(o)
        return QuadNum(self.a + o.a, self.b + o.b, D)

    __radd__ = __add__

    def __neg__(self) -> "QuadNum":
        return QuadNum(-self.a, -self.b, self.D)

    def __sub__(self, other: QuadLike) -> "QuadNum":
        return self + (-QuadNum.of(other))

    def __rsub__(self, other: QuadLike) -> "QuadNum":
        return (-self) + other

    def __mul__(self, other: QuadLike) -> "QuadNum":
        o = QuadNum.of(other)
        D = self._join(o)
        return QuadNum(
            self.a * o.a + self.b * o.b * D,
            self.a * o.b + self.b * o.a,
            D,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadNum":
        return QuadNum(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        """Field norm a**2 - b**2 * D (product with the conjugate)."""
        return self.a * self.a - self.b * self.b * self.D

    def inverse(self) -> "QuadNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero QuadNum")
        n = self.norm()
        return QuadNum(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other: QuadLike) -> "QuadNum":
        o = QuadNum.of(other)
        self._join(o)
        return self * o.inverse()

    def __rtruediv__(self, other: QuadLike) -> "QuadNum":
        return QuadNum.of(other) / self

    # -- exact order ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Sign of a + b*sqrt(D) by the four-case table with one squaring."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: |a| vs |b|*sqrt(D), squared (never equal: D square-free)
        big_rational = a * a > b * b * self.D
        return (1 if big_rational else -1) if a > 0 else (-1 if big_rational else 1)

    def cmp(self, other: QuadLike) -> int:
        return (self - other).sign()

    def __lt__(self, other: QuadLike) -> bool:
        return self.cmp(other) < 0

    def __le__(self, other: QuadLike) -> bool:
        return self.cmp(other) <= 0

    def __gt__(self, other: QuadLike) -> bool:
        return self.cmp(other) > 0

    def __ge__(self, other: QuadLike) -> bool:
        return self.cmp(other) >= 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadNum.of(other)
        if not isinstance(other, QuadNum):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.D == other.D

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.D))

    def __abs__(self) -> "QuadNum":
        return -self if self.sign() < 0 else self

    # -- floor and decimal rendering -------------------------------------

    def floor(self) -> int:
        """Greatest integer <= a + b*sqrt(D), exactly.

        Writes the value as (P + Q*sqrt(D))/R with integers P, Q, R > 0 and
        uses isqrt: since sqrt(Q**2 * D) is irrational for Q != 0, the
        truncated integer root decides the floor without error.
        """
        qa, qb = self.a.denominator, self.b.denominator
        r = qa * qb // _gcd(qa, qb)
        p = self.a.numerator * (r // qa)
        q = self.b.numerator * (r // qb)
        if q == 0:
            return p // r
        t = isqrt(q * q * self.D)
        if q > 0:
            return (p + t) // r
        return (p - t - 1) // r

    def ceil(self) -> int:
        return -((-self).floor())

    def decimal(self, digits: int, rounding: str = "down") -> str:
        """Decimal string with `digits` fractional digits, directed rounding.

        "down" rounds toward -infinity, "up" toward +infinity, so rendered
        lower/upper bounds stay on the safe side of the exact value.
        """
        if digits < 1:
            raise ValueError("digits must be >= 1")
        if rounding not in ("down", "up"):
            raise ValueError("rounding must be 'down' or 'up'")
        scaled = self * (10 ** digits)
        n = scaled.floor()
        if rounding == "up" and scaled != n:
            n += 1
        sign = "-" if n < 0 else ""
        whole, frac = divmod(abs(n), 10 ** digits)
        return f"{sign}{whole}.{frac:0{digits}d}"

    # -- JSON encoding (shared verbatim by every other module) -----------

    def to_json(self) -> dict:
        return {
            "a": [str(self.a.numerator), str(self.a.denominator)],
            "b": [str(self.b.numerator), str(self.b.denominator)],
            "D": self.D,
        }

    @staticmethod
    def from_json(obj: dict) -> "QuadNum":
        a = Fraction(int(obj["a"][0]), int(obj["a"][1]))
        b = Fraction(int(obj["b"][0]), int(obj["b"][1]))
        return QuadNum(a, b, int(obj["D"]))

    # -- display ----------------------------------------------------------

    def pretty(self) -> str:
        """Human form over a common denominator, e.g. "(54+11√30)/14"."""
        if self.is_rational:
            return str(self.a)
        qa, qb = self.a.denominator, self.b.denominator
        c = qa * qb // _gcd(qa, qb)
        A = self.a.numerator * (c // qa)
        B = self.b.numerator * (c // qb)
        root = f"√{self.D}" if abs(B) == 1 else f"{abs(B)}√{self.D}"
        if A == 0:
            core = root if B > 0 else f"-{root}"
            return core if c == 1 else f"{core}/{c}"
        core = f"{A}+{root}" if B > 0 else f"{A}-{root}"
        return f"({core})" if c == 1 else f"({core})/{c}"

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        if self.is_rational:
            return f"QuadNum({self.a})"
        return f"QuadNum({self.a} + {self.b}*sqrt({self.D}))"


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return x


def quad_sqrt(x: QuadNum, prefer_radicand: Optional[int] = None) -> Optional[QuadNum]:
    """Square root of x within a quadratic field, if one exists there.

    For rational x the root lands in Q(sqrt(f)) with f the square-free part
    of the radicand.  For irrational x in Q(sqrt(D)) the root is searched in
    the same field by solving (u + v*sqrt(D))**2 = x over the rationals.
    Returns None when no quadratic-field root exists (the root would live in
    a biquadratic extension).  `prefer_radicand` is only a consistency check.
    """
    if x.sign() < 0:
        raise ValueError("negative value has no real square root")
    if x.is_zero():
        return QuadNum.of(0)
    if x.is_rational:
        v = x.as_fraction()
        r = rational_sqrt(v)
        if r is not None:
            return QuadNum.of(r)
        s, f = square_free_split(v.numerator * v.denominator)
        root = QuadNum.root(f, Fraction(s, v.denominator))
        if prefer_radicand is not None and f != prefer_radicand:
            return root  # still exact; caller decides whether fields mix
        return root
    sq = x.norm()
    if sq < 0:
        return None
    ns = rational_sqrt(sq)
    if ns is None:
        return None
    for branch in (ns, -ns):
        u2 = (x.a + branch) / 2
        if u2 <= 0:
            continue
        u = rational_sqrt(u2)
        if u is None:
            continue
        v = x.b / (2 * u)
        cand = QuadNum(u, v, x.D)
        if cand * cand == x and cand.sign() > 0:
            return cand
    return None
