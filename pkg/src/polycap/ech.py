"""ECH capacities of ellipsoids and polydisks, and the sup-ratio lower bound.

Ellipsoid capacities are the sorted multiset N(a, b) = {a*m + b*n}, merged
with a priority queue under exact comparisons.  Polydisk capacities come
from the lattice-path minimum: for the rectangle [0, beta] x [0, 1] the
Omega-length of a path collapses to x_end + beta * y_start, so

    c_k(P(1, beta)) = min{ m + n*beta : (m+1)(n+1) >= k+1 }.

That closed form is derived rather than quoted, hence the exhaustive
lattice-path oracle `polydisk_cap_bruteforce` kept alongside it.
"""

from __future__ import annotations

import csv
import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

from .bounds import KIND_ECH, KIND_VOLUME_CMP, BoundSample
from .exactnum import QuadLike, QuadNum

SWEEP_CSV_HEADER = ["z_a_num", "z_a_den", "z_b_num", "z_b_den", "D",
                    "lambda_40digits", "argmax_k"]


class KZeroError(ZeroDivisionError):
    """c_0 = 0: the capacity ratio at k = 0 is undefined."""


class TooLargeError(ValueError):
    """Brute-force lattice-path search past its combinatorial guard."""


class InvalidPathError(ValueError):
    """Vertex list is not a convex lattice path."""


@dataclass(frozen=True)
class ConvexLatticePath:
    """Lattice path from (0, y_start) on the y-axis to (x_end, 0) on the x-axis.

    Edges step weakly right and weakly down with strictly decreasing slopes,
    so the region under the path (together with the axes) is convex.
    """

    vertices: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        vs = tuple((int(x), int(y)) for x, y in self.vertices)
        if not vs:
            raise InvalidPathError("empty path")
        if any(x < 0 or y < 0 for x, y in vs):
            raise InvalidPathError("vertices must lie in the closed first quadrant")
        if vs[0][0] != 0:
            raise InvalidPathError("path must start on the y-axis")
        if vs[-1][1] != 0:
            raise InvalidPathError("path must end on the x-axis")
        edges = self._edges(vs)
        for dx, dy in edges:
            if (dx, dy) == (0, 0):
                raise InvalidPathError("zero edge")
            if dx < 0 or dy > 0:
                raise InvalidPathError("edges must step right and down")
        for (dx1, dy1), (dx2, dy2) in zip(edges, edges[1:]):
            if dx1 * dy2 - dy1 * dx2 >= 0:
                raise InvalidPathError("slopes must strictly decrease")
        object.__setattr__(self, "vertices", vs)

    @staticmethod
    def _edges(vs: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
        return [(x2 - x1, y2 - y1) for (x1, y1), (x2, y2) in zip(vs, vs[1:])]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return self._edges(self.vertices)

    @property
    def y_start(self) -> int:
        return self.vertices[0][1]

    @property
    def x_end(self) -> int:
        return self.vertices[-1][0]


@dataclass(frozen=True)
class CapacityTable:
    """ECH capacities c_0..c_K of one target, nondecreasing with c_0 = 0."""

    target: str
    values: tuple[QuadNum, ...]

    def __post_init__(self) -> None:
        vals = tuple(QuadNum.of(v) for v in self.values)
        if vals and not vals[0].is_zero():
            raise ValueError("c_0 must be 0")
        for u, v in zip(vals, vals[1:]):
            if u > v:
                raise ValueError("capacities must be nondecreasing")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, k: int) -> QuadNum:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)


def _ellipsoid_values_rational(a: Fraction, b: Fraction, k_max: int) -> list[Fraction]:
    """First k_max + 1 values of N(a, b) for rational a, b via a heap merge."""
    out: list[Fraction] = []
    heap: list[tuple[Fraction, int, int]] = [(Fraction(0), 0, 0)]
    while len(out) <= k_max:
        v, m, n = heapq.heappop(heap)
        out.append(v)
        heapq.heappush(heap, (v + b, m, n + 1))
        if n == 0:
            heapq.heappush(heap, (a * (m + 1), m + 1, 0))
    return out


def _ellipsoid_values_quad(a: QuadNum, b: QuadNum, k_max: int) -> list[QuadNum]:
    out: list[QuadNum] = []
    heap: list[tuple[QuadNum, int, int]] = [(QuadNum.of(0), 0, 0)]
    while len(out) <= k_max:
        v, m, n = heapq.heappop(heap)
        out.append(v)
        heapq.heappush(heap, (v + b, m, n + 1))
        if n == 0:
            heapq.heappush(heap, (a * (m + 1), m + 1, 0))
    return out


def ellipsoid_caps(a: QuadLike, b: QuadLike, k_max: int) -> CapacityTable:
    """Capacities c_0..c_K of E(a, b): one heap frontier entry per row of (a*m + b*n).

    Exact ties come out as repetitions, reproducing the multiset semantics.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    qa, qb = QuadNum.of(a), QuadNum.of(b)
    qa._join(qb)
    if qa.sign() <= 0 or qb.sign() <= 0:
        raise ValueError("ellipsoid parameters must be positive")
    if qa.is_rational and qb.is_rational:
        vals = [QuadNum.of(v) for v in
                _ellipsoid_values_rational(qa.as_fraction(), qb.as_fraction(), k_max)]
    else:
        vals = _ellipsoid_values_quad(qa, qb, k_max)
    return CapacityTable(f"E({qa},{qb})", tuple(vals))


def polydisk_cap(k: int, beta: QuadLike) -> QuadNum:
    """c_k(P(1, beta)) = min{ m + n*beta : (m+1)(n+1) >= k+1 }, exact."""
    if k < 0:
        raise ValueError("k must be >= 0")
    b = QuadNum.of(beta)
    if b < 1:
        raise ValueError("beta must be >= 1")
    best: QuadNum | None = None
    m = 0
    while best is None or best > m:
        n = -(-(k + 1) // (m + 1)) - 1  # smallest n with (m+1)(n+1) >= k+1
        val = b * n + m
        if best is None or val < best:
            best = val
        m += 1
    return best


def polydisk_cap_table(k_max: int, beta: QuadLike) -> CapacityTable:
    """c_0..c_K of P(1, beta), filled backward over exact divisor pairs."""
    b = QuadNum.of(beta)
    vals: list[QuadNum] = [QuadNum.of(0)] * (k_max + 1)
    if k_max >= 1:
        vals[k_max] = polydisk_cap(k_max, b)
        for k in range(k_max - 1, 0, -1):
            best = vals[k + 1]
            target = k + 1
            d = 1
            while d * d <= target:
                if target % d == 0:
                    for m1, n1 in ((d, target // d), (target // d, d)):
                        val = b * (n1 - 1) + (m1 - 1)
                        if val < best:
                            best = val
                d += 1
            vals[k] = best
    return CapacityTable(f"P(1,{b})", tuple(vals))


def omega_length(path: ConvexLatticePath, beta: QuadLike) -> QuadNum:
    """Omega-length of a path against the rectangle [0, beta] x [0, 1].

    Every edge (dx, dy) is tangent to the rectangle at its top-right corner
    (or anywhere along the top/right side, with the same determinant), so
    each contributes dx * 1 - dy * beta.
    """
    b = QuadNum.of(beta)
    total = QuadNum.of(0)
    for dx, dy in path.edges:
        total = total + (b * (-dy) + dx)
    return total


def lattice_count(path: ConvexLatticePath) -> int:
    """Lattice points enclosed by the path and the axes, boundary included.

    Computed via Pick's theorem on the closed polygon; degenerate paths
    (regions of zero area along an axis) are counted directly.
    """
    vs = path.vertices
    loop = [(0, 0)] + list(vs) + [(0, 0)]
    two_a = 0
    bnd = 0
    for (x1, y1), (x2, y2) in zip(loop, loop[1:]):
        two_a += x1 * y2 - x2 * y1
        if (x1, y1) != (x2, y2):
            bnd += gcd(abs(x2 - x1), abs(y2 - y1))
    two_a = abs(two_a)
    if two_a == 0:
        # degenerate region along one axis
        return max(path.x_end, path.y_start) + 1
    # Pick: A = I + B/2 - 1  =>  I + B = A + B/2 + 1
    return (two_a + bnd) // 2 + 1


def lattice_count_bruteforce(path: ConvexLatticePath, guard: int = 10_000) -> int:
    """Direct column-by-column enumeration; oracle for lattice_count."""
    vs = path.vertices
    if (path.x_end + 1) * (path.y_start + 1) > guard:
        raise TooLargeError("direct enumeration guard exceeded")
    count = 0
    for x in range(path.x_end + 1):
        h = _height_at(vs, x)
        if h is not None and h >= 0:
            count += h + 1
    return count


def _height_at(vs: Sequence[tuple[int, int]], x: int) -> int | None:
    """floor of the path height over column x, or None if x is past the path."""
    best: Fraction | None = None
    for (x1, y1), (x2, y2) in zip(vs, vs[1:]):
        if x1 <= x <= x2 and x1 != x2:
            h = Fraction(y1) + Fraction(y2 - y1, x2 - x1) * (x - x1)
            if best is None or h > best:
                best = h
        elif x1 == x2 == x:
            h = Fraction(max(y1, y2))
            if best is None or h > best:
                best = h
    if len(vs) == 1:
        best = Fraction(vs[0][1]) if vs[0][0] == x else None
    if best is None:
        return None
    return best.numerator // best.denominator


@lru_cache(maxsize=4)
def _region_profiles(max_count: int) -> dict[int, frozenset[tuple[int, int]]]:
    """All (x_end, y_start) endpoint profiles of convex lattice paths,
    bucketed by the exact number of enclosed lattice points (<= max_count).

    Enumeration is a DFS over edge sequences of strictly decreasing slope,
    pruned by the enclosed area (L >= A + 1).
    """
    cap = max_count - 1  # x_end, y_start and area are all <= L - 1
    dirs: list[tuple[Fraction, int, int]] = [(Fraction(0), 1, 0)]
    for dy in range(1, cap + 1):
        for dx in range(1, cap + 1):
            if dx * dy <= 2 * max_count and gcd(dx, dy) == 1:
                dirs.append((Fraction(dy, dx), dx, dy))
    dirs.sort()
    dirs.append((None, 0, 1))  # vertical drop, steepest, must come last
    found: dict[int, set[tuple[int, int]]] = {}

    def record(y0: int, x: int, two_a: int, bnd_path: int) -> None:
        if two_a == 0:
            count = max(x, y0) + 1
        else:
            count = (two_a + bnd_path + y0 + x) // 2 + 1
        if count <= max_count:
            found.setdefault(count, set()).add((x, y0))

    def dfs(y0: int, x: int, y: int, i0: int, two_a: int, bnd: int) -> None:
        if y == 0:
            record(y0, x, two_a, bnd)
            return
        for i in range(i0 + 1, len(dirs)):
            _, dx, dy = dirs[i]
            if dy == 0:
                m = 1
                while x + m * dx <= cap and two_a + 2 * m * dx * y <= 2 * cap:
                    dfs(y0, x + m * dx, y, i, two_a + 2 * m * dx * y, bnd + m)
                    m += 1
                continue
            if dx == 0:
                record(y0, x, two_a, bnd + y)  # vertical drop straight to the axis
                continue
            if dy > y:
                continue
            m = 1
            while m * dy <= y:
                ny = y - m * dy
                ntwo_a = two_a + m * dx * (y + ny)
                nx = x + m * dx
                if nx > cap or ntwo_a > 2 * cap:
                    break
                dfs(y0, nx, ny, i, ntwo_a, bnd + m)
                m += 1

    for x in range(0, cap + 1):
        record(0, x, 0, x)  # paths along the x-axis, including the single vertex
    for y0 in range(1, cap + 1):
        dfs(y0, 0, y0, -1, 0, 0)
    return {count: frozenset(pts) for count, pts in found.items()}


def polydisk_cap_bruteforce(k: int, beta: QuadLike) -> QuadNum:
    """Exhaustive minimum of omega_length over paths enclosing exactly k+1 points.

    The oracle behind polydisk_cap; the rectangle Omega-length depends only
    on the path endpoints, so profiles are enumerated once and shared.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k > 200:
        raise TooLargeError("brute force limited to k <= 200")
    b = QuadNum.of(beta)
    profiles = _region_profiles(max(k + 1, 61))
    best: QuadNum | None = None
    for x_end, y0 in profiles[k + 1]:
        val = b * y0 + x_end
        if best is None or val < best:
            best = val
    assert best is not None
    return best


def ratio_at(beta: QuadLike, k: int, z: QuadLike) -> QuadNum:
    """Exact ratio c_k(E(1, z)) / c_k(P(1, beta))."""
    if k == 0:
        raise KZeroError("c_0 = 0")
    if k < 0:
        raise ValueError("k must be >= 1")
    num = ellipsoid_caps(1, z, k)[k]
    den = polydisk_cap(k, beta)
    return num / den


def lower_bound_sweep(beta: QuadLike, k_max: int,
                      z_samples: Iterable[QuadLike]) -> list[BoundSample]:
    """max over 1 <= k <= K of the capacity ratio, per sample.

    The polydisk table is computed once and shared read-only; each sample
    builds its own ellipsoid table.  The running maximum is maintained by
    cross-multiplication so no division happens inside the loop.

    Each sample also runs the squared volume comparison lam**2 * 2*beta
    >= z.  Where the truncated max has not yet saturated past the volume
    curve (possible just right of an outer corner when K is modest), the
    sample's kind is "volume-comparison" instead of "ech-ratio": the
    reported lam is still the exact ratio max, but the binding lower bound
    at that z is the volume curve.
    """
    b = QuadNum.of(beta)
    ptable = polydisk_cap_table(k_max, b)
    out: list[BoundSample] = []
    for z in z_samples:
        zq = QuadNum.of(z)
        if zq < 1:
            raise ValueError("samples must satisfy z >= 1")
        if zq.is_rational:
            evals: Sequence[Union[Fraction, QuadNum]] = \
                _ellipsoid_values_rational(Fraction(1), zq.as_fraction(), k_max)
        else:
            evals = _ellipsoid_values_quad(QuadNum.of(1), zq, k_max)
        best_num: QuadNum = QuadNum.of(evals[1])
        best_den: QuadNum = ptable[1]
        best_k = 1
        for k in range(2, k_max + 1):
            nk = evals[k]
            # nk / ptable[k] > best_num / best_den, all positive
            if best_den * nk > best_num * ptable[k]:
                best_num, best_den, best_k = QuadNum.of(nk), ptable[k], k
        lam = best_num / best_den
        saturated = (lam * lam * 2 * b - zq).sign() >= 0
        out.append(BoundSample(z=zq, lam=lam,
                               kind=KIND_ECH if saturated else KIND_VOLUME_CMP,
                               label=str(best_k)))
    return out


def sweep_to_csv(samples: Sequence[BoundSample], path: str) -> None:
    """One row per sample; lambda rendered round-down at 40 digits."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SWEEP_CSV_HEADER)
        for s in samples:
            assert s.lam is not None
            w.writerow([
                s.z.a.numerator, s.z.a.denominator,
                s.z.b.numerator, s.z.b.denominator,
                s.z.D,
                s.lam.decimal(40, "down"),
                s.label,
            ])
