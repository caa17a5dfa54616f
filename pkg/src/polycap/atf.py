"""Exact almost-toric base-diagram engine for the polydisk rectangle.

A diagram is a clockwise cycle of nodes (vertex, optional nodal ray, the
primitive direction of the side leaving the vertex, and that side's affine
length), node 0 pinned at the origin with no ray.  Mutation at a labeled
vertex splits the polygon along the nodal ray, keeps the piece containing
the origin, and maps the other piece by the unique unimodular affine map
fixing the anchor and its ray while aligning the two boundary edges
through the anchor.  The anchor stops being a vertex; the ray-edge
intersection becomes the new vertex and carries the negated ray.

All coordinates and lengths are QuadNum; a side of affine length t in
primitive direction u spans exactly t*u.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .bounds import KIND_EMBEDDING, BoundSample
from .exactnum import QuadLike, QuadNum

IntVec = tuple[int, int]
QuadVec = tuple[QuadNum, QuadNum]


class NoIntersectionError(RuntimeError):
    """The nodal ray meets no non-adjacent edge."""


class AmbiguousHitError(RuntimeError):
    """The nodal ray passes exactly through a vertex."""


class ConvexityLostError(RuntimeError):
    """A mutation produced a non-convex or inconsistent diagram."""


class LabelError(ValueError):
    """Positional vertex labels are not well-defined on this polygon."""


class WordParseError(ValueError):
    """A mutation word failed to parse."""


class EmbeddingPreconditionError(RuntimeError):
    """Polygon does not satisfy the embedding-extraction hypotheses."""


def _primitive(v: IntVec) -> bool:
    return v != (0, 0) and gcd(abs(v[0]), abs(v[1])) == 1


def _cross_ii(u: IntVec, v: IntVec) -> int:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class AtfNode:
    vertex: QuadVec
    ray: Optional[IntVec]
    edge: IntVec
    length: QuadNum

    def __post_init__(self) -> None:
        if self.ray is not None and not _primitive(self.ray):
            raise ValueError(f"nodal ray not primitive: {self.ray}")
        if not _primitive(self.edge):
            raise ValueError(f"edge direction not primitive: {self.edge}")
        if self.length.sign() <= 0:
            raise ValueError("affine length must be positive")

    def to_json(self) -> dict:
        return {
            "vertex": [self.vertex[0].to_json(), self.vertex[1].to_json()],
            "ray": list(self.ray) if self.ray is not None else None,
            "edge": list(self.edge),
            "len": self.length.to_json(),
        }

    @staticmethod
    def from_json(obj: dict) -> "AtfNode":
        return AtfNode(
            vertex=(QuadNum.from_json(obj["vertex"][0]), QuadNum.from_json(obj["vertex"][1])),
            ray=tuple(obj["ray"]) if obj["ray"] is not None else None,
            edge=tuple(obj["edge"]),
            length=QuadNum.from_json(obj["len"]),
        )


@dataclass(frozen=True)
class AtfPolygon:
    nodes: tuple[AtfNode, ...]
    beta: QuadNum
    word: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        nodes = self.nodes
        if len(nodes) < 3:
            raise ConvexityLostError("fewer than three vertices")
        o = nodes[0]
        if not (o.vertex[0].is_zero() and o.vertex[1].is_zero()):
            raise ConvexityLostError("node 0 must sit at the origin")
        if o.ray is not None:
            raise ConvexityLostError("origin node must carry no nodal ray")
        # walk consistency and closure
        x, y = o.vertex
        for cur, nxt in zip(nodes, nodes[1:] + (nodes[0],)):
            x = x + cur.length * cur.edge[0]
            y = y + cur.length * cur.edge[1]
            if (x, y) != nxt.vertex:
                raise ConvexityLostError("vertices do not chain along the edges")
        # strict convexity, clockwise
        for cur, nxt in zip(nodes, nodes[1:] + (nodes[0],)):
            if _cross_ii(cur.edge, nxt.edge) >= 0:
                raise ConvexityLostError(
                    f"edges {cur.edge} -> {nxt.edge} do not turn clockwise")
        if self.area() != self.beta:
            raise ConvexityLostError("area is not beta")

    def area(self) -> QuadNum:
        two_a = QuadNum.of(0)
        vs = [n.vertex for n in self.nodes]
        for (x1, y1), (x2, y2) in zip(vs, vs[1:] + vs[:1]):
            two_a = two_a + (x1 * y2 - x2 * y1)
        return abs(two_a) / 2

    def labels(self) -> dict[str, int]:
        """Positional labels: O at the origin, Y on the y-axis, X on the
        x-axis, V strictly interior.  Raises unless each occurs exactly once."""
        found: dict[str, int] = {}
        for i, n in enumerate(self.nodes):
            x, y = n.vertex
            if x.is_zero() and y.is_zero():
                lab = "O"
            elif x.is_zero():
                lab = "Y"
            elif y.is_zero():
                lab = "X"
            else:
                lab = "V"
            if lab in found:
                raise LabelError(f"label {lab} is not unique")
            found[lab] = i
        if set(found) != {"O", "Y", "X", "V"}:
            raise LabelError(f"polygon is not in labeled quadrilateral form: {set(found)}")
        return found

    def side_lengths(self) -> dict[str, QuadNum]:
        """Affine lengths keyed by side name, reading clockwise: OY, YV, XV, OX."""
        lab = self.labels()
        return {
            "OY": self.nodes[lab["O"]].length,
            "YV": self.nodes[lab["Y"]].length,
            "XV": self.nodes[lab["V"]].length,
            "OX": self.nodes[lab["X"]].length,
        }

    def rays(self) -> dict[str, Optional[IntVec]]:
        lab = self.labels()
        return {name: self.nodes[i].ray for name, i in lab.items()}

    def word_str(self) -> str:
        return compress_word(self.word)

    def to_json(self) -> dict:
        return {
            "beta": self.beta.to_json(),
            "nodes": [n.to_json() for n in self.nodes],
            "word": self.word_str(),
        }

    @staticmethod
    def from_json(obj: dict) -> "AtfPolygon":
        return AtfPolygon(
            nodes=tuple(AtfNode.from_json(n) for n in obj["nodes"]),
            beta=QuadNum.from_json(obj["beta"]),
            word=tuple(parse_word(obj.get("word", ""))),
        )


def init_polydisk(beta: QuadLike) -> AtfPolygon:
    """The rectangle [0, beta] x [0, 1] with nodal trades at Y, V and X.

    Rays: (1,-1) at Y, (-1,-1) at V, (-1,1) at X; the origin carries none
    (the mutation flows never anchor there, and the embedding extraction
    requires it stay ray-free).
    """
    b = QuadNum.of(beta)
    if b < 1:
        raise ValueError("beta must be >= 1")
    zero, one = QuadNum.of(0), QuadNum.of(1)
    nodes = (
        AtfNode((zero, zero), None, (0, 1), one),
        AtfNode((zero, one), (1, -1), (1, 0), b),
        AtfNode((b, one), (-1, -1), (0, -1), one),
        AtfNode((b, zero), (-1, 1), (-1, 0), b),
    )
    return AtfPolygon(nodes=nodes, beta=b, word=())


def _solve_unimodular(r: IntVec, w: IntVec, v: IntVec) -> tuple[tuple[int, int], tuple[int, int]]:
    """The matrix L with L r = r and L w = v, solved over Q as
    L = [v | r][w | r]^(-1); the aligning map of a valid mutation always
    comes out integral with determinant 1, and both are checked."""
    det = _cross_ii(w, r)
    if det == 0:
        raise ConvexityLostError(f"nodal ray {r} is parallel to the edge {w}")
    nums = (
        v[0] * r[1] - r[0] * w[1],
        r[0] * w[0] - v[0] * r[0],
        v[1] * r[1] - r[1] * w[1],
        r[1] * w[0] - v[1] * r[0],
    )
    if any(n % det for n in nums):
        raise ConvexityLostError("aligning matrix is not integral")
    a, b, c, d = (n // det for n in nums)
    if a * d - b * c != 1:
        raise ConvexityLostError("aligning matrix is not in SL(2, Z)")
    return ((a, b), (c, d))


def _apply_int(mat, v: IntVec) -> IntVec:
    return (mat[0][0] * v[0] + mat[0][1] * v[1], mat[1][0] * v[0] + mat[1][1] * v[1])


def _find_intersection(poly: AtfPolygon, anchor: int) -> tuple[int, QuadNum]:
    """Nearest valid hit of the anchor's ray on a non-adjacent edge.

    Returns (edge index j, parameter t along that edge); a hit exactly at a
    vertex (t = 0 or t = length) is an AmbiguousHitError.
    """
    nodes = poly.nodes
    n = len(nodes)
    r = nodes[anchor].ray
    if r is None:
        raise LabelError("anchor vertex carries no nodal ray")
    ax, ay = nodes[anchor].vertex
    best: Optional[tuple[QuadNum, int, QuadNum]] = None
    for j in range(n):
        if j == anchor or (j + 1) % n == anchor:
            continue
        u = nodes[j].edge
        den = _cross_ii(r, u)
        px, py = nodes[j].vertex
        dx, dy = px - ax, py - ay
        if den == 0:
            if (dx * u[1] - dy * u[0]).is_zero():
                raise AmbiguousHitError("ray runs along an edge")
            continue
        s = (dx * u[1] - dy * u[0]) / den
        t = (dx * r[1] - dy * r[0]) / den
        if s.sign() <= 0:
            continue
        if t.sign() < 0 or t > nodes[j].length:
            continue
        if t.sign() == 0 or t == nodes[j].length:
            raise AmbiguousHitError(f"ray through a vertex of edge {j}")
        if best is not None and s == best[0]:
            raise AmbiguousHitError("two edges hit at the same distance")
        if best is None or s < best[0]:
            best = (s, j, t)
    if best is None:
        raise NoIntersectionError("nodal ray misses every non-adjacent edge")
    return best[1], best[2]


def mutate(poly: AtfPolygon, label: str) -> AtfPolygon:
    """One mutation at the labeled vertex; returns a new polygon.

    The piece of the diagram containing the origin is fixed; the other is
    mapped by the aligning matrix.  Vertices are rebuilt by walking the new
    edge cycle from the origin, and every diagram invariant is re-checked.
    """
    if label not in ("x", "y", "v"):
        raise LabelError(f"mutation label must be one of x, y, v: {label!r}")
    lab = poly.labels()
    i = lab[label.upper()]
    nodes = poly.nodes
    n = len(nodes)
    j, t = _find_intersection(poly, i)
    anchor = nodes[i]
    r = anchor.ray
    assert r is not None
    prev = nodes[(i - 1) % n]
    origin_in_forward = i > j  # forward arc i+1..j wraps past node 0 exactly when j < i

    def moved(node: AtfNode, mat, new_length: Optional[QuadNum] = None,
              new_edge: Optional[IntVec] = None) -> AtfNode:
        ray = _apply_int(mat, node.ray) if node.ray is not None else None
        return AtfNode(vertex=node.vertex, ray=ray,
                       edge=new_edge if new_edge is not None else _apply_int(mat, node.edge),
                       length=new_length if new_length is not None else node.length)

    neg_r: IntVec = (-r[0], -r[1])
    if not origin_in_forward:
        # moving piece: nodes i+1..j; anchor's edge folds onto the previous side
        mat = _solve_unimodular(r, anchor.edge, prev.edge)
        merged = replace(prev, length=prev.length + anchor.length)
        segment: list[AtfNode] = [moved(nodes[m], mat) for m in range(i + 1, j)]
        segment.append(moved(nodes[j], mat, new_length=t))
        hinge = AtfNode(vertex=nodes[j].vertex, ray=neg_r, edge=nodes[j].edge,
                        length=nodes[j].length - t)
        new_nodes = list(nodes[: i - 1]) + [merged] + segment + [hinge] + list(nodes[j + 1:])
    else:
        # moving piece: nodes j+1..i-1; the previous side folds onto anchor's edge
        mat = _solve_unimodular(r, prev.edge, anchor.edge)
        split = replace(nodes[j], length=t)
        hinge = AtfNode(vertex=nodes[j].vertex, ray=neg_r,
                        edge=_apply_int(mat, nodes[j].edge),
                        length=nodes[j].length - t)
        segment = [moved(nodes[m], mat) for m in range(j + 1, i - 1)]
        segment.append(moved(nodes[i - 1], mat, new_length=prev.length + anchor.length,
                             new_edge=anchor.edge))
        new_nodes = list(nodes[:j]) + [split, hinge] + segment + list(nodes[i + 1:])

    rebuilt = _rebuild_vertices(new_nodes)
    return AtfPolygon(nodes=tuple(rebuilt), beta=poly.beta, word=poly.word + (label,))


def _rebuild_vertices(nodes: Sequence[AtfNode]) -> list[AtfNode]:
    """Recompute vertices by walking lengths*edges from the origin."""
    zero = QuadNum.of(0)
    out: list[AtfNode] = []
    x, y = zero, zero
    for node in nodes:
        out.append(replace(node, vertex=(x, y)))
        x = x + node.length * node.edge[0]
        y = y + node.length * node.edge[1]
    if not (x.is_zero() and y.is_zero()):
        raise ConvexityLostError("edge cycle does not close")
    return out


def intersect(poly: AtfPolygon, label: str) -> tuple[int, QuadVec]:
    """Edge index and exact point hit by the labeled vertex's nodal ray."""
    lab = poly.labels()
    j, t = _find_intersection(poly, lab[label.upper()])
    node = poly.nodes[j]
    point = (node.vertex[0] + t * node.edge[0], node.vertex[1] + t * node.edge[1])
    return j, point


_WORD_TOKEN = re.compile(r"([xyv])\^?(\d*)")


def parse_word(word: str) -> list[str]:
    """Expand a mutation word like "v2yxy3xy" into letters; exponent 0 skips."""
    letters: list[str] = []
    pos = 0
    for m in _WORD_TOKEN.finditer(word):
        if m.start() != pos:
            raise WordParseError(f"cannot parse {word!r} at position {pos}")
        count = int(m.group(2)) if m.group(2) else 1
        letters.extend(m.group(1) * count)
        pos = m.end()
    if pos != len(word):
        raise WordParseError(f"cannot parse {word!r} at position {pos}")
    return letters


def compress_word(letters: Sequence[str]) -> str:
    out: list[str] = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        out.append(letters[i] if j - i == 1 else f"{letters[i]}{j - i}")
        i = j
    return "".join(out)


def apply_word(poly: AtfPolygon, word: str) -> AtfPolygon:
    """Apply a mutation word left to right; errors carry the failing step."""
    letters = parse_word(word)
    cur = poly
    for idx, letter in enumerate(letters):
        try:
            cur = mutate(cur, letter)
        except (NoIntersectionError, AmbiguousHitError, ConvexityLostError, LabelError) as e:
            raise type(e)(f"step {idx} ({letter!r} in {word!r}): {e}") from e
    return cur


def extract_embedding(poly: AtfPolygon) -> BoundSample:
    """Upper-bound sample from the axis triangle inside the diagram.

    With a = |OX| and b = |OY| the diagram contains the right triangle with
    legs a, b, giving c_beta(b/a) <= 1/a (roles swap if a > b).
    """
    lab = poly.labels()
    if poly.nodes[lab["O"]].ray is not None:
        raise EmbeddingPreconditionError("origin must be ray-free")
    sides = poly.side_lengths()
    a, b = sides["OX"], sides["OY"]
    if a > b:
        a, b = b, a
    return BoundSample(z=b / a, lam=a.inverse(), kind=KIND_EMBEDDING,
                       label=poly.word_str())


def verify_rays(poly: AtfPolygon, k: int) -> list[dict]:
    """Check nodal rays and side directions of the v^2,y,x,y^k state against
    the outer-class data (with the k = -1 seed pair (p, q) = (-1, 3))."""
    from .perfclass import outer_family

    pk, qk = outer_family(k).p, outer_family(k).q
    if k == 0:
        pk1, qk1 = -1, 3
    else:
        prev = outer_family(k - 1)
        pk1, qk1 = prev.p, prev.q
    rays = poly.rays()
    lab = poly.labels()
    expected = {
        "ray-Y": (rays["Y"], (qk, -pk)),
        "ray-V": (rays["V"], (-qk1, pk1)),
        "ray-X": (rays["X"], (11, 5)),
        "dir-YV": (poly.nodes[lab["Y"]].edge, (qk * qk, -pk * qk + 1)),
        "dir-VX": (poly.nodes[lab["V"]].edge, (-56, -25)),
    }
    report = []
    for name, (got, want) in expected.items():
        report.append({"check": name, "k": k,
                       "status": "pass" if tuple(got) == tuple(want) else "fail",
                       "lhs": list(got), "rhs": list(want)})
    return report


def verify_formula_suite(k_max: int, beta: Optional[QuadLike] = None) -> list[dict]:
    """Replay v^2,y,x,y^k(,x)(,y) and check every published length, ray and
    direction formula, plus closure/area and the two-path inner corners."""
    from .perfclass import inner_family, outer_family
    from .report import entry
    from .staircase import MAIN_BETA, inner_corners

    b = QuadNum.of(beta) if beta is not None else MAIN_BETA
    report: list[dict] = []
    state = apply_word(init_polydisk(b), "v2yx")
    sides = state.side_lengths()
    after_v2yx = {
        "OY": b + 3, "OX": (b * 4 - 7) / 5,
        "YV": (b * 4 + 7) / 19, "XV": (3 - b) / 95,
    }
    for name, want in after_v2yx.items():
        report.append(entry(f"v2yx-len-{name}", None, sides[name] == want,
                            sides[name], want))
    rays = state.rays()
    for name, want in (("Y", (1, -7)), ("V", (-3, -1)), ("X", (11, 5))):
        report.append(entry(f"v2yx-ray-{name}", None, rays[name] == want,
                            list(rays[name]), list(want)))
    for k in range(k_max + 1):
        ek, ek1, hk1 = outer_family(k), outer_family(k + 1), inner_family(k + 1)
        sides = state.side_lengths()
        want_k = {
            "OY": (b * ek.e + ek.d) / ek.q,
            "OX": (b * 4 - 7) / 5,
            "YV": (b * 4 + 7) / (ek.q * ek1.q),
            "XV": (ek.d - b * ek.e) / (5 * ek1.q),
        }
        for name, want in want_k.items():
            report.append(entry(f"yk-len-{name}", k, sides[name] == want,
                                sides[name], want))
        report.extend(verify_rays(state, k))
        report.append(entry("yk-area", k, state.area() == b, state.area(), b))
        # one extra x
        after_x = mutate(state, "x")
        dd, ee = 2 * ek1.q - ek1.d, 2 * ek1.q - ek1.e
        sx = after_x.side_lengths()
        want_x = {
            "OY": (b * ek.e + ek.d) / ek.q,
            "OX": (b * ee + dd) / ek1.q,
            "YV": (b * ee - dd) / (ek.q * hk1.q),
            "XV": (ek.d - b * ek.e) / (ek1.q * hk1.q),
        }
        for name, want in want_x.items():
            report.append(entry(f"ykx-len-{name}", k, sx[name] == want,
                                sx[name], want))
        p_prev, q_prev = ((outer_family(k - 1).p, outer_family(k - 1).q)
                          if k >= 1 else (-1, 3))
        rx = after_x.rays()
        labx = after_x.labels()
        ray_wants = {
            "ray-Y": (rx["Y"], (ek.q, -ek.p)),
            "ray-V": (rx["V"], (-11, -5)),
            "ray-X": (rx["X"], (121 * p_prev + 54 * q_prev, 56 * p_prev + 25 * q_prev)),
            "dir-YV": (after_x.nodes[labx["Y"]].edge,
                       (ek.q ** 2, -ek.p * ek.q + 1)),
            "dir-VX": (after_x.nodes[labx["V"]].edge,
                       (-54 * ek.q ** 2 - 121 * ek.p * ek.q + 121,
                        -25 * ek.q ** 2 - 56 * ek.p * ek.q + 56)),
        }
        for name, (got, want) in ray_wants.items():
            report.append(entry(f"ykx-{name}", k, tuple(got) == tuple(want),
                                list(got), list(want)))
        # then y: axis lengths and the inner corner, via two derivations
        after_xy = mutate(after_x, "y")
        sy = after_xy.side_lengths()
        report.append(entry("ykxy-len-OY", k,
                            sy["OY"] == (b * hk1.e + hk1.d) / hk1.q,
                            sy["OY"], (b * hk1.e + hk1.d) / hk1.q))
        report.append(entry("ykxy-len-OX", k,
                            sy["OX"] == (b * ek.e + ek.d) / ek.p,
                            sy["OX"], (b * ek.e + ek.d) / ek.p))
        report.append(entry("ykxy-area", k, after_xy.area() == b, after_xy.area(), b))
        emb = extract_embedding(after_xy)
        corner = inner_corners(k, b)[0]
        report.append(entry("embedding-z", k, emb.z == corner.z, emb.z, corner.z))
        report.append(entry("embedding-lambda", k, emb.lam == corner.lam,
                            emb.lam, corner.lam))
        if k < k_max:
            state = mutate(state, "y")
    return report


def verify_full_filling(k_max: int, beta: Optional[QuadLike] = None,
                        gap_k: int = 4,
                        gap_bound: Fraction = Fraction(1, 10 ** 10)) -> list[dict]:
    """The filling coordinate z_k = |OY|/|OX| after v^2,y,x,y^k strictly
    increases toward the accumulation point; the gap at gap_k is below
    gap_bound, decided exactly."""
    from .report import entry
    from .staircase import MAIN_BETA, acc_point

    b = QuadNum.of(beta) if beta is not None else MAIN_BETA
    acc = acc_point(b)
    report: list[dict] = []
    state = apply_word(init_polydisk(b), "v2yx")
    prev: Optional[QuadNum] = None
    for k in range(max(k_max, gap_k) + 1):
        sides = state.side_lengths()
        zk = sides["OY"] / sides["OX"]
        report.append(entry("filling-below-acc", k, zk < acc, zk, acc))
        if prev is not None:
            report.append(entry("filling-increasing", k, zk > prev, prev, zk))
        if k == gap_k:
            gap = acc - zk
            report.append(entry("filling-gap-bound", k, gap < QuadNum.of(gap_bound),
                                gap, gap_bound))
        prev = zk
        state = mutate(state, "y")
    return report


def to_svg(poly: AtfPolygon, digits: int = 6) -> str:
    """SVG rendering: solid polygon, dashed nodal rays with square markers.

    Coordinates are decimal renderings of the exact values at the requested
    precision; the y-axis is flipped for screen coordinates.
    """
    def dec(v: QuadNum) -> str:
        return v.decimal(digits, "down")

    xmax = max(n.vertex[0] for n in poly.nodes)
    ymax = max(n.vertex[1] for n in poly.nodes)
    margin = (xmax + ymax + 2) / 8
    ray_len = (xmax + ymax) / 8
    pts = " ".join(f"{dec(n.vertex[0])},{dec(n.vertex[1])}" for n in poly.nodes)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox='
        f'"{dec(-margin)} {dec(-(ymax + margin))} '
        f'{dec(xmax + margin * 2)} {dec(ymax + margin * 2)}">',
        '<g transform="scale(1,-1)">',
        f'<polygon points="{pts}" fill="#dce9f7" stroke="#1f4e79" '
        f'stroke-width="0.02"/>',
    ]
    for node in poly.nodes:
        if node.ray is None:
            continue
        vx, vy = node.vertex
        ex = vx + ray_len * node.ray[0]
        ey = vy + ray_len * node.ray[1]
        mx = vx + ray_len * node.ray[0] / 2
        my = vy + ray_len * node.ray[1] / 2
        parts.append(
            f'<line x1="{dec(vx)}" y1="{dec(vy)}" x2="{dec(ex)}" y2="{dec(ey)}" '
            f'stroke="#67a3d9" stroke-width="0.02" stroke-dasharray="0.08,0.05"/>')
        parts.append(
            f'<rect x="{dec(mx - Fraction(1, 25))}" y="{dec(my - Fraction(1, 25))}" '
            f'width="0.08" height="0.08" fill="#67a3d9"/>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts)
