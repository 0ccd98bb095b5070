"""Exact 2D lattice geometry.

Points are ``(x, y)`` pairs of Python ints, so every predicate in this
module is exact; there is no floating point anywhere.  Convex hulls carry an
explicit dimension flag (0 for a point, 1 for a segment, 2 for a genuine
polygon) and degenerate hulls are ordinary values, not errors.

The operations here are the geometric substrate for everything else:
hulls, lattice-point enumeration, Minkowski sums, erosions (the set of
shifts taking one set inside another), normalized 2D mixed volumes, Pick
counts, and canonical forms under the unimodular affine group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key
from math import gcd
from typing import Iterable, Iterator, List, Optional, Tuple

from .errors import InputError

Point = Tuple[int, int]

#: Returned by primitivity_index when the difference lattice has rank < 2.
INFINITE_INDEX = math.inf


def _as_point(p) -> Point:
    try:
        x, y = p
    except (TypeError, ValueError):
        raise InputError(f"lattice point must be a pair of ints, got {p!r}")
    if isinstance(x, bool) or isinstance(y, bool):
        raise InputError(f"lattice point must be a pair of ints, got {p!r}")
    if not isinstance(x, int) or not isinstance(y, int):
        raise InputError(f"lattice point must be a pair of ints, got {p!r}")
    return (x, y)


def cross(o: Point, a: Point, b: Point) -> int:
    """Twice the signed area of the triangle (o, a, b)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


class SupportSet:
    """A finite set of lattice points (a Newton support).

    Set semantics: duplicates collapse and equality ignores order.  The
    empty set is allowed (erosions can be empty); operations that need a
    polynomial support check non-emptiness themselves.
    """

    __slots__ = ("_points", "_sorted")

    def __init__(self, points: Iterable = ()):
        self._points = frozenset(_as_point(p) for p in points)
        self._sorted: Optional[Tuple[Point, ...]] = None

    @property
    def points(self) -> frozenset:
        return self._points

    def sorted_points(self) -> Tuple[Point, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self._points))
        return self._sorted

    def translate(self, v: Point) -> "SupportSet":
        dx, dy = v
        return SupportSet((x + dx, y + dy) for x, y in self._points)

    def min_corner(self) -> Point:
        if not self._points:
            raise InputError("empty support has no corner")
        return (min(x for x, _ in self._points), min(y for _, y in self._points))

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.sorted_points())

    def __contains__(self, p) -> bool:
        return _as_point(p) in self._points

    def __eq__(self, other) -> bool:
        return isinstance(other, SupportSet) and self._points == other._points

    def __hash__(self) -> int:
        return hash(self._points)

    def __repr__(self) -> str:
        return f"SupportSet({list(self.sorted_points())})"


@dataclass(frozen=True)
class LatticePolygon:
    """Convex hull of a support, vertices counterclockwise.

    ``dim`` is 0 (single point), 1 (segment: the two endpoints), or
    2 (at least three extreme points, no three consecutive collinear).
    Construct via :func:`convex_hull`.
    """

    vertices: Tuple[Point, ...]
    dim: int

    def edges(self) -> List[Tuple[Point, Point]]:
        v = self.vertices
        if self.dim < 2:
            return []
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def bbox(self) -> Tuple[int, int, int, int]:
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))

    def contains(self, p) -> bool:
        """Exact membership test for the closed region."""
        p = _as_point(p)
        if self.dim == 0:
            return p == self.vertices[0]
        if self.dim == 1:
            a, b = self.vertices
            if cross(a, b, p) != 0:
                return False
            lo_x, hi_x = sorted((a[0], b[0]))
            lo_y, hi_y = sorted((a[1], b[1]))
            return lo_x <= p[0] <= hi_x and lo_y <= p[1] <= hi_y
        return all(cross(a, b, p) >= 0 for a, b in self.edges())

    def translate(self, v: Point) -> "LatticePolygon":
        dx, dy = v
        return LatticePolygon(tuple((x + dx, y + dy) for x, y in self.vertices), self.dim)


def convex_hull(S: SupportSet) -> LatticePolygon:
    """Convex hull with correct dimension flag (monotone chain)."""
    pts = sorted(set(S.sorted_points()))
    if not pts:
        raise InputError("convex hull of an empty set")
    if len(pts) == 1:
        return LatticePolygon((pts[0],), 0)
    if all(cross(pts[0], pts[1], p) == 0 for p in pts[2:]):
        return LatticePolygon((pts[0], pts[-1]), 1)

    def half(points):
        chain: List[Point] = []
        for p in points:
            while len(chain) >= 2 and cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(list(reversed(pts)))
    verts = lower[:-1] + upper[:-1]
    start = verts.index(min(verts))
    verts = verts[start:] + verts[:start]
    return LatticePolygon(tuple(verts), 2)


def lattice_points(P: LatticePolygon) -> SupportSet:
    """All integer points in the closed region of P."""
    x0, y0, x1, y1 = P.bbox()
    pts = [
        (x, y)
        for x in range(x0, x1 + 1)
        for y in range(y0, y1 + 1)
        if P.contains((x, y))
    ]
    return SupportSet(pts)


def area2(P: LatticePolygon) -> int:
    """Twice the Euclidean area (shoelace); 0 for dim <= 1."""
    if P.dim < 2:
        return 0
    v = P.vertices
    s = 0
    for i in range(len(v)):
        a, b = v[i], v[(i + 1) % len(v)]
        s += a[0] * b[1] - b[0] * a[1]
    return abs(s)


def _hull_of_pairwise_sums(P: LatticePolygon, Q: LatticePolygon) -> LatticePolygon:
    pts = {(p[0] + q[0], p[1] + q[1]) for p in P.vertices for q in Q.vertices}
    return convex_hull(SupportSet(pts))


def _angle_cmp(u: Point, v: Point) -> int:
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = u[0] * v[1] - u[1] * v[0]
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def minkowski_sum(P: LatticePolygon, Q: LatticePolygon) -> LatticePolygon:
    """Minkowski sum of two hulls.

    Full-dimensional inputs use the classical edge merge; degenerate inputs
    fall back to the hull of pairwise vertex sums (small vertex sets).
    """
    if P.dim < 2 or Q.dim < 2:
        return _hull_of_pairwise_sums(P, Q)

    def edge_vectors(R: LatticePolygon) -> List[Point]:
        v = list(R.vertices)
        start = min(range(len(v)), key=lambda i: (v[i][1], v[i][0]))
        v = v[start:] + v[:start]
        return [(v[(i + 1) % len(v)][0] - v[i][0], v[(i + 1) % len(v)][1] - v[i][1]) for i in range(len(v))], v[0]

    ep, sp = edge_vectors(P)
    eq, sq = edge_vectors(Q)
    merged = sorted(ep + eq, key=cmp_to_key(_angle_cmp))
    cur = (sp[0] + sq[0], sp[1] + sq[1])
    chain = [cur]
    for e in merged[:-1]:
        cur = (cur[0] + e[0], cur[1] + e[1])
        chain.append(cur)
    return convex_hull(SupportSet(chain))


def erode(P: LatticePolygon, B: SupportSet) -> SupportSet:
    """Region erosion: all shifts c with c + b inside P for every b in B.

    The result is empty whenever no translate of B fits inside P.
    """
    if len(B) == 0:
        raise InputError("erosion by an empty set")
    x0, y0, x1, y1 = P.bbox()
    bx0 = min(p[0] for p in B)
    by0 = min(p[1] for p in B)
    bx1 = max(p[0] for p in B)
    by1 = max(p[1] for p in B)
    out = []
    for cx in range(x0 - bx0, x1 - bx1 + 1):
        for cy in range(y0 - by0, y1 - by1 + 1):
            if all(P.contains((cx + bx, cy + by)) for bx, by in B):
                out.append((cx, cy))
    return SupportSet(out)


def erode_set(A: SupportSet, B: SupportSet) -> SupportSet:
    """Finite-set erosion: shifts c with c + B a subset of the finite set A."""
    if len(A) == 0 or len(B) == 0:
        raise InputError("erosion with an empty set")
    out = []
    b0 = next(iter(B))
    for a in A:
        c = (a[0] - b0[0], a[1] - b0[1])
        if all((c[0] + bx, c[1] + by) in A for bx, by in B):
            out.append(c)
    return SupportSet(out)


def mixed_volume(P: LatticePolygon, Q: LatticePolygon) -> int:
    """Normalized 2D mixed volume: mv(P, P) equals area2(P).

    With this normalization mv equals the generic number of torus roots of
    a system with these Newton polygons.
    """
    s = area2(minkowski_sum(P, Q)) - area2(P) - area2(Q)
    if s % 2 != 0 or s < 0:
        raise AssertionError(f"mixed volume defect {s} is not an even non-negative integer")
    return s // 2


def pick_counts(P: LatticePolygon) -> Tuple[int, int]:
    """Interior and boundary lattice-point counts of a dim-2 polygon.

    Counts are obtained by enumeration; the Pick identity
    ``area2 == 2*interior + boundary - 2`` is asserted before returning.
    """
    if P.dim != 2:
        raise InputError("pick_counts requires a full-dimensional polygon")
    boundary = 0
    interior = 0
    for p in lattice_points(P):
        if any(cross(a, b, p) == 0 for a, b in P.edges()):
            boundary += 1
        else:
            interior += 1
    b_gcd = sum(gcd(abs(b[0] - a[0]), abs(b[1] - a[1])) for a, b in P.edges())
    if boundary != b_gcd:
        raise AssertionError("boundary enumeration disagrees with edge gcd count")
    if area2(P) != 2 * interior + boundary - 2:
        raise AssertionError("Pick identity failed")
    return interior, boundary


def is_segment(S: SupportSet) -> bool:
    """True iff all points are collinear (single points count)."""
    pts = S.sorted_points()
    if not pts:
        raise InputError("empty support")
    if len(pts) <= 2:
        return True
    return all(cross(pts[0], pts[1], p) == 0 for p in pts[2:])


def _difference_vectors(S: SupportSet) -> List[Point]:
    pts = S.sorted_points()
    base = pts[0]
    return [(p[0] - base[0], p[1] - base[1]) for p in pts[1:]]


def primitivity_index(A: SupportSet, B: SupportSet):
    """Index in Z^2 of the lattice generated by the differences of A and B.

    1 means A and B cannot be shifted to a common proper sublattice.  When
    the difference lattice has rank < 2 the index is infinite and
    ``INFINITE_INDEX`` is returned.
    """
    vecs = [v for v in _difference_vectors(A) + _difference_vectors(B) if v != (0, 0)]
    if not vecs:
        return INFINITE_INDEX
    d = 0
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            d = gcd(d, abs(vecs[i][0] * vecs[j][1] - vecs[i][1] * vecs[j][0]))
    if d == 0:
        return INFINITE_INDEX
    return d


@dataclass(frozen=True)
class UnimodularAffineMap:
    """p -> M p + shift with M an integer matrix of determinant +-1."""

    matrix: Tuple[Tuple[int, int], Tuple[int, int]]
    shift: Point = (0, 0)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        if abs(a * d - b * c) != 1:
            raise InputError(f"matrix {self.matrix} is not unimodular")

    @classmethod
    def identity(cls) -> "UnimodularAffineMap":
        return cls(((1, 0), (0, 1)), (0, 0))

    @classmethod
    def translation(cls, v: Point) -> "UnimodularAffineMap":
        return cls(((1, 0), (0, 1)), _as_point(v))

    def det(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def apply(self, p) -> Point:
        x, y = _as_point(p)
        (a, b), (c, d) = self.matrix
        return (a * x + b * y + self.shift[0], c * x + d * y + self.shift[1])

    def apply_set(self, S: SupportSet) -> SupportSet:
        return SupportSet(self.apply(p) for p in S)

    def compose(self, other: "UnimodularAffineMap") -> "UnimodularAffineMap":
        """self after other: (self . other)(p) = self(other(p))."""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        m = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        sx, sy = other.shift
        shift = (a * sx + b * sy + self.shift[0], c * sx + d * sy + self.shift[1])
        return UnimodularAffineMap(m, shift)

    def inverse(self) -> "UnimodularAffineMap":
        (a, b), (c, d) = self.matrix
        det = a * d - b * c
        inv = ((d * det, -b * det), (-c * det, a * det))
        (p, q), (r, s) = inv
        sx, sy = self.shift
        return UnimodularAffineMap(inv, (-(p * sx + q * sy), -(r * sx + s * sy)))


def apply_map(M: UnimodularAffineMap, S: SupportSet) -> SupportSet:
    return M.apply_set(S)


def _translate_normalized(S: SupportSet) -> Tuple[SupportSet, Point]:
    cx, cy = S.min_corner()
    return S.translate((-cx, -cy)), (-cx, -cy)


def _maxside(S: SupportSet) -> int:
    xs = [p[0] for p in S]
    ys = [p[1] for p in S]
    return max(max(xs) - min(xs), max(ys) - min(ys))


def _set_key(S: SupportSet):
    T, _ = _translate_normalized(S)
    xs = [p[0] for p in T]
    ys = [p[1] for p in T]
    w, h = max(xs), max(ys)
    return (max(w, h), w, h, T.sorted_points())


_ELEMENTARY = [
    ((1, 1), (0, 1)),
    ((1, -1), (0, 1)),
    ((1, 0), (1, 1)),
    ((1, 0), (-1, 1)),
    ((0, 1), (1, 0)),
    ((1, 0), (0, -1)),
    ((-1, 0), (0, 1)),
]


def _greedy_reduce(S: SupportSet) -> UnimodularAffineMap:
    """Shrink the bounding box by elementary unimodular moves (local search)."""
    M = UnimodularAffineMap.identity()
    cur = S
    key = _set_key(cur)
    for _ in range(200):
        best = None
        for mat in _ELEMENTARY:
            E = UnimodularAffineMap(mat)
            cand = E.apply_set(cur)
            k = _set_key(cand)
            if k < key and (best is None or k < best[0]):
                best = (k, E, cand)
        if best is None:
            return M
        key, E, cur = best
        M = E.compose(M)
    return M


def _candidate_maps(S: SupportSet, radius: int) -> Iterator[UnimodularAffineMap]:
    """All unimodular linear maps M with the two reference difference vectors
    mapped into the box [-radius, radius]^2.

    Every map whose image of S has maxside <= radius appears here, which is
    what makes the canonical form below input-independent.
    """
    diffs = sorted(
        (v for v in {(q[0] - p[0], q[1] - p[1]) for p in S for q in S} if v != (0, 0)),
        key=lambda v: (v[0] * v[0] + v[1] * v[1], v),
    )
    d1 = diffs[0]
    d2 = next(v for v in diffs if d1[0] * v[1] - d1[1] * v[0] != 0)
    det_d = d1[0] * d2[1] - d1[1] * d2[0]
    r = radius
    for w1x in range(-r, r + 1):
        for w1y in range(-r, r + 1):
            w1 = (w1x, w1y)
            for sign in (1, -1):
                target = sign * det_d
                # solve det(w1, w2) = target along the line of valid w2
                a, b = w1
                if a == 0 and b == 0:
                    continue
                g = gcd(abs(a), abs(b))
                if target % g != 0:
                    continue
                # particular solution of a*w2y - b*w2x = target
                # via extended gcd on (a, -b)
                x0, y0 = _ext_gcd_solution(a, -b, target)
                # general solution: particular + t * (a, b) / g stays on the line
                step = (a // g, b // g)
                w2x0, w2y0 = y0, x0
                if a * w2y0 - b * w2x0 != target:
                    continue
                # intersect the t-ranges keeping each coordinate inside the box
                def _ceil_div(p, q):
                    return -((-p) // q)

                t_lo, t_hi = None, None
                feasible = True
                for p0, st in ((w2x0, step[0]), (w2y0, step[1])):
                    if st == 0:
                        if abs(p0) > r:
                            feasible = False
                        continue
                    if st > 0:
                        lo, hi = _ceil_div(-r - p0, st), (r - p0) // st
                    else:
                        lo, hi = _ceil_div(r - p0, st), (-r - p0) // st
                    t_lo = lo if t_lo is None else max(t_lo, lo)
                    t_hi = hi if t_hi is None else min(t_hi, hi)
                if not feasible or t_lo is None or t_lo > t_hi:
                    continue
                for t in range(t_lo, t_hi + 1):
                    w2 = (w2x0 + t * step[0], w2y0 + t * step[1])
                    if abs(w2[0]) > r or abs(w2[1]) > r:
                        continue
                    det_w = w1[0] * w2[1] - w1[1] * w2[0]
                    if det_w != target:
                        continue
                    # M = [w1 w2] * [d1 d2]^{-1}, must be integral unimodular
                    m00 = w1[0] * d2[1] - w2[0] * d1[1]
                    m01 = -w1[0] * d2[0] + w2[0] * d1[0]
                    m10 = w1[1] * d2[1] - w2[1] * d1[1]
                    m11 = -w1[1] * d2[0] + w2[1] * d1[0]
                    if any(v % det_d != 0 for v in (m00, m01, m10, m11)):
                        continue
                    mat = ((m00 // det_d, m01 // det_d), (m10 // det_d, m11 // det_d))
                    if abs(mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]) != 1:
                        continue
                    yield UnimodularAffineMap(mat)


def _ext_gcd_solution(a: int, b: int, c: int) -> Tuple[int, int]:
    """One integer solution (x, y) of a*x + b*y = c (gcd(a,b) divides c)."""

    def ext(a, b):
        if b == 0:
            return a, 1, 0
        g, x, y = ext(b, a % b)
        return g, y, x - (a // b) * y

    g, x, y = ext(abs(a), abs(b))
    if c % g != 0:
        raise ArithmeticError("no solution")
    f = c // g
    x *= f * (1 if a >= 0 else -1)
    y *= f * (1 if b >= 0 else -1)
    return x, y


def normal_form(S: SupportSet) -> Tuple[SupportSet, UnimodularAffineMap]:
    """Canonical representative of S under translation + GL(2, Z).

    The canonical set minimizes (maxside, width, height, sorted point list)
    over all unimodular images, so two sets are equivalent iff their normal
    forms are equal.  Returns the witnessing affine map; idempotent.
    """
    pts = S.sorted_points()
    if not pts:
        raise InputError("normal form of an empty set")
    if len(pts) == 1:
        t = UnimodularAffineMap.translation((-pts[0][0], -pts[0][1]))
        return SupportSet([(0, 0)]), t
    if is_segment(S):
        return _segment_normal_form(S)

    M0 = _greedy_reduce(S)
    reduced = M0.apply_set(S)
    radius = max(_maxside(reduced), 1)
    best = None
    for M in _candidate_maps(S, radius):
        img = M.apply_set(S)
        if _maxside(img) > radius:
            continue
        k = _set_key(img)
        if best is None or k < best[0]:
            best = (k, M)
    key, M = best
    canon_pts = key[3]
    img = M.apply_set(S)
    shift = img.min_corner()
    full = UnimodularAffineMap.translation((-shift[0], -shift[1])).compose(M)
    return SupportSet(canon_pts), full


def _segment_normal_form(S: SupportSet) -> Tuple[SupportSet, UnimodularAffineMap]:
    pts = S.sorted_points()
    d = (pts[-1][0] - pts[0][0], pts[-1][1] - pts[0][1])
    g = gcd(abs(d[0]), abs(d[1]))
    prim = (d[0] // g, d[1] // g)
    best = None
    for direction in (prim, (-prim[0], -prim[1])):
        a, b = direction
        x, y = _ext_gcd_solution(a, b, 1)
        M = UnimodularAffineMap(((x, y), (-b, a)))
        img = M.apply_set(S)
        T, t = _translate_normalized(img)
        k = T.sorted_points()
        if best is None or k < best[0]:
            best = (k, UnimodularAffineMap.translation(t).compose(M))
    k, full = best
    return SupportSet(k), full


def stabilizer(S: SupportSet) -> List[UnimodularAffineMap]:
    """Linear unimodular maps sending S to a translate of itself."""
    if is_segment(S):
        raise InputError("stabilizer only implemented for full-dimensional sets")
    radius = max(_maxside(S), 1)
    canon, _ = normal_form(S)
    out = []
    seen = set()
    for M in _candidate_maps(S, radius):
        img = M.apply_set(S)
        T, _ = _translate_normalized(img)
        T0, _ = _translate_normalized(S)
        if T == T0 and M.matrix not in seen:
            seen.add(M.matrix)
            out.append(M)
    return out


def unimodular_triple(S: SupportSet) -> Optional[Tuple[Point, Point, Point]]:
    """First point triple spanning a unimodular triangle, in sorted order."""
    pts = S.sorted_points()
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if abs(cross(pts[i], pts[j], pts[k])) == 1:
                    return pts[i], pts[j], pts[k]
    return None
