"""Decomposition of the line (1D) or plane (2D) into the relatively open
features of the arrangement spanned by a point set.

Every point of the ambient space lies in exactly one feature, and a
feature is identified by its sign vector against the spanning lines, so
any depth that only depends on the order type of ``S + {q}`` is constant
on it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from .exact import DimensionError, PointSet, point

__all__ = ["Feature", "Arrangement", "build_arrangement", "line_through", "arrangement_from_lines"]


@dataclass(frozen=True)
class Feature:
    dim: int
    sample: tuple
    key: tuple
    extra: tuple = ()  # further points of the same feature
    ends: tuple = ()  # edge: clipped endpoints; vertex: (itself,)

    def points(self) -> list:
        return [self.sample, *self.extra]


@dataclass
class Arrangement:
    dim: int
    lines: list
    vertices: list
    edges: list
    cells: list
    bbox: tuple
    boundary_points: int = 0
    rays: int = 0
    anchors: Optional[list] = None  # per line, vertex positions along it (all-parallel case)

    @property
    def features(self) -> list:
        return self.vertices + self.edges + self.cells

    def euler_characteristic(self) -> Optional[int]:
        """V - E + F of the box-clipped complex (outer face included)."""
        if self.dim != 2 or not self.lines:
            return None
        v = len(self.vertices) + self.boundary_points
        bounded = len(self.edges) - self.rays
        e = bounded + self.rays + self.boundary_points
        f = len(self.cells) + 1
        return v - e + f

    def locate(self, x) -> Feature:
        x = point(x)
        if self.dim == 2 and not self.lines:
            return self.vertices[0] if x == self.vertices[0].sample else self.cells[0]
        key = _key(self.dim, self.lines, x, self.anchors)
        for f in self.features:
            if f.key == key:
                return f
        raise LookupError("point outside every feature")


def _lcm(a, b):
    return a * b // gcd(a, b)


def line_through(p, r) -> tuple:
    """Canonical integer triple (a, b, c) with a*x + b*y = c through p and r."""
    a = r[1] - p[1]
    b = p[0] - r[0]
    if a == 0 and b == 0:
        raise ValueError("coincident points span no line")
    c = a * p[0] + b * p[1]
    den = 1
    for v in (a, b, c):
        den = _lcm(den, Fraction(v).denominator)
    a, b, c = (int(Fraction(v) * den) for v in (a, b, c))
    g = gcd(gcd(abs(a), abs(b)), abs(c))
    a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return (a, b, c)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _homog(x) -> tuple:
    """Integers (X, Y, Z), Z > 0, with x = (X/Z, Y/Z)."""
    fx, fy = Fraction(x[0]), Fraction(x[1])
    return fx.numerator * fy.denominator, fy.numerator * fx.denominator, fx.denominator * fy.denominator


def _key(dim, lines, x, anchors=None) -> tuple:
    if dim == 1:
        return tuple(_sgn(x[0] - v) for v in lines)
    X, Y, Z = _homog(x)
    signs = tuple(_sgn(a * X + b * Y - c * Z) for a, b, c in lines)
    if anchors is None:
        return signs
    # parallel lines never cross, so a point on one is placed by where it
    # sits along that line relative to the vertices there
    extra = ()
    for (a, b, _), s, anc in zip(lines, signs, anchors):
        if s == 0:
            t = b * x[0] - a * x[1]
            extra += tuple(_sgn(t - v) for v in anc)
    return signs + extra


def _distinct(S) -> list:
    seen = []
    for p in S:
        p = point(*p)
        if p not in seen:
            seen.append(p)
    return seen


def build_arrangement(S: PointSet, extra_lines: Sequence = ()) -> Arrangement:
    """Arrangement of all lines through two distinct points of S
    (points and intervals in 1D); ``extra_lines`` refines it further."""
    pts = _distinct(S.points)
    if S.dim == 1:
        return _build_1d(pts)
    if S.dim != 2:
        raise DimensionError("arrangements are built for d <= 2")
    lines = []
    for p, r in combinations(pts, 2):
        ln = line_through(p, r)
        if ln not in lines:
            lines.append(ln)
    for ln in extra_lines:
        if ln not in lines:
            lines.append(tuple(ln))
    return arrangement_from_lines(lines, pts)


def _build_1d(pts) -> Arrangement:
    xs = sorted(p[0] for p in pts)
    if not xs:
        raise ValueError("empty point set")
    lo, hi = xs[0], xs[-1]
    span = max(hi - lo, Fraction(1))
    box = (lo - 2 * span, hi + 2 * span)
    verts = [Feature(0, (x,), _key(1, xs, (x,)), (), ((x,),)) for x in xs]
    cells = []

    def interval(a, b):
        pts3 = [(a + (b - a) * Fraction(j, 4),) for j in (2, 1, 3)]
        return Feature(1, pts3[0], _key(1, xs, pts3[0]), tuple(pts3[1:]), ((a,), (b,)))

    cells.append(interval(box[0], lo))
    for a, b in zip(xs, xs[1:]):
        cells.append(interval(a, b))
    cells.append(interval(hi, box[1]))
    return Arrangement(1, xs, verts, [], cells, box)


def _intersect(l1, l2):
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    det = a1 * b2 - a2 * b1
    if det == 0:
        return None
    return (Fraction(c1 * b2 - c2 * b1, det), Fraction(a1 * c2 - a2 * c1, det))


def _exit_param(p, d, box):
    """Largest t with p + t d inside the box (p inside, d non-zero)."""
    xmin, ymin, xmax, ymax = box
    ts = []
    for i, (lo, hi) in enumerate(((xmin, xmax), (ymin, ymax))):
        if d[i] > 0:
            ts.append((hi - p[i]) / d[i])
        elif d[i] < 0:
            ts.append((lo - p[i]) / d[i])
    return min(ts)


def arrangement_from_lines(lines: list, pts: list) -> Arrangement:
    pts = [point(*p) for p in pts]
    if not lines:
        # a single distinct point (or nothing): the point and its complement
        if not pts:
            raise ValueError("empty point set")
        p = pts[0]
        box = (p[0] - 2, p[1] - 2, p[0] + 2, p[1] + 2)
        v = Feature(0, p, (), (), (p,))
        samples = ((p[0] + 1, p[1]), (p[0], p[1] + 1), (p[0] - 1, p[1] - 1))
        c = Feature(2, samples[0], ("complement",), samples[1:])
        return Arrangement(2, [], [v], [], [c], box)

    on_line = [set() for _ in lines]
    vset = set()
    for (i, l1), (j, l2) in combinations(enumerate(lines), 2):
        x = _intersect(l1, l2)
        if x is not None:
            on_line[i].add(x)
            on_line[j].add(x)
            vset.add(x)
    for p in pts:
        for i, (a, b, c) in enumerate(lines):
            if a * p[0] + b * p[1] == c:
                on_line[i].add(p)
                vset.add(p)
    allx = [v[0] for v in vset] + [p[0] for p in pts]
    ally = [v[1] for v in vset] + [p[1] for p in pts]
    span = max(max(allx) - min(allx), max(ally) - min(ally), Fraction(1))
    box = (min(allx) - 2 * span, min(ally) - 2 * span, max(allx) + 2 * span, max(ally) + 2 * span)

    anchors = None
    if all(a1 * b2 == a2 * b1 for (a1, b1, _), (a2, b2, _) in combinations(lines, 2)):
        anchors = [sorted(b * v[0] - a * v[1] for v in on_line[i]) for i, (a, b, _) in enumerate(lines)]
    vertices = [Feature(0, v, _key(2, lines, v, anchors), (), (v,)) for v in sorted(vset)]
    edges = []
    hits = set()
    rays = 0
    cell_samples = {}

    for li, (a, b, c) in enumerate(lines):
        d = (b, -a)
        vs = sorted(on_line[li], key=lambda v: v[0] * d[0] + v[1] * d[1])
        pieces = []
        for u, w in zip(vs, vs[1:]):
            pieces.append((u, w, None))
        for end, sgn in ((vs[-1], 1), (vs[0], -1)):
            dd = (sgn * d[0], sgn * d[1])
            t = _exit_param(end, dd, box)
            hit = (end[0] + t * dd[0], end[1] + t * dd[1])
            hits.add(hit)
            rays += 1
            pieces.append((end, hit, "ray"))
        for u, w, kind in pieces:
            mids = [tuple(u[k] + (w[k] - u[k]) * Fraction(j, 4) for k in range(2)) for j in (2, 1, 3)]
            s = mids[0]
            key = _key(2, lines, s, anchors)
            ends = (u,) if kind else (u, w)
            edges.append(Feature(1, s, key, tuple(mids[1:]), ends))
            _offset_cells(lines, li, mids, cell_samples)

    corners = {(box[0], box[1]), (box[0], box[3]), (box[2], box[1]), (box[2], box[3])}
    boundary = hits | corners
    cells = []
    for key, samples in cell_samples.items():
        cells.append(Feature(2, samples[0], key, tuple(samples[1:3])))
    cells.sort(key=lambda f: f.key)
    return Arrangement(2, list(lines), vertices, edges, cells, box, len(boundary), rays, anchors)


def _offset_cells(lines, li, mids, out):
    """Push edge points off their line to both sides, staying inside the
    neighbouring cells, and record those samples by sign vector."""
    a, b, c = lines[li]
    for s in mids:
        X, Y, Z = _homog(s)
        best = None  # (|residual| * Z, |rate|) of the nearest crossing line
        for lj, (a2, b2, c2) in enumerate(lines):
            if lj == li:
                continue
            rate = abs(a2 * a + b2 * b)
            if rate:
                num = abs(a2 * X + b2 * Y - c2 * Z)
                if best is None or num * best[1] < best[0] * rate:
                    best = (num, rate)
        t = Fraction(1) if best is None else Fraction(best[0], 2 * best[1] * Z)
        for sg in (1, -1):
            x = (s[0] + sg * t * a, s[1] + sg * t * b)
            key = _key(2, lines, x)
            lst = out.setdefault(key, [])
            if len(lst) < 3 and x not in lst:
                lst.append(x)
