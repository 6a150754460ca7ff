"""Exact rational predicates and point-set containers.

Every decision in the package goes through this module. Coordinates are
:class:`fractions.Fraction`; heavy loops rescale difference vectors to
integers first, which keeps signs intact and is much faster.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .lp import solve_lp

__all__ = [
    "Point", "PointSet", "OrientedHalfspace", "RED", "BLUE",
    "to_fraction", "point", "orient", "simplex_contains", "in_convex_hull",
    "hulls_intersect", "in_cone", "halfspace_count", "generic_directions",
    "materialize_direction", "lexsign", "candidate_halfspaces_through",
    "is_general_position_rel", "angular_order", "convex_hull_2d",
    "affine_rank", "integer_vector", "DimensionError",
]

Point = tuple  # tuple of Fractions
RED = "R"
BLUE = "B"

Number = Union[int, Fraction, str]


class DimensionError(ValueError):
    pass


def to_fraction(v: Number) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or 'a/b' string")
    return Fraction(v)


def point(*coords: Number) -> Point:
    if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
        coords = tuple(coords[0])
    return tuple(to_fraction(c) for c in coords)


@dataclass(frozen=True)
class PointSet:
    """Indexed points with optional weights and an optional red/blue colouring."""

    points: tuple
    dim: int
    weights: Optional[tuple] = None
    colors: Optional[tuple] = None

    def __post_init__(self):
        if not 1 <= self.dim <= 3:
            raise DimensionError(f"dimension {self.dim} not supported (1..3)")
        pts = tuple(point(p) for p in self.points)
        for p in pts:
            if len(p) != self.dim:
                raise DimensionError(f"point {p} has {len(p)} coordinates, expected {self.dim}")
        object.__setattr__(self, "points", pts)
        if self.weights is not None:
            ws = tuple(to_fraction(w) for w in self.weights)
            if len(ws) != len(pts):
                raise ValueError("one weight per point required")
            if any(w < 0 for w in ws):
                raise ValueError("weights must be non-negative")
            object.__setattr__(self, "weights", ws)
        if self.colors is not None:
            cs = tuple(self.colors)
            if len(cs) != len(pts):
                raise ValueError("one colour per point required")
            if any(c not in (RED, BLUE) for c in cs):
                raise ValueError("colours must be 'R' or 'B'")
            object.__setattr__(self, "colors", cs)

    @classmethod
    def of(cls, points, weights=None, colors=None, dim=None) -> "PointSet":
        pts = [point(p) if isinstance(p, (tuple, list)) else point(p) for p in points]
        if dim is None:
            if not pts:
                raise ValueError("dimension required for an empty point set")
            dim = len(pts[0])
        return cls(tuple(pts), dim, None if weights is None else tuple(weights),
                   None if colors is None else tuple(colors))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def weight(self, i: int) -> Fraction:
        return Fraction(1) if self.weights is None else self.weights[i]

    def weight_list(self) -> list:
        return [self.weight(i) for i in range(len(self.points))]

    def total_weight(self) -> Fraction:
        return sum(self.weight_list(), Fraction(0))

    def subset(self, indices: Iterable[int]) -> "PointSet":
        idx = list(indices)
        return PointSet(
            tuple(self.points[i] for i in idx), self.dim,
            None if self.weights is None else tuple(self.weights[i] for i in idx),
            None if self.colors is None else tuple(self.colors[i] for i in idx),
        )

    def with_point(self, p, weight=None, color=None) -> "PointSet":
        p = point(p)
        ws = None
        if self.weights is not None or weight is not None:
            ws = tuple(self.weight_list()) + (to_fraction(1 if weight is None else weight),)
        cs = None
        if self.colors is not None:
            cs = self.colors + (color or BLUE,)
        return PointSet(self.points + (p,), self.dim, ws, cs)

    def with_weights(self, weights) -> "PointSet":
        return PointSet(self.points, self.dim, tuple(weights), self.colors)

    def indices(self, color: str) -> list:
        if self.colors is None:
            return []
        return [i for i, c in enumerate(self.colors) if c == color]


@dataclass(frozen=True)
class OrientedHalfspace:
    """``normal . x >= offset`` (closed) or ``> offset`` (open)."""

    normal: tuple
    offset: Fraction
    boundary_included: bool = True

    def __post_init__(self):
        n = tuple(to_fraction(v) for v in self.normal)
        if not any(n):
            raise ValueError("halfspace normal must be non-zero")
        lead = next(v for v in n if v)
        s = abs(lead)
        object.__setattr__(self, "normal", tuple(v / s for v in n))
        object.__setattr__(self, "offset", to_fraction(self.offset) / s)

    def value(self, x) -> Fraction:
        return sum((a * b for a, b in zip(self.normal, x)), Fraction(0))

    def contains(self, x) -> bool:
        v = self.value(x)
        return v >= self.offset if self.boundary_included else v > self.offset

    @property
    def dim(self):
        return len(self.normal)


# ---------------------------------------------------------------- arithmetic

def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def integer_vector(v) -> tuple:
    """Positive rescaling of a rational vector to integers (signs preserved)."""
    den = 1
    for x in v:
        d = x.denominator if isinstance(x, Fraction) else 1
        if d != 1:
            den = den * d // math.gcd(den, d)
    return tuple(int(x * den) for x in v)


def _primitive(v: tuple) -> tuple:
    g = reduce(math.gcd, (abs(x) for x in v), 0)
    if g <= 1:
        return v
    return tuple(x // g for x in v)


def _det(rows) -> Fraction:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _rank(vectors) -> int:
    return len(_independent_subset(vectors))


def _independent_subset(vectors) -> list:
    """Greedy maximal linearly independent sub-list (by position)."""
    chosen = []
    reduced = []  # echelon rows with pivot columns
    for v in vectors:
        r = [Fraction(x) for x in v]
        for piv, row in reduced:
            if r[piv]:
                f = r[piv] / row[piv]
                r = [a - f * b for a, b in zip(r, row)]
        piv = next((j for j, x in enumerate(r) if x), None)
        if piv is not None:
            reduced.append((piv, r))
            chosen.append(v)
    return chosen


def affine_rank(points) -> int:
    """Dimension of the affine hull (-1 for no points)."""
    pts = list(points)
    if not pts:
        return -1
    p0 = pts[0]
    return _rank([_sub(p, p0) for p in pts[1:]])


def _solve(M, rhs):
    """Solve the square system ``M x = rhs`` exactly; None if singular."""
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[-1] for row in aug]


# ---------------------------------------------------------------- predicates

def orient(simplex: Sequence) -> int:
    """Sign of the orientation determinant of ``d+1`` points in R^d."""
    pts = [point(p) for p in simplex]
    if not pts:
        raise DimensionError("empty simplex")
    d = len(pts[0])
    if len(pts) != d + 1 or any(len(p) != d for p in pts):
        raise DimensionError(f"orient needs {d + 1} points of dimension {d}")
    p0 = pts[0]
    return _sign(_det([_sub(p, p0) for p in pts[1:]]))


def _orient2(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(q, a, b) -> bool:
    """q on the closed segment ab (any dimension)."""
    if a == b:
        return q == a
    d = _sub(b, a)
    e = _sub(q, a)
    k = next(i for i, x in enumerate(d) if x)
    # e parallel to d, without dividing (inputs may be plain ints)
    if any(e[i] * d[k] != e[k] * d[i] for i in range(len(d))):
        return False
    if d[k] > 0:
        return 0 <= e[k] <= d[k]
    return d[k] <= e[k] <= 0


def simplex_contains(q, vertices: Sequence) -> bool:
    """Closed membership of ``q`` in the hull of 1..d+1 vertices (degenerate allowed)."""
    q = point(q)
    verts = [point(v) for v in vertices]
    d = len(q)
    if not 1 <= len(verts) <= d + 1:
        raise DimensionError(f"need between 1 and {d + 1} vertices")
    if any(len(v) != d for v in verts):
        raise DimensionError("dimension mismatch")
    return _simplex_contains(q, verts)


def _simplex_contains(q, verts) -> bool:
    k = len(verts)
    if k == 1:
        return q == verts[0]
    if k == 2:
        return _on_segment(q, verts[0], verts[1])
    if len(q) == 2 and k == 3:
        a, b, c = verts
        o = _orient2(a, b, c)
        if o != 0:
            s1 = _orient2(a, b, q)
            s2 = _orient2(b, c, q)
            s3 = _orient2(c, a, q)
            if o > 0:
                return s1 >= 0 and s2 >= 0 and s3 >= 0
            return s1 <= 0 and s2 <= 0 and s3 <= 0
        return any(_simplex_contains(q, [verts[i] for i in range(3) if i != j]) for j in range(3))
    v0 = verts[0]
    cols = [_sub(v, v0) for v in verts[1:]]
    if _rank(cols) < len(cols):
        return any(_simplex_contains(q, verts[:j] + verts[j + 1:]) for j in range(k))
    rhs_vec = _sub(q, v0)
    gram = [[_dot(a, b) for b in cols] for a in cols]
    lam = _solve(gram, [_dot(a, rhs_vec) for a in cols])
    recon = tuple(sum((lam[j] * cols[j][i] for j in range(len(cols))), Fraction(0))
                  for i in range(len(q)))
    if recon != rhs_vec:
        return False
    return all(x >= 0 for x in lam) and sum(lam) <= 1


def _hull_lp(q, pts):
    """Barycentric coefficients expressing q in conv(pts), or None."""
    d = len(q)
    n = len(pts)
    A = [[pts[j][i] for j in range(n)] for i in range(d)] + [[1] * n]
    b = list(q) + [1]
    res = solve_lp(A, b)
    return res.x if res.status == "optimal" else None


def in_convex_hull(q, S, method: str = "auto") -> bool:
    """Closed membership ``q in conv(S)``.

    ``method`` is ``"caratheodory"`` (enumerate subsets of size <= d+1),
    ``"lp"`` (exact linear feasibility) or ``"auto"``.
    """
    q = point(q)
    pts = list(S.points) if isinstance(S, PointSet) else [point(p) for p in S]
    if not pts:
        return False
    d = len(q)
    if any(len(p) != d for p in pts):
        raise DimensionError("dimension mismatch")
    if method == "auto":
        if d == 1:
            return min(p[0] for p in pts) <= q[0] <= max(p[0] for p in pts)
        method = "lp" if len(pts) > 6 else "caratheodory"
    if method == "caratheodory":
        uniq = list(dict.fromkeys(pts))
        for k in range(1, min(d + 1, len(uniq)) + 1):
            for sub in combinations(uniq, k):
                if _simplex_contains(q, list(sub)):
                    return True
        return False
    if method == "lp":
        return _hull_lp(q, pts) is not None
    raise ValueError(f"unknown method {method!r}")


def hull_coefficients(q, pts) -> Optional[list]:
    return _hull_lp(point(q), [point(p) for p in pts])


def hulls_intersect(A: Sequence, B: Sequence) -> bool:
    """Whether conv(A) and conv(B) share a point."""
    A = [point(p) for p in A]
    B = [point(p) for p in B]
    if not A or not B:
        return False
    d = len(A[0])
    if d == 1:
        return max(min(p[0] for p in A), min(p[0] for p in B)) <= min(max(p[0] for p in A), max(p[0] for p in B))
    if len(A) == 1:
        return in_convex_hull(A[0], B)
    if len(B) == 1:
        return in_convex_hull(B[0], A)
    return common_point(A, B) is not None


def common_point(A: Sequence, B: Sequence):
    """An exact point of conv(A) n conv(B), or None."""
    A = [point(p) for p in A]
    B = [point(p) for p in B]
    na, nb = len(A), len(B)
    d = len(A[0])
    rows = []
    rhs = []
    for i in range(d):
        rows.append([A[j][i] for j in range(na)] + [-B[j][i] for j in range(nb)])
        rhs.append(0)
    rows.append([1] * na + [0] * nb)
    rhs.append(1)
    rows.append([0] * na + [1] * nb)
    rhs.append(1)
    res = solve_lp(rows, rhs)
    if res.status != "optimal":
        return None
    lam = res.x[:na]
    return tuple(sum((lam[j] * A[j][i] for j in range(na)), Fraction(0)) for i in range(d))


def in_cone(apex, generators: Sequence, p) -> bool:
    """``p - apex`` is a non-negative combination of ``g - apex`` over generators."""
    apex = point(apex)
    p = point(p)
    vecs = [_sub(point(g), apex) for g in generators]
    target = _sub(p, apex)
    if not any(target):
        return True
    if not vecs:
        return False
    d = len(apex)
    A = [[v[i] for v in vecs] for i in range(d)]
    return solve_lp(A, list(target)).status == "optimal"


def halfspace_count(S: PointSet, h: OrientedHalfspace) -> Fraction:
    if h.dim != S.dim:
        raise DimensionError("dimension mismatch")
    total = Fraction(0)
    for i, p in enumerate(S.points):
        if h.contains(p):
            total += S.weight(i)
    return total


# ------------------------------------------------ symbolic generic directions

def lexsign(chain: tuple, w: tuple) -> int:
    """Sign of ``(n0 + e n1 + e^2 n2 + ...) . w`` for infinitesimal e > 0."""
    for v in chain:
        s = 0
        for a, b in zip(v, w):
            s += a * b
        if s:
            return 1 if s > 0 else -1
    return 0


def _complement_normal(vectors: Sequence) -> tuple:
    """Non-zero integer vector orthogonal to d-1 independent vectors in Z^d."""
    d = len(vectors[0])
    if d == 2:
        (x, y), = vectors
        return (-y, x)
    if d == 3:
        (a1, a2, a3), (b1, b2, b3) = vectors
        return (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    # generic cofactor expansion
    out = []
    for j in range(d):
        minor = [[v[i] for i in range(d) if i != j] for v in vectors]
        out.append((-1) ** j * _det(minor))
    return tuple(int(x) for x in out)


def _combine(coeffs, basis) -> tuple:
    d = len(basis[0])
    return tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(d))


def generic_directions(vectors: Sequence, dim: int) -> list:
    """One symbolic direction per open cell of the central arrangement
    ``{n : n . w = 0}`` over the given integer vectors (at least one each).

    A direction is a tuple of integer vectors ``(n0, n1, ...)`` read as the
    infinitesimally perturbed normal ``n0 + e n1 + e^2 n2 + ...``; no vector
    ``w`` in the input is orthogonal to it (see :func:`lexsign`).
    """
    seen = set()
    W = []
    for w in vectors:
        w = tuple(int(x) for x in w)
        if any(w):
            pw = _primitive(w)
            if pw not in seen:
                seen.add(pw)
                W.append(pw)
    return _generic(W, dim)


def _generic(W: list, d: int) -> list:
    if not W:
        e = tuple(1 if i == 0 else 0 for i in range(d))
        return [(e,), (tuple(-x for x in e),)]
    basis = _independent_subset(W)
    r = len(basis)
    if r < d:
        red = [tuple(_dot(b, w) for b in basis) for w in W]
        sub = generic_directions(red, r)
        return _dedupe([tuple(_combine(x, basis) for x in chain) for chain in sub])
    if d == 1:
        return [((1,),), ((-1,),)]
    out = []
    for subset in combinations(W, d - 1):
        if _rank(subset) < d - 1:
            continue
        n0 = _primitive(_complement_normal(subset))
        W0 = [w for w in W if _dot(n0, w) == 0]
        red = [tuple(_dot(b, w) for b in subset) for w in W0]
        sub = generic_directions(red, d - 1)
        inner = [tuple(_primitive(_combine(x, subset)) for x in chain) for chain in sub]
        for sigma in (1, -1):
            head = tuple(sigma * x for x in n0)
            for chain in inner:
                out.append((head,) + chain)
    return _dedupe(out)


def _dedupe(chains: list) -> list:
    seen = set()
    out = []
    for c in chains:
        key = tuple(_primitive(tuple(int(x) for x in v)) for v in c)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def materialize_direction(chain: tuple, vectors: Sequence) -> tuple:
    """A concrete rational normal with the same sign as ``chain`` on every vector."""
    vecs = [tuple(Fraction(x) for x in w) for w in vectors if any(w)]
    N = tuple(Fraction(x) for x in chain[-1])
    for v in reversed(chain[:-1]):
        v = tuple(Fraction(x) for x in v)
        eps = None
        for w in vecs:
            a = _dot(v, w)
            b = _dot(N, w)
            if a and b:
                r = abs(a) / abs(b)
                if eps is None or r < eps:
                    eps = r
        if eps is None:
            eps = Fraction(1)
        else:
            # a power of two below half the bound keeps the numbers short
            k = 1
            while Fraction(1, 2 ** k) >= eps / 2:
                k += 1
            eps = Fraction(1, 2 ** k)
        N = tuple(x + eps * y for x, y in zip(v, N))
    return N


def _query_vectors(S: PointSet, q) -> tuple:
    """Integer difference vectors ``s - q`` and the indices coincident with q."""
    vecs = []
    coincident = []
    for i, p in enumerate(S.points):
        w = _sub(p, q)
        if any(w):
            vecs.append((i, integer_vector(w)))
        else:
            coincident.append(i)
    return vecs, coincident


def candidate_halfspaces_through(q, S: PointSet) -> list:
    """Closed/open halfspaces with ``q`` on the boundary covering every
    combinatorial type of closed halfspace through ``q``.

    In 1D these are the four halflines at ``q``. In higher dimension each
    hyperplane through ``q`` and up to d-1 points of S is rotated
    infinitesimally about ``q`` in every combinatorially distinct way and
    then made concrete; none of these contains a point of S other than
    those coinciding with ``q`` on its boundary.
    """
    q = point(q)
    if len(q) != S.dim:
        raise DimensionError("dimension mismatch")
    if S.dim == 1:
        out = []
        for s in (1, -1):
            for incl in (True, False):
                out.append(OrientedHalfspace((s,), s * q[0], incl))
        return out
    vecs, _ = _query_vectors(S, q)
    W = [w for _, w in vecs]
    out = []
    for chain in generic_directions(W, S.dim):
        N = materialize_direction(chain, W)
        out.append(OrientedHalfspace(N, _dot(N, q), True))
    return out


def is_general_position_rel(S: PointSet, q) -> bool:
    """No hyperplane contains q together with d points of S."""
    q = point(q)
    d = S.dim
    vecs = [integer_vector(_sub(p, q)) for p in S.points]
    if any(not any(v) for v in vecs):
        return False
    if d == 1:
        return True
    if d == 2:
        for (a, b) in combinations(vecs, 2):
            if a[0] * b[1] - a[1] * b[0] == 0:
                return False
        return True
    for sub in combinations(vecs, d):
        if _det(list(sub)) == 0:
            return False
    return True


def _half(v) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2 pi)
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def angular_order(S: PointSet, q) -> list:
    """Indices of S sorted counter-clockwise around q from the +x direction,
    grouped into lists of equal direction."""
    import functools

    q = point(q)
    if S.dim != 2:
        raise DimensionError("angular order needs planar points")
    items = []
    for i, p in enumerate(S.points):
        w = integer_vector(_sub(p, q))
        if not any(w):
            raise ValueError(f"coincident point: index {i} equals the query")
        items.append((i, w))

    def cmp(a, b):
        ha, hb = _half(a[1]), _half(b[1])
        if ha != hb:
            return ha - hb
        c = a[1][0] * b[1][1] - a[1][1] * b[1][0]
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    items.sort(key=functools.cmp_to_key(lambda a, b: cmp(a, b) or (a[0] - b[0])))
    groups = []
    for it in items:
        if groups and cmp(groups[-1][-1], it) == 0:
            groups[-1].append(it)
        else:
            groups.append([it])
    return [[i for i, _ in g] for g in groups]


def convex_hull_2d(points: Sequence) -> list:
    """Vertices of the convex hull in counter-clockwise order (monotone chain).

    Collinear boundary points are dropped; degenerate inputs give one or
    two vertices.
    """
    pts = sorted(set(point(p) for p in points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        h = []
        for p in seq:
            while len(h) >= 2 and _orient2(h[-2], h[-1], p) <= 0:
                h.pop()
            h.append(p)
        return h

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return hull
