"""Tukey, Tverberg, simplicial and peeling depth with checkable witnesses."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Union

from .exact import (
    DimensionError, OrientedHalfspace, PointSet, _orient2, _simplex_contains,
    convex_hull_2d, generic_directions, in_convex_hull, integer_vector, lexsign,
    materialize_direction, point,
)

__all__ = [
    "CapExceeded", "RPartition", "EnclosingWitness", "DepthResult",
    "tukey_depth", "tukey_depth_weighted", "tukey_value",
    "tverberg_depth_exact", "tverberg_greedy_lower", "simplicial_depth",
    "peeling_depth", "QueryProbe", "verify_rpartition",
]


class CapExceeded(RuntimeError):
    """Instance is larger than an exhaustive routine is allowed to handle."""


@dataclass(frozen=True)
class RPartition:
    classes: tuple  # tuple of tuples of indices
    query: tuple

    @property
    def r(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class EnclosingWitness:
    classes: tuple  # d+1 tuples of indices, all of size k
    query: tuple

    @property
    def k(self) -> int:
        return len(self.classes[0]) if self.classes else 0

    def indices(self) -> list:
        return sorted(i for c in self.classes for i in c)


@dataclass(frozen=True)
class DepthResult:
    value: Fraction
    witness: Union[RPartition, EnclosingWitness, OrientedHalfspace, None] = None
    exact: bool = True
    notes: dict = field(default_factory=dict, compare=False)

    def __int__(self):
        return int(self.value)


# ------------------------------------------------------------------ probes

class QueryProbe:
    """Integer-scaled copy of ``S`` and ``q`` for fast repeated hull tests.

    Scaling every coordinate by a common positive factor leaves all
    containment predicates unchanged.
    """

    def __init__(self, S: PointSet, q):
        q = point(q)
        den = 1
        for p in list(S.points) + [q]:
            for x in p:
                den = den * x.denominator // math.gcd(den, x.denominator)
        self.dim = S.dim
        self.n = len(S)
        self.q = tuple(int(x * den) for x in q)
        self.pts = [tuple(int(x * den) for x in p) for p in S.points]
        self._cache = {}
        if self.dim == 2:
            qx, qy = self.q
            self._side = {}
            for i, j in combinations(range(self.n), 2):
                a, b = self.pts[i], self.pts[j]
                self._side[i, j] = (b[0] - a[0]) * (qy - a[1]) - (b[1] - a[1]) * (qx - a[0])

    def contains(self, idx: tuple) -> bool:
        """q in conv of the points with the given (sorted) indices, |idx| <= d+1."""
        r = self._cache.get(idx)
        if r is None:
            r = self._contains(idx)
            self._cache[idx] = r
        return r

    def _contains(self, idx):
        pts = [self.pts[i] for i in idx]
        if self.dim == 1:
            xs = [p[0] for p in pts]
            return min(xs) <= self.q[0] <= max(xs)
        if self.dim == 2 and len(idx) == 3:
            i, j, k = idx
            o = _orient2(pts[0], pts[1], pts[2])
            if o != 0:
                s1 = self._side[i, j]
                s2 = self._side[j, k]
                s3 = -self._side[i, k]
                if o > 0:
                    return s1 >= 0 and s2 >= 0 and s3 >= 0
                return s1 <= 0 and s2 <= 0 and s3 <= 0
        return _simplex_contains(self.q, pts)

    def minimal_sets(self, indices=None) -> list:
        """Inclusion-minimal index tuples (size <= d+1) whose hull holds q,
        sorted by (size, lexicographic)."""
        idx = list(range(self.n)) if indices is None else sorted(indices)
        found = []
        found_set = set()
        for size in range(1, self.dim + 2):
            for sub in combinations(idx, size):
                if found_set and any(s in found_set for k in range(1, size)
                                     for s in combinations(sub, k)):
                    continue
                if self.contains(sub):
                    found.append(sub)
                    found_set.add(sub)
        return found


# ------------------------------------------------------------------ Tukey

def _weights(S: PointSet, use_weights: bool) -> list:
    if use_weights:
        return S.weight_list()
    return [1] * len(S)


def _tukey_1d(S, q, wts):
    x = q[0]
    right = sum((w for p, w in zip(S.points, wts) if p[0] >= x), 0)
    left = sum((w for p, w in zip(S.points, wts) if p[0] <= x), 0)
    if right <= left:
        return right, OrientedHalfspace((1,), x, True)
    return left, OrientedHalfspace((-1,), -x, True)


def _tukey_2d(vecs, coincident_w):
    """vecs: list of (int vector, weight) with non-zero vectors."""
    best = None
    best_chain = None
    seen = set()
    for wj, _ in vecs:
        g = math.gcd(abs(wj[0]), abs(wj[1]))
        key = (wj[0] // g, wj[1] // g)
        if key in seen:
            continue
        seen.add(key)
        pos = neg = zpos = zneg = 0
        for wi, wt in vecs:
            c = wj[0] * wi[1] - wj[1] * wi[0]
            if c > 0:
                pos += wt
            elif c < 0:
                neg += wt
            elif wj[0] * wi[0] + wj[1] * wi[1] > 0:
                zpos += wt
            else:
                zneg += wt
        # normal (-y, x) has n.w equal to the cross product above
        for total, sigma, tau in ((pos + zpos, 1, 1), (pos + zneg, 1, -1),
                                  (neg + zpos, -1, 1), (neg + zneg, -1, -1)):
            if best is None or total < best:
                best = total
                best_chain = ((-sigma * key[1], sigma * key[0]), (tau * key[0], tau * key[1]))
    if best is None:
        return coincident_w, ((1, 0),)
    return best + coincident_w, best_chain


def _tukey(S: PointSet, q, use_weights: bool, want_witness: bool = True):
    q = point(q)
    if len(q) != S.dim:
        raise DimensionError("dimension mismatch")
    wts = _weights(S, use_weights)
    if S.dim == 1:
        val, h = _tukey_1d(S, q, wts)
        return Fraction(val), h
    vecs = []
    coincident = 0
    for p, wt in zip(S.points, wts):
        w = tuple(a - b for a, b in zip(p, q))
        if any(w):
            vecs.append((integer_vector(w), wt))
        else:
            coincident += wt
    if S.dim == 2:
        val, chain = _tukey_2d(vecs, coincident)
    else:
        val = None
        chain = None
        for ch in generic_directions([w for w, _ in vecs], S.dim):
            total = coincident
            for w, wt in vecs:
                if lexsign(ch, w) > 0:
                    total += wt
            if val is None or total < val:
                val, chain = total, ch
    h = None
    if want_witness:
        N = materialize_direction(chain, [w for w, _ in vecs])
        h = OrientedHalfspace(N, sum((a * b for a, b in zip(N, q)), Fraction(0)), True)
    return Fraction(val), h


def tukey_depth(S: PointSet, q) -> DepthResult:
    """Minimum number of points of S in a closed halfspace containing q.

    Points coinciding with q are always counted. The witness is a closed
    halfspace with q on its boundary attaining the minimum.
    """
    val, h = _tukey(S, q, use_weights=False)
    return DepthResult(val, h, True)


def tukey_depth_weighted(S: PointSet, q) -> DepthResult:
    if not S.weighted:
        raise ValueError("weighted Tukey depth needs a weighted point set")
    val, h = _tukey(S, q, use_weights=True)
    return DepthResult(val, h, True)


def tukey_value(S: PointSet, q, weighted: bool = False) -> Fraction:
    return _tukey(S, q, use_weights=weighted and S.weighted, want_witness=False)[0]


# ------------------------------------------------------------------ Tverberg

def verify_rpartition(S: PointSet, part: RPartition, cover: bool = True) -> bool:
    seen = set()
    for cls in part.classes:
        if not cls:
            return False
        if seen.intersection(cls):
            return False
        seen.update(cls)
        if not in_convex_hull(part.query, [S.points[i] for i in cls]):
            return False
    if cover and seen != set(range(len(S))):
        return False
    return True


def _max_packing(sets: list, n: int, upper: int, lower: int = 0) -> list:
    """Largest family of pairwise disjoint sets (branch and bound)."""
    by_point = [[] for _ in range(n)]
    masks = []
    for s in sets:
        m = 0
        for i in s:
            m |= 1 << i
        masks.append(m)
        by_point[min(s)].append(len(masks) - 1)
    singles = [False] * n
    for s in sets:
        if len(s) == 1:
            singles[s[0]] = True
    best = [None]
    best_len = [lower - 1]
    full = (1 << n) - 1

    def bound(avail):
        c = sum(1 for i in range(n) if avail >> i & 1 and singles[i])
        rest = bin(avail).count("1") - c
        return c + rest // 2

    chosen = []

    def rec(avail):
        if best_len[0] >= upper:
            return
        if len(chosen) + bound(avail) <= best_len[0]:
            return
        if avail == 0:
            if len(chosen) > best_len[0]:
                best_len[0] = len(chosen)
                best[0] = list(chosen)
            return
        p = (avail & -avail).bit_length() - 1
        for si in by_point[p]:
            m = masks[si]
            if m & avail == m:
                chosen.append(sets[si])
                rec(avail & ~m)
                chosen.pop()
                if best_len[0] >= upper:
                    return
        rec(avail & ~(1 << p))

    rec(full)
    if best[0] is None:
        return []
    return best[0]


def tverberg_depth_exact(S: PointSet, q, n_cap: int = 12) -> DepthResult:
    """Largest r with an r-partition of S whose intersection contains q.

    Classes may be shrunk to inclusion-minimal subsets of size <= d+1
    containing q (Caratheodory), so the search is a maximum packing of
    those; unused points are put into the first class afterwards.
    """
    q = point(q)
    n = len(S)
    if n > n_cap:
        raise CapExceeded(f"tverberg_depth_exact: |S|={n} exceeds cap {n_cap}; "
                          "use tverberg_greedy_lower for a lower bound")
    probe = QueryProbe(S, q)
    sets = probe.minimal_sets()
    if not sets:
        return DepthResult(Fraction(0), None, True)
    upper = int(tukey_value(S, q))
    greedy = _greedy_from_sets(sets)
    packing = _max_packing(sets, n, upper, lower=len(greedy))
    if len(packing) < len(greedy):
        packing = greedy
    classes = [list(c) for c in packing]
    used = {i for c in classes for i in c}
    classes[0].extend(i for i in range(n) if i not in used)
    part = RPartition(tuple(tuple(sorted(c)) for c in classes), q)
    if not verify_rpartition(S, part):
        raise AssertionError("Tverberg witness failed verification")
    return DepthResult(Fraction(len(classes)), part, True)


def _greedy_from_sets(sets: list) -> list:
    used = set()
    out = []
    for s in sets:
        if not used.intersection(s):
            out.append(s)
            used.update(s)
    return out


def tverberg_greedy_lower(S: PointSet, q) -> DepthResult:
    """Lower bound by repeatedly removing a smallest simplex around q.

    Each removed simplex has q in its relative interior, so it lowers the
    Tukey depth by at most d; the drop is checked on every step.
    """
    q = point(q)
    probe = QueryProbe(S, q)
    sets = probe.minimal_sets()
    chosen = _greedy_from_sets(sets)
    d = S.dim
    remaining = set(range(len(S)))
    td = int(tukey_value(S, q))
    td0 = td
    for s in chosen:
        remaining.difference_update(s)
        nxt = int(tukey_value(S.subset(sorted(remaining)), q)) if remaining else 0
        if td - nxt > d:
            raise AssertionError(f"simplex removal dropped Tukey depth by {td - nxt} > {d}")
        td = nxt
    if td != 0:
        raise AssertionError("greedy stopped while q is still inside the hull")
    if not chosen:
        return DepthResult(Fraction(0), None, False, {"tukey": td0})
    classes = [list(c) for c in chosen]
    classes[0].extend(sorted(remaining))
    part = RPartition(tuple(tuple(sorted(c)) for c in classes), q)
    return DepthResult(Fraction(len(chosen)), part, False, {"tukey": td0})


# ------------------------------------------------------------------ others

def simplicial_depth(S: PointSet, q) -> DepthResult:
    """Number of (d+1)-subsets of S whose closed hull contains q."""
    probe = QueryProbe(S, q)
    count = sum(1 for sub in combinations(range(len(S)), S.dim + 1) if probe.contains(sub))
    return DepthResult(Fraction(count), None, True)


def _peel(points: list, dim: int) -> list:
    if dim == 1:
        lo = min(p[0] for p in points)
        hi = max(p[0] for p in points)
        return [p for p in points if lo < p[0] < hi]
    hull = convex_hull_2d(points)
    if len(hull) <= 1:
        return []
    if len(hull) == 2:
        return [p for p in points if p not in hull]
    edges = list(zip(hull, hull[1:] + hull[:1]))

    def on_boundary(p):
        for a, b in edges:
            if _orient2(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
                    and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
                return True
        return False

    return [p for p in points if not on_boundary(p)]


def peeling_depth(S: PointSet, q) -> DepthResult:
    """Convex-hull peeling depth: number of hull layers removed before q
    leaves the hull of what remains."""
    if S.dim > 2:
        raise DimensionError("peeling depth implemented for d <= 2")
    q = point(q)
    pts = list(S.points)
    depth = 0
    while pts and in_convex_hull(q, pts):
        depth += 1
        pts = _peel(pts, S.dim)
    return DepthResult(Fraction(depth), None, True)
