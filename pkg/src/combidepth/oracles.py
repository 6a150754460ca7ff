"""Brute-force reference computations.

These deliberately avoid the search shortcuts used in :mod:`depth` and
:mod:`enclosing` (no symbolic directions, no Caratheodory packing, no
angular restriction) so they can serve as independent checks.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations, product

from .exact import PointSet, in_convex_hull, point, simplex_contains

__all__ = [
    "tukey_removal_oracle", "tukey_direction_scan", "tverberg_partition_oracle",
    "enclosing_brute_force", "simplicial_brute_force", "set_partitions",
]


def tukey_removal_oracle(S: PointSet, q, weighted: bool = False) -> Fraction:
    """Least (weight of a) subset whose removal pushes q out of the hull.

    A closed halfspace through q holding X separates q from S minus X and
    vice versa, so this equals Tukey depth.
    """
    q = point(q)
    n = len(S)
    wts = S.weight_list() if weighted else [Fraction(1)] * n
    best = sum(wts, Fraction(0))
    for size in range(0, n + 1):
        if not weighted and size >= best:
            break
        for removed in combinations(range(n), size):
            w = sum((wts[i] for i in removed), Fraction(0))
            if w >= best:
                continue
            rest = [S.points[i] for i in range(n) if i not in removed]
            if not rest or not in_convex_hull(q, rest, method="lp"):
                best = w
    return best


def _random_direction(rng: random.Random, d: int) -> tuple:
    """Gaussian direction frozen to integers (scale 10^6)."""
    while True:
        v = tuple(round(rng.gauss(0.0, 1.0) * 10 ** 6) for _ in range(d))
        if any(v):
            return v


def tukey_direction_scan(S: PointSet, q, n_directions: int = 10000, seed: int = 0,
                         weighted: bool = False) -> Fraction:
    """Minimum count over random closed halfspaces ``n . (x - q) >= 0``.

    Only an upper bound in general; equal to Tukey depth once every cell
    of directions has been hit. Floats are used only to draw directions,
    which are then frozen as integers.
    """
    q = point(q)
    rng = random.Random(seed)
    d = S.dim
    wts = S.weight_list() if weighted else [1] * len(S)
    den = 1
    for p in list(S.points) + [q]:
        for x in p:
            den = den * x.denominator // math.gcd(den, x.denominator)
    vecs = [tuple(int((a - b) * den) for a, b in zip(p, q)) for p in S.points]
    best = None
    dirs = [(1,), (-1,)] if d == 1 else None
    count = 2 if d == 1 else n_directions
    for t in range(count):
        if dirs is not None:
            nvec = dirs[t]
        else:
            nvec = _random_direction(rng, d)
        total = 0
        for w, wt in zip(vecs, wts):
            if sum(a * b for a, b in zip(nvec, w)) >= 0:
                total += wt
        if best is None or total < best:
            best = total
    return Fraction(best if best is not None else 0)


def set_partitions(items: list):
    """All set partitions of ``items`` (restricted growth order)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def tverberg_partition_oracle(S: PointSet, q) -> tuple:
    """Exhaustive maximum over all set partitions; returns (r, classes).

    Dynamic programming over subsets: best(mask) tries every class that
    holds the lowest index of mask, so every set partition is visited
    once, without ever listing them.
    """
    q = point(q)
    n = len(S)
    if n == 0:
        return 0, []
    full = (1 << n) - 1
    ok = [False] * (full + 1)
    for mask in range(1, full + 1):
        ok[mask] = in_convex_hull(q, [S.points[i] for i in range(n) if mask >> i & 1], method="lp")
    best = [-1] * (full + 1)
    choice = [0] * (full + 1)
    best[0] = 0
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        sub = rest
        while True:
            cls = sub | low
            if ok[cls] and best[mask ^ cls] >= 0 and best[mask ^ cls] + 1 > best[mask]:
                best[mask] = best[mask ^ cls] + 1
                choice[mask] = cls
            if sub == 0:
                break
            sub = (sub - 1) & rest
    if best[full] <= 0:
        return 0, None
    classes, mask = [], full
    while mask:
        cls = choice[mask]
        classes.append([i for i in range(n) if cls >> i & 1])
        mask ^= cls
    return best[full], classes


def _class_assignments(indices: list, k: int, m: int):
    """Ordered families of m disjoint k-subsets, canonical by increasing minima."""
    if m == 0:
        yield []
        return
    for i, first in enumerate(indices):
        rest_after = indices[i + 1:]
        for tail in combinations(rest_after, k - 1):
            cls = (first,) + tail
            remaining = [x for x in rest_after if x not in tail]
            for more in _class_assignments(remaining, k, m - 1):
                yield [cls] + more


def enclosing_brute_force(S: PointSet, q) -> tuple:
    """Maximum k over every family of d+1 disjoint k-classes; returns (k, classes)."""
    q = point(q)
    d = S.dim
    n = len(S)
    memo = {}

    def contains(idx):
        key = tuple(sorted(idx))
        r = memo.get(key)
        if r is None:
            r = simplex_contains(q, [S.points[i] for i in key])
            memo[key] = r
        return r

    for k in range(n // (d + 1), 0, -1):
        for classes in _class_assignments(list(range(n)), k, d + 1):
            if all(contains(t) for t in product(*classes)):
                return k, classes
    return 0, None


def simplicial_brute_force(S: PointSet, q) -> int:
    q = point(q)
    return sum(1 for sub in combinations(S.points, S.dim + 1) if in_convex_hull(q, list(sub), method="lp"))
