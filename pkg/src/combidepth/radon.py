"""Bichromatic Radon partitions: the surrounds relation, the 1D
positive-fraction construction, and its lift to planar enclosing
witnesses."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional

from .depth import CapExceeded, EnclosingWitness, tukey_depth
from .enclosing import verify_enclosing_oracle
from .exact import (
    BLUE, RED, DimensionError, PointSet, _dot, _sub, generic_directions,
    hulls_intersect, integer_vector, is_general_position_rel, lexsign, point,
)

__all__ = [
    "BichromaticSet", "RadonFractionWitness", "Verdict", "surrounds",
    "radon1d_construct", "verify_fraction_radon", "fraction_radon_search_small",
    "construct_e2_witness",
]


@dataclass(frozen=True)
class BichromaticSet:
    base: PointSet

    def __post_init__(self):
        if self.base.colors is None:
            raise ValueError("bichromatic set needs a colour per point")

    @classmethod
    def of(cls, red, blue) -> "BichromaticSet":
        pts = list(red) + list(blue)
        cols = [RED] * len(red) + [BLUE] * len(blue)
        return cls(PointSet.of(pts, colors=cols))

    @property
    def red(self) -> list:
        return self.base.indices(RED)

    @property
    def blue(self) -> list:
        return self.base.indices(BLUE)

    @property
    def dim(self) -> int:
        return self.base.dim


@dataclass(frozen=True)
class RadonFractionWitness:
    red_classes: tuple
    blue_classes: tuple

    @property
    def a(self) -> int:
        return len(self.red_classes)

    @property
    def b(self) -> int:
        return len(self.blue_classes)

    def sizes(self) -> tuple:
        return tuple(len(c) for c in self.red_classes), tuple(len(c) for c in self.blue_classes)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _scaled(P: PointSet) -> list:
    den = 1
    for p in P.points:
        for x in p:
            den = den * x.denominator // math.gcd(den, x.denominator)
    return [tuple(int(x * den) for x in p) for p in P.points]


def surrounds(P: BichromaticSet) -> bool:
    """Every closed halfspace holds at least as many blue as red points.

    A closed halfspace picks out an upper set of the order along its
    normal; perturbing the normal into a generic direction keeps that set
    an upper set, so checking all suffixes along one direction per cell of
    the difference-vector arrangement is exhaustive.
    """
    S = P.base
    if S.dim > 2:
        raise DimensionError("surrounds implemented for d <= 2")
    if not P.red:
        return True
    pts = _scaled(S)
    n = len(pts)
    diffs = [_sub(pts[i], pts[j]) for i, j in combinations(range(n), 2)]
    color = S.colors
    for chain in generic_directions(diffs, S.dim):
        def cmp(i, j, chain=chain):
            return lexsign(chain, _sub(pts[i], pts[j]))

        order = sorted(range(n), key=functools.cmp_to_key(cmp))
        # walk from the top; coincident points enter together
        bal = 0
        k = n - 1
        while k >= 0:
            j = k
            while j > 0 and cmp(order[j - 1], order[k]) == 0:
                j -= 1
            for t in range(j, k + 1):
                bal += 1 if color[order[t]] == BLUE else -1
            if bal < 0:
                return False
            k = j - 1
    return True


def _coord_key(S: PointSet):
    return lambda i: (S.points[i][0], i)


def radon1d_construct(P: BichromaticSet) -> RadonFractionWitness:
    """One red class between two blue classes, each of size floor(|R|/3)."""
    S = P.base
    if S.dim != 1:
        raise DimensionError("radon1d_construct works on the line")
    R, B = P.red, P.blue
    m = len(R) // 3
    if m == 0:
        raise ValueError("too few red points: need at least 3")
    if not surrounds(P):
        raise ValueError("precondition: blue does not surround red")
    key = _coord_key(S)
    bs = sorted(B, key=key)
    B1, B2 = bs[:m], bs[-m:]
    x1 = S.points[B1[-1]][0]
    x2 = S.points[B2[0]][0]
    between = sorted((i for i in R if x1 <= S.points[i][0] <= x2), key=key)
    if len(between) < m:
        raise AssertionError("counting bound violated: too few red points between the blue classes")
    R1 = between[:m]
    return RadonFractionWitness((tuple(sorted(R1)),), (tuple(sorted(B1)), tuple(sorted(B2))))


def verify_fraction_radon(P: BichromaticSet, w: RadonFractionWitness, c2) -> Verdict:
    """Checks class counts, colours, sizes against c2*|R|, and that every
    transversal's red and blue hulls meet."""
    S = P.base
    d = S.dim
    if d > 2:
        raise DimensionError("verification implemented for d <= 2")
    c2 = Fraction(c2)
    if w.a + w.b != d + 2:
        return Verdict(False, f"a + b = {w.a + w.b}, expected {d + 2}")
    R, B = set(P.red), set(P.blue)
    seen = set()
    for cls, pool, name in [(c, R, "red") for c in w.red_classes] + [(c, B, "blue") for c in w.blue_classes]:
        if not cls:
            return Verdict(False, f"empty {name} class")
        for i in cls:
            if i not in pool:
                return Verdict(False, f"index {i} is not {name}")
            if i in seen:
                return Verdict(False, "classes overlap")
            seen.add(i)
        if len(cls) < c2 * len(R):
            return Verdict(False, f"{name} class of size {len(cls)} below {c2 * len(R)}")
    for t in product(*(w.red_classes + w.blue_classes)):
        reds = [S.points[i] for i in t[:w.a]]
        blues = [S.points[i] for i in t[w.a:]]
        if not hulls_intersect(reds, blues):
            return Verdict(False, f"transversal {t} has disjoint colour hulls")
    return Verdict(True, "ok")


def _families(pool: list, size: int, count: int):
    if count == 0:
        yield []
        return
    for a, first in enumerate(pool):
        after = pool[a + 1:]
        for tail in combinations(after, size - 1):
            rest = [x for x in after if x not in tail]
            for more in _families(rest, size, count - 1):
                yield [(first,) + tail] + more


def fraction_radon_search_small(P: BichromaticSet, size: int, n_cap: int = 10) -> Optional[RadonFractionWitness]:
    """Exhaustive probe for a colour-respecting Radon family with all
    classes of the given size; None when there is none."""
    S = P.base
    if len(S) > n_cap:
        raise CapExceeded(f"fraction_radon_search_small: |P|={len(S)} exceeds cap {n_cap}")
    d = S.dim
    R, B = P.red, P.blue
    if size < 1:
        return None
    c2 = Fraction(size, len(R)) if R else Fraction(0)
    for a in range(1, d + 2):
        b = d + 2 - a
        if a * size > len(R) or b * size > len(B):
            continue
        for reds in _families(R, size, a):
            for blues in _families(B, size, b):
                w = RadonFractionWitness(tuple(reds), tuple(blues))
                if verify_fraction_radon(P, w, c2):
                    return w
    return None


def construct_e2_witness(S: PointSet, q) -> EnclosingWitness:
    """A floor(TD/3)-enclosing witness in the plane, built by projecting
    from q onto a line and running the 1D construction."""
    q = point(q)
    if S.dim != 2:
        raise DimensionError("construct_e2_witness is planar")
    if q in S.points:
        raise ValueError("precondition: query coincides with a data point")
    if not is_general_position_rel(S, q):
        raise ValueError("precondition: query not in general position")
    res = tukey_depth(S, q)
    k = int(res.value)
    if k < 3:
        raise ValueError(f"depth too small: TD = {k} < 3")
    h = res.witness
    vecs = [integer_vector(_sub(p, q)) for p in S.points]
    # minimal side is red; the tangent line sits on the blue side
    N = tuple(-x for x in h.normal)
    u = (-N[1], N[0])
    coords, colors = [], []
    for w in vecs:
        t = _dot(N, w)
        if t == 0:
            raise AssertionError("halfplane witness has a data point on its boundary")
        coords.append((_dot(u, w) / t,))
        colors.append(RED if t < 0 else BLUE)
    if colors.count(RED) != k:
        raise AssertionError("minimal side does not hold exactly TD points")
    proj = BichromaticSet(PointSet.of(coords, colors=colors))
    if not surrounds(proj):
        raise AssertionError("projected blue points fail to surround the red ones")
    rw = radon1d_construct(proj)
    wit = EnclosingWitness((rw.red_classes[0],) + tuple(rw.blue_classes), q)
    if not verify_enclosing_oracle(S, wit):
        raise RuntimeError("construction bug: lifted witness does not enclose q")
    return wit
