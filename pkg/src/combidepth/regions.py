"""Depth regions, their dimensions, cascade sums and integrals, survival
times and median-region partitions."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .arrangement import Arrangement, Feature, build_arrangement, line_through
from .depth import CapExceeded, tukey_value
from .exact import (
    DimensionError, PointSet, _independent_subset, _rank, _sub, common_point,
    convex_hull_2d, in_convex_hull, point,
)
from .measures import get_measure

__all__ = [
    "RegionReport", "MedianRegion", "SurvivalProfile", "MedianPartition",
    "region_dims", "cascade_sum", "cascade_integral", "survival_times",
    "check_integral_lemma", "median_region", "check_median_convex",
    "find_median_partition", "evaluate_features",
]

log = logging.getLogger(__name__)


@dataclass
class MedianRegion:
    value: Fraction
    dim: int
    vertices: list  # hull polygon (2D, ccw) or endpoints (1D)
    features: list = field(default_factory=list, repr=False)


@dataclass
class RegionReport:
    measure: str
    depth_values: list  # achievable positive values, increasing
    grid: list  # the alpha values t is reported at
    dims: dict  # alpha -> t_alpha
    cascade_sum: Optional[int]
    cascade_integral: Fraction
    median_value: Fraction
    median_region: MedianRegion
    total: Fraction
    arrangement: Arrangement = field(repr=False, default=None)
    values: list = field(repr=False, default_factory=list)  # per feature


def _name(measure) -> str:
    return measure if isinstance(measure, str) else getattr(measure, "__name__", "custom")


def evaluate_features(S: PointSet, measure, arrangement: Optional[Arrangement] = None) -> tuple:
    """(arrangement, [value per feature]) with the measure read at each sample."""
    A = arrangement or build_arrangement(S)
    m = get_measure(measure)
    vals = []
    for f in A.features:
        try:
            vals.append(Fraction(m(S, f.sample)))
        except CapExceeded as exc:
            raise CapExceeded(f"{exc} (at {f.dim}-dimensional feature sampled at "
                              f"{tuple(str(x) for x in f.sample)})") from exc
    return A, vals


def _t(features, vals, alpha) -> int:
    return max((f.dim for f, v in zip(features, vals) if v >= alpha), default=-1)


def _integral(features, vals, total) -> Fraction:
    """Exact integral of t_alpha over (0, total]."""
    brk = sorted({v for v in vals if 0 < v < total} | {total})
    out = Fraction(0)
    prev = Fraction(0)
    for b in brk:
        if b <= 0:
            continue
        out += (b - prev) * _t(features, vals, b)
        prev = b
    return out


def _median(A, vals) -> MedianRegion:
    feats = A.features
    top = max(vals, default=Fraction(0))
    chosen = [f for f, v in zip(feats, vals) if v >= top]
    dim = max((f.dim for f in chosen), default=-1)
    if A.dim == 1:
        xs = sorted(p for f in chosen for p in ([f.sample] if f.dim == 0 else list(f.ends)))
        verts = [xs[0], xs[-1]] if xs and xs[0] != xs[-1] else xs[:1]
    else:
        corners = [f.sample for f in chosen if f.dim == 0]
        if not corners:
            corners = [p for f in chosen for p in f.points()]
        verts = convex_hull_2d(corners)
    return MedianRegion(top, dim, verts, chosen)


def region_dims(S: PointSet, measure="td", weighted: Optional[bool] = None,
                arrangement: Optional[Arrangement] = None) -> RegionReport:
    """Dimension of every depth region, read off the arrangement features.

    Integer measures use the grid 1..|S|; weighted ones use the achievable
    values. ``weighted`` defaults to whether S carries weights.
    """
    if S.dim > 2:
        raise DimensionError("depth regions implemented for d <= 2")
    if len(S) == 0:
        raise ValueError("empty point set")
    if weighted is None:
        weighted = S.weighted
    A, vals = evaluate_features(S, measure, arrangement)
    feats = A.features
    achieved = sorted({v for v in vals if v > 0})
    total = S.total_weight() if weighted else Fraction(len(S))
    grid = achieved if weighted else [Fraction(i) for i in range(1, len(S) + 1)]
    dims = {a: _t(feats, vals, a) for a in grid}
    csum = None if weighted else sum(dims.values())
    integral = _integral(feats, vals, total)
    med = _median(A, vals)
    return RegionReport(_name(measure), achieved, grid, dims, csum, integral,
                        med.value, med, total, A, vals)


def cascade_sum(S: PointSet, measure="td") -> tuple:
    """(sum of t_i over i = 1..|S|, whether it is >= 0)."""
    rep = region_dims(S, measure, weighted=False)
    return rep.cascade_sum, rep.cascade_sum >= 0


def cascade_integral(S: PointSet, measure="td_weighted") -> Fraction:
    """Integral of t_alpha over [0, w(S)]."""
    return region_dims(S, measure, weighted=True).cascade_integral


def median_region(S: PointSet, measure="td") -> MedianRegion:
    if len(S) == 0:
        raise ValueError("median region of an empty set")
    return region_dims(S, measure).median_region


def check_median_convex(S: PointSet, measure="td", report: Optional[RegionReport] = None) -> bool:
    """The deepest region equals the hull of its vertices.

    The arrangement is refined by the hull's edge lines so every refined
    feature is either inside or outside the hull; both inclusions are
    then checked feature by feature.
    """
    rep = report or region_dims(S, measure)
    med = rep.median_region
    alpha = med.value
    m = get_measure(measure)
    if S.dim == 1:
        idx = [i for i, (f, v) in enumerate(sorted(zip(rep.arrangement.features, rep.values),
                                                   key=lambda fv: fv[0].sample)) if v >= alpha]
        return idx == list(range(idx[0], idx[-1] + 1))
    P = med.vertices
    extra = []
    if len(P) >= 2:
        ring = P if len(P) == 2 else P + P[:1]
        for a, b in zip(ring, ring[1:]):
            extra.append(line_through(a, b))
    A = build_arrangement(S, extra_lines=extra)
    for f in A.features:
        inside = in_convex_hull(f.sample, P)
        deep = m(S, f.sample) >= alpha
        if inside != deep:
            return False
    return True


# ------------------------------------------------------------ survival times

@dataclass
class SurvivalProfile:
    reference_point: tuple
    basis: list  # f_1..f_d; f_0 is the zero vector
    taus: list  # tau(f_0), ..., tau(f_d)
    breakpoints: list
    spans: list = field(repr=False, default_factory=list)  # basis of each span, per breakpoint


def _in_span(v, span) -> bool:
    return _rank(span + [v]) == len(span)


def _tau(v, bps, spans) -> Fraction:
    best = Fraction(0)
    for b, sp in zip(bps, spans):
        if _in_span(v, sp) and b > best:
            best = b
    return best


def _region_spans(rep: RegionReport, o) -> tuple:
    feats = rep.arrangement.features
    bps = rep.depth_values
    spans = []
    for b in bps:
        vecs = [_sub(p, o) for f, v in zip(feats, rep.values) if v >= b for p in f.points()]
        spans.append(_independent_subset([w for w in vecs if any(w)]))
    return bps, spans


def survival_times(S: PointSet, measure="td_weighted", report: Optional[RegionReport] = None) -> SurvivalProfile:
    """Survival times of a basis adapted to the nested spans of the regions,
    with the origin moved to the vertex centroid of the median region."""
    rep = report or region_dims(S, measure, weighted=True)
    d = S.dim
    verts = [f.sample for f in rep.median_region.features if f.dim == 0] or \
        [p for f in rep.median_region.features for p in f.points()]
    o = tuple(sum((p[i] for p in verts), Fraction(0)) / len(verts) for i in range(d))
    bps, spans = _region_spans(rep, o)
    basis = []
    for sp in reversed(spans):
        for v in sp:
            if len(basis) < d and not _in_span(v, basis):
                basis.append(v)
    for i in range(d):
        e = tuple(Fraction(int(i == j)) for j in range(d))
        if len(basis) < d and not _in_span(e, basis):
            basis.append(e)
    zero = tuple(Fraction(0) for _ in range(d))
    taus = [_tau(f, bps, spans) for f in [zero] + basis]
    return SurvivalProfile(o, basis, taus, bps, spans)


def check_integral_lemma(S: PointSet, n_random: int = 20, seed: int = 0) -> bool:
    """Integral of t_alpha equals sum(tau) - w(S) for the adapted basis and
    is at least that for random bases."""
    if not S.weighted:
        S = S.with_weights([1] * len(S))
    rep = region_dims(S, "td_weighted", weighted=True)
    prof = survival_times(S, report=rep)
    lhs = rep.cascade_integral
    w = S.total_weight()
    if lhs != sum(prof.taus) - w:
        return False
    rng = random.Random(seed)
    d = S.dim
    zero = tuple(Fraction(0) for _ in range(d))
    done = 0
    while done < n_random:
        B = [tuple(Fraction(rng.randint(-5, 5)) for _ in range(d)) for _ in range(d)]
        if _rank(B) < d:
            continue
        done += 1
        rhs = sum(_tau(f, prof.breakpoints, prof.spans) for f in [zero] + B) - w
        if lhs < rhs:
            return False
    return True


# ------------------------------------------------------ median partitions

@dataclass
class MedianPartition:
    found: bool
    parts: tuple = ()  # two PointSets
    indices: tuple = ()  # index lists into S (a split point appears in both)
    point: Optional[tuple] = None
    split: Optional[tuple] = None  # (index, lambda) for a fractional split
    tried: int = 0
    message: str = ""


def _median_polygon(P: PointSet) -> tuple:
    rep = region_dims(P, "td_weighted" if P.weighted else "td")
    return rep.median_value, rep.median_region.vertices


def _try_pair(P1, P2):
    a1, V1 = _median_polygon(P1)
    a2, V2 = _median_polygon(P2)
    x = common_point(V1, V2)
    if x is None:
        return None
    w1 = P1.weighted
    w2 = P2.weighted
    if tukey_value(P1, x, weighted=w1) != a1 or tukey_value(P2, x, weighted=w2) != a2:
        raise AssertionError("common point is not in both median regions")
    return x


def find_median_partition(S: PointSet, allow_fractional: bool = False) -> MedianPartition:
    """First split of S into two parts whose Tukey median regions meet.

    Integral splits come first (subset masks in increasing order), then,
    if allowed, splits where one point's unit weight is shared as
    (lam, 1 - lam) on the 1/8 grid. A miss is reported, never asserted.
    """
    n = len(S)
    d = S.dim
    if d > 2:
        raise DimensionError("median partitions searched for d <= 2")
    if n < d + 2:
        raise ValueError(f"need at least {d + 2} points")
    tried = 0
    for mask in range(1, 2 ** n - 1):
        if not mask & 1:
            continue
        I = [i for i in range(n) if mask >> i & 1]
        J = [i for i in range(n) if not mask >> i & 1]
        tried += 1
        x = _try_pair(S.subset(I), S.subset(J))
        if x is not None:
            return MedianPartition(True, (S.subset(I), S.subset(J)), (I, J), x, None, tried)
    if allow_fractional:
        base = S.weight_list()
        for i in range(n):
            rest = [j for j in range(n) if j != i]
            for lam in (Fraction(k, 8) for k in range(1, 8)):
                for r in range(0, len(rest) + 1):
                    for A in combinations(rest, r):
                        B = [j for j in rest if j not in A]
                        I = sorted(list(A) + [i])
                        J = sorted(B + [i])
                        P1 = S.subset(I).with_weights([base[j] * (lam if j == i else 1) for j in I])
                        P2 = S.subset(J).with_weights([base[j] * (1 - lam if j == i else 1) for j in J])
                        tried += 1
                        x = _try_pair(P1, P2)
                        if x is not None:
                            return MedianPartition(True, (P1, P2), (I, J), x, (i, lam), tried)
    msg = f"no median-intersecting split among {tried} candidates"
    log.info(msg)
    return MedianPartition(False, tried=tried, message=msg)
