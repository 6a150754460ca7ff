"""Depth measures as black boxes, checked against the depth axioms.

Queries default to one sample per arrangement feature of S, so for a
measure that only depends on the order type a "for all q" check is
exhaustive over the queries that matter.
"""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional

from .arrangement import build_arrangement
from .depth import tukey_value, tverberg_depth_exact, simplicial_depth
from .enclosing import enclosing_depth_exact
from .exact import PointSet, _orient2, convex_hull_2d, in_convex_hull, point
from .measures import MEASURES

__all__ = [
    "MeasureOracle", "Instance", "Violation", "AxiomReport", "ORACLES", "AXIOMS",
    "check_sensitivity", "check_locality", "check_nontriviality",
    "check_superadditivity", "check_monotonicity", "check_centrality",
    "inequality_chain_check", "ChainReport", "axiom_matrix", "tvd_hull_value",
]

log = logging.getLogger(__name__)

AXIOMS = {
    "sensitivity": "i",
    "locality": "ii",
    "nontriviality": "iii",
    "superadditivity": "iv",
    "centrality": "iii'",
    "monotonicity": "iv'",
}


@dataclass(frozen=True)
class MeasureOracle:
    id: str
    evaluate: Callable
    n_cap: int = 12
    weighted: bool = False
    region_only: bool = False

    def __call__(self, S: PointSet, q) -> Fraction:
        if len(S) == 0:
            return Fraction(0)
        return Fraction(self.evaluate(S, point(q)))


@functools.lru_cache(maxsize=64)
def _tvd_hull_levels(S: PointSet) -> tuple:
    from .regions import region_dims

    rep = region_dims(S, "tvd", weighted=False)
    feats = rep.arrangement.features
    levels = []
    for v in rep.depth_values:
        pts = [p for f, val in zip(feats, rep.values) if val >= v for p in f.points()]
        verts = [f.sample for f, val in zip(feats, rep.values) if val >= v and f.dim == 0]
        levels.append((v, verts or pts))
    return tuple(levels)


def tvd_hull_value(S: PointSet, q) -> Fraction:
    """Largest alpha with q in the convex hull of the Tverberg region D(alpha)."""
    best = Fraction(0)
    for v, pts in _tvd_hull_levels(S):
        if in_convex_hull(q, pts):
            best = max(best, v)
    return best


ORACLES: dict = {
    "td": MeasureOracle("td", MEASURES["td"], n_cap=10 ** 6),
    "td_weighted": MeasureOracle("td_weighted", MEASURES["td_weighted"], n_cap=10 ** 6, weighted=True),
    "tvd": MeasureOracle("tvd", MEASURES["tvd"]),
    "ed": MeasureOracle("ed", MEASURES["ed"]),
    "sd": MeasureOracle("sd", MEASURES["sd"], n_cap=40),
    "peel": MeasureOracle("peel", MEASURES["peel"], n_cap=200),
    "tvd_hull": MeasureOracle("tvd_hull", tvd_hull_value, n_cap=9, region_only=True),
}


@dataclass(frozen=True)
class Instance:
    id: str
    S: PointSet
    queries: tuple = ()  # extra query points
    extra_points: tuple = ()  # extra candidate points p


@dataclass
class Violation:
    instance: str
    S: PointSet
    q: tuple
    detail: dict

    def reverify(self, m: MeasureOracle, axiom: str) -> bool:
        """Recompute the offending values from the stored data."""
        return _recheck(m, axiom, self)


@dataclass
class AxiomReport:
    axiom: str
    measure: str
    instances: int = 0
    checks: int = 0
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def label(self) -> str:
        return AXIOMS[self.axiom]


def _oracle(m) -> MeasureOracle:
    return m if isinstance(m, MeasureOracle) else ORACLES[m]


def feature_queries(S: PointSet) -> list:
    if len(S) == 0:
        return []
    A = build_arrangement(S)
    return [f.sample for f in A.features]


def _queries(inst: Instance) -> list:
    qs = [point(q) for q in inst.queries]
    for q in feature_queries(inst.S):
        if q not in qs:
            qs.append(q)
    return qs


def _candidates(inst: Instance, p_cap: int) -> list:
    ps = [point(p) for p in inst.extra_points]
    if len(inst.S):
        A = build_arrangement(inst.S)
        for f in A.vertices + A.cells:
            if len(ps) >= p_cap + len(inst.extra_points):
                break
            if f.sample not in ps:
                ps.append(f.sample)
    return ps


def _fits(m: MeasureOracle, S: PointSet) -> bool:
    return len(S) <= m.n_cap


def _add(S: PointSet, p, w) -> PointSet:
    return S.with_point(p, weight=w if S.weighted else None)


def check_sensitivity(m, corpus: Iterable[Instance], p_cap: int = 6, p_weight=1) -> AxiomReport:
    """|rho(S + p, q) - rho(S, q)| <= w(p)."""
    m = _oracle(m)
    rep = AxiomReport("sensitivity", m.id)
    w = Fraction(p_weight)
    for inst in corpus:
        if not _fits(m, inst.S) or len(inst.S) + 1 > m.n_cap:
            continue
        rep.instances += 1
        qs = _queries(inst)
        base = {q: m(inst.S, q) for q in qs}
        for p in _candidates(inst, p_cap):
            S2 = _add(inst.S, p, w)
            bound = w if inst.S.weighted else 1
            for q in qs:
                rep.checks += 1
                v2 = m(S2, q)
                if abs(v2 - base[q]) > bound:
                    rep.violations.append(Violation(inst.id, inst.S, q, {"p": p, "before": base[q], "after": v2, "p_weight": w}))
    return rep


def _outside_queries(S: PointSet) -> list:
    """Points just outside the hull, one per supporting edge."""
    out = []
    if S.dim == 1:
        xs = [p[0] for p in S.points]
        return [(min(xs) - 1,), (max(xs) + 1,)]
    if S.dim == 2:
        hull = convex_hull_2d(S.points)
        if len(hull) == 1:
            p = hull[0]
            return [(p[0] + 1, p[1]), (p[0], p[1] - 1)]
        ring = hull + hull[:1] if len(hull) > 2 else hull
        for a, b in zip(ring, ring[1:]):
            mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
            nrm = (b[1] - a[1], a[0] - b[0])  # outward for a ccw hull
            out.append((mid[0] + nrm[0], mid[1] + nrm[1]))
            if len(hull) == 2:
                out.append((mid[0] - nrm[0], mid[1] - nrm[1]))
    return out


def check_locality(m, corpus: Iterable[Instance]) -> AxiomReport:
    """rho(S, q) = 0 whenever q is outside the closed hull."""
    m = _oracle(m)
    rep = AxiomReport("locality", m.id)
    for inst in corpus:
        if not _fits(m, inst.S):
            continue
        rep.instances += 1
        if len(inst.S) == 0:
            continue
        qs = _queries(inst) + [point(q) for q in _outside_queries(inst.S)]
        for q in qs:
            if in_convex_hull(q, list(inst.S.points)):
                continue
            rep.checks += 1
            v = m(inst.S, q)
            if v != 0:
                rep.violations.append(Violation(inst.id, inst.S, q, {"value": v}))
    return rep


def check_nontriviality(m, corpus: Iterable[Instance]) -> AxiomReport:
    """rho(S, q) >= min weight (1 unweighted) for q in the closed hull.

    Sets with at most d points are skipped: they are too small for an
    enclosing configuration, which needs d+1 points.
    """
    m = _oracle(m)
    rep = AxiomReport("nontriviality", m.id)
    for inst in corpus:
        S = inst.S
        if not _fits(m, S) or len(S) <= S.dim:
            continue
        rep.instances += 1
        floor = min(S.weight_list()) if S.weighted else Fraction(1)
        for q in _queries(inst):
            if not in_convex_hull(q, list(S.points)):
                continue
            rep.checks += 1
            v = m(S, q)
            if v < floor:
                rep.violations.append(Violation(inst.id, S, q, {"value": v, "floor": floor}))
    return rep


def check_superadditivity(m, corpus: Iterable[Instance], subset_cap: int = 10) -> AxiomReport:
    """rho(S1 + S2, q) >= rho(S1, q) + rho(S2, q) over all disjoint pairs
    of nonempty subsets."""
    m = _oracle(m)
    rep = AxiomReport("superadditivity", m.id)
    for inst in corpus:
        S = inst.S
        n = len(S)
        if n > subset_cap or not _fits(m, S):
            continue
        rep.instances += 1
        qs = _queries(inst)
        val = {}
        for mask in range(1, 2 ** n):
            sub = S.subset([i for i in range(n) if mask >> i & 1])
            val[mask] = [m(sub, q) for q in qs]
        full = 2 ** n - 1
        for a in range(1, full + 1):
            rest = full ^ a
            b = rest
            while b:
                if a < b:
                    u = a | b
                    for qi, q in enumerate(qs):
                        rep.checks += 1
                        if val[u][qi] < val[a][qi] + val[b][qi]:
                            I = [i for i in range(n) if a >> i & 1]
                            J = [i for i in range(n) if b >> i & 1]
                            rep.violations.append(Violation(inst.id, S, q, {
                                "S1": I, "S2": J, "rho1": val[a][qi], "rho2": val[b][qi], "rho_union": val[u][qi]}))
                b = (b - 1) & rest
    return rep


def check_monotonicity(m, corpus: Iterable[Instance], p_cap: int = 6, p_weight=1) -> AxiomReport:
    """rho(S + p, q) >= rho(S, q)."""
    m = _oracle(m)
    rep = AxiomReport("monotonicity", m.id)
    w = Fraction(p_weight)
    for inst in corpus:
        if len(inst.S) + 1 > m.n_cap:
            continue
        rep.instances += 1
        qs = _queries(inst)
        base = {q: m(inst.S, q) for q in qs}
        for p in _candidates(inst, p_cap):
            S2 = _add(inst.S, p, w)
            for q in qs:
                rep.checks += 1
                v2 = m(S2, q)
                if v2 < base[q]:
                    rep.violations.append(Violation(inst.id, inst.S, q, {"p": p, "before": base[q], "after": v2}))
    return rep


def check_centrality(m, corpus: Iterable[Instance], alpha=None) -> AxiomReport:
    """Some query reaches rho >= alpha * w(S); alpha defaults to 1/(d+1)."""
    m = _oracle(m)
    rep = AxiomReport("centrality", m.id)
    for inst in corpus:
        S = inst.S
        if not _fits(m, S) or len(S) == 0:
            continue
        rep.instances += 1
        a = Fraction(1, S.dim + 1) if alpha is None else Fraction(alpha)
        target = a * S.total_weight()
        best, best_q = None, None
        for q in _queries(inst):
            rep.checks += 1
            v = m(S, q)
            if best is None or v > best:
                best, best_q = v, q
            if v >= target:
                break
        if best < target:
            rep.violations.append(Violation(inst.id, S, best_q, {"best": best, "target": target}))
        else:
            rep.notes.append((inst.id, best_q, best))
    return rep


_CHECKS = {
    "sensitivity": check_sensitivity,
    "locality": check_locality,
    "nontriviality": check_nontriviality,
    "superadditivity": check_superadditivity,
    "centrality": check_centrality,
    "monotonicity": check_monotonicity,
}


def _recheck(m: MeasureOracle, axiom: str, v: Violation) -> bool:
    d = v.detail
    S, q = v.S, v.q
    if axiom in ("sensitivity", "monotonicity"):
        before = m(S, q)
        after = m(_add(S, d["p"], d.get("p_weight", 1)), q)
        if (before, after) != (d["before"], d["after"]):
            return False
        if axiom == "sensitivity":
            return abs(after - before) > (d["p_weight"] if S.weighted else 1)
        return after < before
    if axiom == "locality":
        return not in_convex_hull(q, list(S.points)) and m(S, q) == d["value"] != 0
    if axiom == "nontriviality":
        return m(S, q) == d["value"] < d["floor"]
    if axiom == "superadditivity":
        r1 = m(S.subset(d["S1"]), q)
        r2 = m(S.subset(d["S2"]), q)
        ru = m(S.subset(sorted(d["S1"] + d["S2"])), q)
        return (r1, r2, ru) == (d["rho1"], d["rho2"], d["rho_union"]) and ru < r1 + r2
    if axiom == "centrality":
        rep = check_centrality(m, [Instance(v.instance, S)], d["target"] / S.total_weight())
        return not rep.passed
    raise ValueError(axiom)


def axiom_matrix(measures: Iterable[str], corpus: list, axioms: Optional[Iterable[str]] = None) -> dict:
    """{measure: {axiom: AxiomReport}} over one shared corpus."""
    axioms = list(axioms or _CHECKS)
    out = {}
    for mid in measures:
        out[mid] = {}
        for ax in axioms:
            out[mid][ax] = _CHECKS[ax](mid, corpus)
    return out


# ------------------------------------------------------------ chain check

@dataclass
class ChainReport:
    td: Fraction
    tvd: Fraction
    ed: Optional[Fraction]
    sd: Fraction
    chain_ok: bool
    ratio: Optional[Fraction]
    reay: Optional[bool]  # None when the identity does not apply
    one_dim_equal: Optional[bool] = None


def _reay_applies(S: PointSet, q) -> bool:
    if S.dim != 2 or q in S.points:
        return False
    pts = list(dict.fromkeys(S.points))
    if len(pts) != len(S.points):
        return False
    pts.append(q)
    return all(_orient2(a, b, c) != 0 for a, b, c in combinations(pts, 3))


def inequality_chain_check(S: PointSet, q) -> ChainReport:
    """ED <= TvD <= TD <= d * TvD, plus the planar identity
    TvD = min(TD, floor(n/3)) where it applies.

    With no three of S + q collinear every class around q needs three
    points, which is why the bound is floor(n/3).
    """
    q = point(q)
    d = S.dim
    td = tukey_value(S, q)
    tvd = tverberg_depth_exact(S, q).value
    ed = enclosing_depth_exact(S, q).value if d <= 2 else None
    sd = simplicial_depth(S, q).value
    ok = tvd <= td <= d * tvd and (ed is None or ed <= tvd)
    ratio = (ed / td) if (ed is not None and td) else None
    reay = None
    if _reay_applies(S, q):
        reay = tvd == min(td, len(S) // 3)
    one = None
    if d == 1 and q not in S.points:
        left = sum(1 for p in S.points if p[0] < q[0])
        one = td == tvd == ed == min(left, len(S) - left)
    return ChainReport(td, tvd, ed, sd, ok, ratio, reay, one)
