"""Enclosing depth: witnesses, their verification, and the structural
facts about enclosing configurations (separation, covering halfplanes,
cone extension)."""
from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations, product

from .depth import CapExceeded, DepthResult, EnclosingWitness, QueryProbe, tukey_value
from .exact import (
    DimensionError, OrientedHalfspace, PointSet, _dot, _sub, angular_order,
    generic_directions, hulls_intersect, in_cone, in_convex_hull, integer_vector,
    is_general_position_rel, lexsign, point, simplex_contains,
)
from .lp import solve_lp

__all__ = [
    "verify_enclosing_oracle", "verify_enclosing_fast", "verify_enclosing_fast_detail",
    "enclosing_depth_exact", "wellseparated_check", "cover_halfplanes",
    "cone_extension_check", "encloses",
]

log = logging.getLogger(__name__)


def _check_shape(S: PointSet, w: EnclosingWitness, equal_sizes: bool = True):
    d = S.dim
    if len(w.classes) != d + 1:
        raise ValueError(f"witness needs {d + 1} classes, got {len(w.classes)}")
    seen = set()
    for c in w.classes:
        if not c:
            raise ValueError("empty class")
        for i in c:
            if not (0 <= i < len(S)):
                raise ValueError(f"index {i} out of range")
            if i in seen:
                raise ValueError(f"index {i} used twice")
            seen.add(i)
    if equal_sizes and len({len(c) for c in w.classes}) != 1:
        raise ValueError("classes differ in size")
    if len(point(w.query)) != d:
        raise DimensionError("query dimension mismatch")


def encloses(point_classes: list, q) -> bool:
    """Every transversal simplex of the given coordinate classes contains q."""
    q = point(q)
    return all(simplex_contains(q, list(t)) for t in product(*point_classes))


def verify_enclosing_oracle(S: PointSet, w: EnclosingWitness) -> bool:
    """Exhaustive check of all k^(d+1) transversals."""
    _check_shape(S, w)
    return encloses([[S.points[i] for i in c] for c in w.classes], w.query)


def _open_halfspace_meets_all(class_vecs: list, dim: int) -> bool:
    allv = [v for c in class_vecs for v in c]
    for chain in generic_directions(allv, dim):
        if all(any(lexsign(chain, v) > 0 for v in c) for c in class_vecs):
            return True
    return False


def verify_enclosing_fast_detail(S: PointSet, w: EnclosingWitness) -> tuple:
    """Returns ``(result, used_fallback)``.

    With q in general position relative to the witness points, the classes
    enclose q exactly when no open halfspace through q meets every class.
    Open halfspaces are taken one per cell of directions, which covers all
    of them up to perturbation.
    """
    _check_shape(S, w)
    q = point(w.query)
    union = S.subset(w.indices())
    if not is_general_position_rel(union, q):
        log.info("verify_enclosing_fast: query not in general position, using oracle")
        return verify_enclosing_oracle(S, w), True
    class_vecs = [[integer_vector(_sub(S.points[i], q)) for i in c] for c in w.classes]
    return (not _open_halfspace_meets_all(class_vecs, S.dim)), False


def verify_enclosing_fast(S: PointSet, w: EnclosingWitness) -> bool:
    return verify_enclosing_fast_detail(S, w)[0]


# ------------------------------------------------------------ exact search

def _assignments(indices: list, k: int, m: int):
    if m == 0:
        yield []
        return
    for a, first in enumerate(indices):
        after = indices[a + 1:]
        for tail in combinations(after, k - 1):
            rest = [x for x in after if x not in tail]
            for more in _assignments(rest, k, m - 1):
                yield [(first,) + tail] + more


def _search_unrestricted(S, q, k, probe):
    d = S.dim
    for classes in _assignments(list(range(len(S))), k, d + 1):
        if all(probe.contains(tuple(sorted(t))) for t in product(*classes)):
            return classes
    return None


def _search_arcs(S, q, k, order_pos, vecs):
    """Candidates whose classes are consecutive runs in the angular order.

    In a planar enclosing configuration with q in general position, each
    class is cut out of the witness by a halfplane through q, so it is an
    angular run; this is checked against brute force in the tests.
    """
    n = len(S)
    for U in combinations(range(n), 3 * k):
        seq = sorted(U, key=lambda i: order_pos[i])
        for off in range(k):
            rot = seq[off:] + seq[:off]
            classes = [tuple(sorted(rot[j * k:(j + 1) * k])) for j in range(3)]
            cv = [[vecs[i] for i in c] for c in classes]
            if not _open_halfspace_meets_all(cv, 2):
                return sorted(classes)
    return None


def enclosing_depth_exact(S: PointSet, q, n_cap: int = 12, restricted: bool = True) -> DepthResult:
    """Largest k such that some d+1 disjoint k-subsets of S enclose q.

    Searches k downward from min(|S|/(d+1), TD). In the plane with q in
    general position only angular-run assignments are tried unless
    ``restricted`` is False.
    """
    q = point(q)
    n = len(S)
    d = S.dim
    if d > 2:
        raise DimensionError("exact enclosing depth implemented for d <= 2")
    if n > n_cap:
        raise CapExceeded(f"enclosing_depth_exact: |S|={n} exceeds cap {n_cap}; "
                          "use construct_e2_witness for a constructive lower bound")
    top = min(n // (d + 1), int(tukey_value(S, q)))
    use_arcs = restricted and d == 2 and is_general_position_rel(S, q)
    probe = QueryProbe(S, q)
    if use_arcs:
        order_pos = {}
        for pos, grp in enumerate(angular_order(S, q)):
            for i in grp:
                order_pos[i] = pos
        vecs = [integer_vector(_sub(p, q)) for p in S.points]
    for k in range(top, 0, -1):
        if use_arcs:
            classes = _search_arcs(S, q, k, order_pos, vecs)
        else:
            classes = _search_unrestricted(S, q, k, probe)
        if classes is not None:
            wit = EnclosingWitness(tuple(tuple(c) for c in classes), q)
            if not verify_enclosing_oracle(S, wit):
                raise AssertionError("enclosing witness failed verification")
            return DepthResult(Fraction(k), wit, True, {"restricted": use_arcs})
    return DepthResult(Fraction(0), None, True, {"restricted": use_arcs})


# ------------------------------------------------------- structural checks

def wellseparated_check(classes: list, S: PointSet) -> bool:
    """True iff no hyperplane meets the hulls of all d+1 classes.

    For d+1 convex sets in R^d that is the same as: every split of the
    classes into two groups has disjoint hulls, which is decided exactly
    by linear feasibility.
    """
    d = S.dim
    if d > 2:
        raise DimensionError("well-separation check implemented for d <= 2")
    if len(classes) != d + 1:
        raise ValueError(f"expected {d + 1} classes")
    if any(not c for c in classes):
        raise ValueError("empty class")
    m = len(classes)
    for mask in range(1, 2 ** (m - 1)):
        # class m-1 always on the right so each split is tried once
        left = [S.points[i] for j in range(m) if mask >> j & 1 for i in classes[j]]
        right = [S.points[i] for j in range(m) if not mask >> j & 1 for i in classes[j]]
        if hulls_intersect(left, right):
            return False
    return True


def _cover_lp(class_vecs: list, all_vecs: list, J: tuple):
    """Normals m_i with m_i.v >= 1 on class i, <= -1 on the other witness
    vectors, and sum over J equal to zero."""
    m = len(class_vecs)
    nv = 4 * m
    rows, rhs = [], []
    slack = 0
    specs = []
    for i, cv in enumerate(class_vecs):
        mine = set(cv)
        for v in all_vecs:
            specs.append((i, v, 1 if v in mine else -1))
    nvars = nv + len(specs)
    for i, v, s in specs:
        row = [0] * nvars
        for c in range(2):
            row[4 * i + c] = v[c]
            row[4 * i + 2 + c] = -v[c]
        row[nv + slack] = -1  # s * (m.v) - slack = 1
        row = [s * x if j < nv else x for j, x in enumerate(row)]
        rows.append(row)
        rhs.append(1)
        slack += 1
    for c in range(2):
        row = [0] * nvars
        for i in J:
            row[4 * i + c] = 1
            row[4 * i + 2 + c] = -1
        rows.append(row)
        rhs.append(0)
    res = solve_lp(rows, rhs)
    if res.status != "optimal":
        return None
    x = res.x
    return [tuple(x[4 * i + c] - x[4 * i + 2 + c] for c in range(2)) for i in range(m)]


def cover_halfplanes(w: EnclosingWitness, S: PointSet) -> list:
    """Three closed halfplanes through q, the i-th holding exactly class i
    among the witness points, whose union is the whole plane."""
    if S.dim != 2:
        raise DimensionError("cover_halfplanes is planar")
    _check_shape(S, w)
    q = point(w.query)
    if not is_general_position_rel(S.subset(w.indices()), q):
        raise ValueError("precondition: query not in general position relative to the witness")
    if not verify_enclosing_oracle(S, w):
        raise ValueError("precondition: witness does not enclose the query")
    class_vecs = [[integer_vector(_sub(S.points[i], q)) for i in c] for c in w.classes]
    all_vecs = [v for c in class_vecs for v in c]
    for J in [(0, 1, 2), (0, 1), (0, 2), (1, 2)]:
        normals = _cover_lp(class_vecs, all_vecs, J)
        if normals is None:
            continue
        hs = [OrientedHalfspace(nm, _dot(nm, q), True) for nm in normals]
        if _cover_ok(hs, w, S, q):
            return hs
    raise RuntimeError("construction failed: no covering halfplanes found")


def _cover_ok(hs, w, S, q) -> bool:
    for j, h in enumerate(hs):
        if h.value(q) != h.offset:
            return False
        for i, c in enumerate(w.classes):
            for idx in c:
                if h.contains(S.points[idx]) != (i == j):
                    return False
    zero = tuple(Fraction(0) for _ in range(S.dim))
    return in_convex_hull(zero, [h.normal for h in hs], method="lp")


def cone_extension_check(w: EnclosingWitness, S: PointSet, p, i: int) -> bool:
    """Adds ``p`` to class ``i`` and re-verifies by brute force.

    When p lies in the cone from q spanned by class i, the extended
    classes must still enclose q; a failure there raises.
    """
    _check_shape(S, w)
    p = point(p)
    q = point(w.query)
    cls = [[S.points[j] for j in c] for c in w.classes]
    in_c = in_cone(q, cls[i], p)
    cls[i] = cls[i] + [p]
    ok = encloses(cls, q)
    if in_c and not ok and is_general_position_rel(S.subset(w.indices()), q) \
            and verify_enclosing_oracle(S, w):
        raise AssertionError("cone extension lost enclosure")
    return ok
