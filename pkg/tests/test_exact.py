from __future__ import annotations

import random
from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from combidepth.exact import (
    DimensionError, OrientedHalfspace, PointSet, affine_rank, angular_order,
    candidate_halfspaces_through, convex_hull_2d, halfspace_count, hulls_intersect,
    in_convex_hull, is_general_position_rel, orient, point, simplex_contains, to_fraction,
)
from combidepth.lp import solve_lp
from combidepth.oracles import tukey_direction_scan

from conftest import LINE5, SQUARE, points, random_query, random_set, rat


# --- orient

def test_orient_unit_simplex():
    assert orient([(0, 0), (1, 0), (0, 1)]) == 1


def test_orient_collinear():
    assert orient([(0, 0), (1, 1), (2, 2)]) == 0


def test_orient_increasing_pair():
    assert orient([(0,), (1,)]) == 1


def test_orient_rejects_wrong_count():
    with pytest.raises(DimensionError):
        orient([(0, 0), (1, 0)])


@given(st.tuples(*[st.tuples(rat(), rat())] * 3))
def test_orient_swap_flips_sign(tri):
    a, b, c = tri
    assert orient([a, b, c]) == -orient([b, a, c])
    assert orient([a, b, c]) == orient([b, c, a])


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    assert point("1/3", 2) == (F(1, 3), F(2))


# --- simplex containment

def test_simplex_interior():
    assert simplex_contains((1, 1), [(0, 0), (4, 0), (0, 4)])


def test_simplex_outside():
    assert not simplex_contains((5, 5), [(0, 0), (4, 0), (0, 4)])


def test_segment_midpoint():
    assert simplex_contains((2, 2), [(0, 0), (4, 4)])


def test_simplex_boundary_is_closed():
    assert simplex_contains((2, 2), [(0, 0), (4, 0), (0, 4)])
    assert simplex_contains((0, 0), [(0, 0), (4, 0), (0, 4)])


@given(st.tuples(*[st.tuples(rat(), rat())] * 3), st.tuples(rat(), rat()))
def test_simplex_matches_lp(tri, q):
    assert simplex_contains(q, list(tri)) == in_convex_hull(q, list(tri), method="lp")


# --- hull membership

def test_hull_center_of_square():
    assert in_convex_hull((1, 1), SQUARE.points)


def test_hull_beyond_square():
    assert not in_convex_hull((3, 0), SQUARE.points)


def test_hull_boundary_closed():
    assert in_convex_hull((2, 1), SQUARE.points)


def test_hull_empty_is_empty():
    assert not in_convex_hull((0, 0), [])


def test_caratheodory_matches_lp_500():
    rng = random.Random(7)
    for t in range(500):
        d = 1 + t % 2
        S = random_set(rng, rng.randint(1, 7), d, num=6, den=2)
        q = random_query(rng, d, num=6, den=2)
        assert in_convex_hull(q, S.points, method="caratheodory") == in_convex_hull(q, S.points, method="lp")


@given(points(2, max_size=5), points(2, max_size=5))
def test_hulls_intersect_symmetric(A, B):
    assert hulls_intersect(A, B) == hulls_intersect(B, A)
    if set(A) & set(B):
        assert hulls_intersect(A, B)


# --- halfspace counting

def test_count_closed_halfline():
    h = OrientedHalfspace((-1,), -1, True)  # -x >= -1, i.e. x <= 1
    assert halfspace_count(LINE5, h) == 2


def test_count_open_halfline_empty():
    h = OrientedHalfspace((1,), 4, False)
    assert halfspace_count(LINE5, h) == 0


def test_count_weighted():
    S = PointSet.of([(0,), (1,)], weights=[F(1, 2), F(3, 2)])
    assert halfspace_count(S, OrientedHalfspace((1,), 0, True)) == 2


def test_halfspace_normalisation_keeps_meaning():
    h = OrientedHalfspace((3, -6), 9)
    assert h.contains((3, 0)) and not h.contains((0, 0))
    assert h.normal == (1, -2)


# --- candidate halfspaces

def test_candidates_1d_are_the_four_halflines():
    hs = candidate_halfspaces_through((F(3, 2),), LINE5)
    kinds = {(h.normal, h.offset, h.boundary_included) for h in hs}
    assert kinds == {((F(1),), F(3, 2), True), ((F(1),), F(3, 2), False),
                     ((F(-1),), F(-3, 2), True), ((F(-1),), F(-3, 2), False)}


def _distinct_traces(S, q, hs):
    return {tuple(h.contains(p) for p in S.points) for h in hs}


def test_candidates_general_position_count():
    # 4n halfplane types through q: a line through each point, two sides,
    # each point in or out. Equivalently 2n distinct closed traces.
    rng = random.Random(3)
    for _ in range(20):
        S = random_set(rng, rng.randint(2, 7), 2)
        q = random_query(rng, 2)
        if not is_general_position_rel(S, q):
            continue
        hs = candidate_halfspaces_through(q, S)
        n = len(S)
        assert len(_distinct_traces(S, q, hs)) == 2 * n
        for h in hs:
            assert h.value(point(q)) == h.offset
            assert all(h.value(p) != h.offset for p in S.points)


def test_candidates_square_min_is_two():
    hs = candidate_halfspaces_through((1, 1), SQUARE)
    assert min(halfspace_count(SQUARE, h) for h in hs) == 2
    assert tukey_direction_scan(SQUARE, (1, 1), n_directions=5000) == 2


@given(points(2, min_size=1, max_size=6), st.tuples(rat(), rat()))
def test_candidates_never_beat_direction_scan(pts, q):
    S = PointSet.of(pts)
    hs = candidate_halfspaces_through(q, S)
    best = min(halfspace_count(S, h) for h in hs)
    # every candidate is a genuine closed halfplane through q
    assert best <= tukey_direction_scan(S, q, n_directions=300)
    for h in hs:
        assert h.boundary_included and h.value(point(q)) == h.offset


# --- general position

def test_gp_collinear_pair():
    assert not is_general_position_rel(PointSet.of([(0, 0), (2, 0)]), (1, 0))


def test_gp_on_spanned_line():
    assert not is_general_position_rel(PointSet.of([(0, 0), (2, 0), (0, 2)]), (1, 1))


def test_gp_1d():
    assert is_general_position_rel(PointSet.of([(0,), (1,)]), (F(1, 2),))


# --- angular order

def test_angular_quadrants():
    S = PointSet.of([(1, 0), (0, 1), (-1, 0)])
    assert angular_order(S, (0, 0)) == [[0], [1], [2]]


def test_angular_tie_group():
    assert angular_order(PointSet.of([(1, 0), (2, 0)]), (0, 0)) == [[0, 1]]


def test_angular_coincident_error():
    with pytest.raises(ValueError, match="coincident point"):
        angular_order(PointSet.of([(1, 1)]), (1, 1))


def test_angular_order_invariant_under_input_order():
    rng = random.Random(1)
    for _ in range(30):
        S = random_set(rng, 6, 2)
        q = random_query(rng, 2)
        if q in S.points:
            continue
        base = [[S.points[i] for i in g] for g in angular_order(S, q)]
        perm = list(range(len(S)))
        rng.shuffle(perm)
        T = S.subset(perm)
        other = [[T.points[i] for i in g] for g in angular_order(T, q)]
        assert [sorted(g) for g in base] == [sorted(g) for g in other]


# --- misc

def test_affine_rank():
    assert affine_rank([(0, 0), (1, 1), (2, 2)]) == 1
    assert affine_rank([(0, 0), (1, 0), (0, 1)]) == 2
    assert affine_rank([(3, 3)]) == 0


def test_convex_hull_2d_square():
    hull = convex_hull_2d(list(SQUARE.points) + [(1, 1)])
    assert sorted(hull) == sorted(point(p) for p in SQUARE.points)


def test_lp_feasible_and_infeasible():
    # maximise x1 + x2 with x1 + 2 x2 = 4, x >= 0: optimum 4 at (4, 0)
    res = solve_lp([[1, 2]], [4], c=[1, 1])
    assert res.status == "optimal" and res.value == 4 and res.x == [4, 0]
    assert solve_lp([[1, 1]], [-1]).status == "infeasible"
    assert solve_lp([[1, -1]], [0], c=[1, 0]).status == "unbounded"


def test_pointset_rejects_negative_weights():
    with pytest.raises(ValueError):
        PointSet.of([(0,)], weights=[-1])


def _cyclic_equal(a, b):
    if len(a) != len(b):
        return False
    return any(a == b[k:] + b[:k] for k in range(len(b)))


def test_angular_order_scaling_and_reflections():
    rng = random.Random(5)
    for _ in range(40):
        S = random_set(rng, 6, 2)
        q = point(random_query(rng, 2))
        if q in S.points:
            continue
        base = [sorted(g) for g in angular_order(S, q)]
        lam = F(rng.randint(1, 9), rng.randint(1, 9))
        scaled = PointSet.of([tuple(qi + lam * (pi - qi) for pi, qi in zip(p, q)) for p in S.points])
        assert [sorted(g) for g in angular_order(scaled, q)] == base
        # reflecting through q is a half turn: same cyclic order
        flipped = PointSet.of([tuple(2 * qi - pi for pi, qi in zip(p, q)) for p in S.points])
        assert _cyclic_equal([sorted(g) for g in angular_order(flipped, q)], base)
        # mirroring across the horizontal line through q reverses it
        mirrored = PointSet.of([(p[0], 2 * q[1] - p[1]) for p in S.points])
        assert _cyclic_equal([sorted(g) for g in angular_order(mirrored, q)], base[::-1])
