from __future__ import annotations

from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from combidepth.corpus import (
    FAMILIES, CorpusSpec, ParseError, expand_corpus, fmt, generate, parse,
    parse_corpus_spec, parse_rational, serialize,
)
from combidepth.exact import PointSet, orient

from conftest import rat


def all_specs(count):
    out = []
    k = 0
    while len(out) < count:
        fam = FAMILIES[k % len(FAMILIES)]
        d = 2 if fam == "fig1" else 1 + k % 3
        params = {}
        if k % 5 == 0:
            params["weights"] = "random"
        if k % 7 == 0:
            params["query"] = "centroid"
        if fam == "fig1" and k % 2:
            params["jitter"] = "3"
        out.append(CorpusSpec(fam, n=1 + k % 9, d=d, seed=k, params=params))
        k += 1
    return out


def test_round_trip_100_files():
    for spec in all_specs(100):
        S, q = generate(spec)
        text = serialize(S, q)
        S2, q2 = parse(text)
        assert (S2, q2) == (S, q)
        assert serialize(S2, q2) == text


def test_same_seed_same_bytes():
    for spec in all_specs(20):
        assert serialize(*generate(spec)) == serialize(*generate(spec))


def test_grid_three_by_three():
    S, _ = generate(CorpusSpec("grid", n=9, d=2))
    assert len(S) == 9 and all(x.denominator == 1 for p in S.points for x in p)
    assert len(set(S.points)) == 9


def test_moment_curve_no_three_collinear():
    for seed in range(10):
        S, _ = generate(CorpusSpec("moment_curve", n=5, seed=seed))
        assert all(orient(list(t)) != 0 for t in combinations(S.points, 3))


def test_collinear_family_is_collinear():
    S, _ = generate(CorpusSpec("collinear", n=6, d=2, seed=3))
    assert all(orient(list(t)) == 0 for t in combinations(S.points, 3))


def test_fig1_family():
    S, q = generate(CorpusSpec("fig1"))
    assert q == (0, 0) and S.colors == ("B",) * 3 + ("R",) * 3
    with pytest.raises(ValueError):
        generate(CorpusSpec("fig1", d=1))


def test_invalid_family():
    with pytest.raises(ValueError, match="unknown family"):
        CorpusSpec("spiral")


def test_corpus_spec_text():
    spec, count = parse_corpus_spec("clusters:n=8,d=2,seed=5,count=3,k=4")
    assert (spec.family, spec.n, spec.d, spec.seed, count) == ("clusters", 8, 2, 5, 3)
    assert spec.params == {"k": "4"}
    assert [s.seed for s, _, _ in expand_corpus(spec, count)] == [5, 6, 7]


@given(rat(-1000, 1000, 1000))
def test_fmt_parse_rational(x):
    assert parse_rational(fmt(x)) == x
    assert "e" not in fmt(x) and "." not in fmt(x)


@given(st.lists(st.tuples(rat(), rat()), min_size=0, max_size=6), st.booleans())
def test_round_trip_property(pts, weighted):
    S = PointSet.of(pts, dim=2, weights=[F(i + 1, 3) for i in range(len(pts))] if weighted else None)
    text = serialize(S)
    assert parse(text) == (S, None)


@pytest.mark.parametrize("text,line,col", [
    ("DEPTHSET 1 2 0 0 1\n3/0 1\n", 2, 1),
    ("DEPTHSET 1 2 0 0 1\n1 x\n", 2, 3),
    ("DEPTHSET 1 2 0 0 2\n1 1\n", 1, 18),
    ("DEPTHSET 1 2 0 0 1\n1 1 1\n", 2, 1),
    ("DEPTHSET 1 2 1 0 1\n1 1 -1\n", 2, 5),
    ("DEPTHSET 1 1 0 1 1\n1 G\n", 2, 3),
    ("DEPTHSET 2 1 0 0 0\n", 1, 10),
    ("DEPTHSET 1 4 0 0 0\n", 1, 12),
    ("POINTS 1 1 0 0 0\n", 1, 1),
    ("DEPTHSET 1 1 0 0 1\n1\nquery 1 2\n", 3, 1),
    ("", 1, 1),
])
def test_parse_errors(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert (exc.value.line, exc.value.col) == (line, col)
