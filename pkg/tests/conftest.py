from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from combidepth.exact import PointSet

settings.register_profile(
    "repo", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def rat(lo=-8, hi=8, den=4):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, den))


def points(d, min_size=1, max_size=7, lo=-8, hi=8, den=4):
    return st.lists(st.tuples(*[rat(lo, hi, den)] * d), min_size=min_size, max_size=max_size)


def pointsets(d, **kw):
    return points(d, **kw).map(lambda pts: PointSet.of(pts, dim=d))


def random_set(rng: random.Random, n: int, d: int, num=10, den=3) -> PointSet:
    pts = [tuple(Fraction(rng.randint(-num, num), rng.randint(1, den)) for _ in range(d)) for _ in range(n)]
    return PointSet.of(pts, dim=d)


def random_query(rng: random.Random, d: int, num=10, den=5) -> tuple:
    return tuple(Fraction(rng.randint(-num, num), rng.randint(1, den)) for _ in range(d))


SQUARE = PointSet.of([(0, 0), (2, 0), (0, 2), (2, 2)])
LINE5 = PointSet.of([(0,), (1,), (2,), (3,), (4,)])
TRIANGLE = PointSet.of([(0, 0), (4, 0), (0, 4)])


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE: dict = {}


def record_acceptance(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[num] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
