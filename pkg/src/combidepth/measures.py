"""Named depth measures with a uniform ``(S, q) -> Fraction`` signature."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .depth import peeling_depth, simplicial_depth, tukey_value, tverberg_depth_exact
from .enclosing import enclosing_depth_exact

__all__ = ["MEASURES", "get_measure", "integral_measure"]


def _td(S, q):
    return tukey_value(S, q)


def _td_weighted(S, q):
    return tukey_value(S, q, weighted=S.weighted)


def _tvd(S, q):
    return tverberg_depth_exact(S, q).value


def _ed(S, q):
    return enclosing_depth_exact(S, q).value


def _sd(S, q):
    return simplicial_depth(S, q).value


def _peel(S, q):
    return peeling_depth(S, q).value


MEASURES: dict = {
    "td": _td,
    "td_weighted": _td_weighted,
    "tvd": _tvd,
    "ed": _ed,
    "sd": _sd,
    "peel": _peel,
}


def get_measure(m) -> Callable:
    if callable(m):
        return m
    try:
        return MEASURES[m]
    except KeyError:
        raise ValueError(f"unknown measure {m!r}; choose from {sorted(MEASURES)}") from None


def integral_measure(m) -> bool:
    return m != "td_weighted"
