"""Seeded instance families and the plain-text instance format.

Format (LF line endings, rationals written ``a`` or ``a/b`` reduced)::

    DEPTHSET 1 <dim> <weighted 0|1> <colors 0|1> <count>
    <x> [<y> [<z>]] [<weight>] [R|B]
    ...
    query <x> [<y> [<z>]]        (optional)
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import BLUE, RED, PointSet, point

__all__ = [
    "CorpusSpec", "ParseError", "generate", "parse", "serialize", "fmt",
    "parse_rational", "parse_corpus_spec", "expand_corpus", "FAMILIES",
    "FIG1_BLUE", "FIG1_RED",
]

FAMILIES = ("random_rational", "grid", "moment_curve", "collinear", "clusters", "fig1")

# Two triangles around the origin, each enclosing it once; their union
# still has enclosing depth 1. The blue one sits one unit left of the
# symmetric picture so that no line through the origin hits two points.
FIG1_BLUE = ((-5, -1), (3, -1), (-1, 5))
FIG1_RED = ((-4, 1), (4, 1), (0, -5))

_RAT = re.compile(r"-?\d+(?:/\d+)?\Z")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(tok: str) -> Fraction:
    if not _RAT.match(tok):
        raise ValueError(f"bad rational {tok!r}")
    if "/" in tok:
        a, b = tok.split("/")
        if int(b) == 0:
            raise ValueError(f"zero denominator in {tok!r}")
        return Fraction(int(a), int(b))
    return Fraction(int(tok))


def serialize(S: PointSet, query=None) -> str:
    lines = [f"DEPTHSET 1 {S.dim} {int(S.weighted)} {int(S.colors is not None)} {len(S)}"]
    for i, p in enumerate(S.points):
        toks = [fmt(x) for x in p]
        if S.weighted:
            toks.append(fmt(S.weights[i]))
        if S.colors is not None:
            toks.append(S.colors[i])
        lines.append(" ".join(toks))
    if query is not None:
        lines.append("query " + " ".join(fmt(x) for x in point(query)))
    return "\n".join(lines) + "\n"


def _tokens(line: str):
    for m in re.finditer(r"\S+", line):
        yield m.start() + 1, m.group()


def parse(text: str) -> tuple:
    """(PointSet, query or None) from instance text; ParseError on bad input."""
    rows = text.split("\n")
    if rows and rows[-1] == "":
        rows.pop()
    if not rows:
        raise ParseError("empty input", 1, 1)
    head = list(_tokens(rows[0]))
    if len(head) != 6 or head[0][1] != "DEPTHSET":
        raise ParseError("expected header 'DEPTHSET 1 <dim> <weighted> <colors> <count>'", 1, 1)
    vals = []
    for col, tok in head[1:]:
        if not tok.isdigit():
            raise ParseError(f"expected a non-negative integer, got {tok!r}", 1, col)
        vals.append(int(tok))
    version, dim, weighted, colored, count = vals
    if version != 1:
        raise ParseError(f"unsupported format version {version}", 1, head[1][0])
    if not 1 <= dim <= 3:
        raise ParseError(f"dimension {dim} not in 1..3", 1, head[2][0])
    if weighted > 1 or colored > 1:
        raise ParseError("flags must be 0 or 1", 1, head[3][0])
    pts, wts, cols = [], [], []
    query = None
    width = dim + weighted + colored
    for ln in range(2, len(rows) + 1):
        toks = list(_tokens(rows[ln - 1]))
        if not toks:
            raise ParseError("blank line", ln, 1)
        if toks[0][1] == "query":
            if query is not None:
                raise ParseError("second query line", ln, 1)
            if len(toks) != dim + 1:
                raise ParseError(f"query needs {dim} coordinates", ln, toks[0][0])
            query = tuple(_rat(t, ln, c) for c, t in toks[1:])
            continue
        if query is not None:
            raise ParseError("points after the query line", ln, 1)
        if len(toks) != width:
            raise ParseError(f"expected {width} fields, got {len(toks)}", ln, toks[0][0])
        pts.append(tuple(_rat(t, ln, c) for c, t in toks[:dim]))
        k = dim
        if weighted:
            c, t = toks[k]
            w = _rat(t, ln, c)
            if w < 0:
                raise ParseError("negative weight", ln, c)
            wts.append(w)
            k += 1
        if colored:
            c, t = toks[k]
            if t not in (RED, BLUE):
                raise ParseError(f"colour must be R or B, got {t!r}", ln, c)
            cols.append(t)
    if len(pts) != count:
        raise ParseError(f"header promises {count} points, found {len(pts)}", 1, head[5][0])
    S = PointSet(tuple(pts), dim, tuple(wts) if weighted else None, tuple(cols) if colored else None)
    return S, query


def _rat(tok, line, col) -> Fraction:
    try:
        return parse_rational(tok)
    except ValueError as exc:
        raise ParseError(str(exc), line, col) from None


# ---------------------------------------------------------------- families

@dataclass(frozen=True)
class CorpusSpec:
    family: str
    n: int = 6
    d: int = 2
    seed: int = 0
    params: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if not 1 <= self.d <= 3:
            raise ValueError("d must be 1..3")
        if self.n < 0:
            raise ValueError("n must be non-negative")


def _centroid(pts) -> tuple:
    return tuple(sum((p[i] for p in pts), Fraction(0)) / len(pts) for i in range(len(pts[0])))


def generate(spec: CorpusSpec) -> tuple:
    """(PointSet, query or None), a pure function of the spec."""
    rng = random.Random(spec.seed)
    fam, n, d, prm = spec.family, spec.n, spec.d, spec.params
    colors = None
    weights = None
    query = None
    if fam == "random_rational":
        num, den = int(prm.get("num", 20)), int(prm.get("den", 4))
        pts = [tuple(Fraction(rng.randint(-num, num), rng.randint(1, den)) for _ in range(d)) for _ in range(n)]
    elif fam == "grid":
        ext = int(prm.get("extent", math.ceil(round(n ** (1 / d), 9))))
        cells = [()]
        for _ in range(d):
            cells = [c + (Fraction(i),) for c in cells for i in range(ext)]
        pts = cells[:n] if "extent" not in prm else cells
    elif fam == "moment_curve":
        span = int(prm.get("span", 3 * max(n, 1)))
        ts = sorted(rng.sample(range(-span, span + 1), n))
        pts = [tuple(Fraction(t) ** (k + 1) for k in range(d)) for t in ts]
    elif fam == "collinear":
        v = tuple(Fraction(rng.randint(-3, 3) or 1) for _ in range(d))
        base = tuple(Fraction(rng.randint(-5, 5)) for _ in range(d))
        ts = [rng.randint(-int(prm.get("span", 6)), int(prm.get("span", 6))) for _ in range(n)]
        pts = [tuple(b + t * c for b, c in zip(base, v)) for t in ts]
    elif fam == "clusters":
        k = int(prm.get("k", 3))
        spread = Fraction(prm.get("spread", 1))
        centers = [tuple(Fraction(rng.randint(-20, 20)) for _ in range(d)) for _ in range(k)]
        pts = []
        for i in range(n):
            c = centers[i % k]
            pts.append(tuple(x + spread * Fraction(rng.randint(-8, 8), 8) for x in c))
    else:  # fig1
        if d != 2:
            raise ValueError("fig1 is planar")
        jit = int(prm.get("jitter", 0))
        def j():
            return Fraction(rng.randint(-jit, jit), 16) if jit else Fraction(0)
        pts = [(Fraction(x) + j(), Fraction(y) + j()) for x, y in FIG1_BLUE + FIG1_RED]
        colors = [BLUE] * 3 + [RED] * 3
        query = (Fraction(0), Fraction(0))
    if prm.get("weights") == "random":
        weights = [Fraction(rng.randint(1, 8), rng.randint(1, 4)) for _ in pts]
    if prm.get("query") == "centroid" and pts:
        query = _centroid(pts)
    S = PointSet(tuple(pts), d, None if weights is None else tuple(weights),
                 None if colors is None else tuple(colors))
    return S, query


def parse_corpus_spec(text: str) -> tuple:
    """``family:n=6,d=2,seed=0,count=10,<param>=<v>`` -> (CorpusSpec, count)."""
    fam, _, rest = text.partition(":")
    kw = {}
    for part in filter(None, rest.split(",")):
        k, eq, v = part.partition("=")
        if not eq:
            raise ValueError(f"bad corpus field {part!r}")
        kw[k.strip()] = v.strip()
    count = int(kw.pop("count", 1))
    n = int(kw.pop("n", 6))
    d = int(kw.pop("d", 2))
    seed = int(kw.pop("seed", 0))
    return CorpusSpec(fam.strip(), n, d, seed, kw), count


def expand_corpus(spec: CorpusSpec, count: int) -> list:
    """``count`` instances with consecutive seeds."""
    out = []
    for k in range(count):
        s = CorpusSpec(spec.family, spec.n, spec.d, spec.seed + k, dict(spec.params))
        out.append((s, *generate(s)))
    return out
