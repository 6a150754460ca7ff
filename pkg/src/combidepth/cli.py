"""Command-line interface.

Exit codes: 0 ok, 1 a checked property failed, 2 usage error, 3 an
exhaustive routine hit its size cap.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction
from pathlib import Path

from . import axioms as ax
from .corpus import CorpusSpec, ParseError, expand_corpus, fmt, generate, parse, parse_corpus_spec, parse_rational, serialize
from .depth import (
    CapExceeded, EnclosingWitness, RPartition, peeling_depth, simplicial_depth,
    tukey_depth, tukey_depth_weighted, tverberg_depth_exact,
)
from .enclosing import enclosing_depth_exact, verify_enclosing_oracle
from .exact import OrientedHalfspace, point
from .radon import (
    BichromaticSet, RadonFractionWitness, construct_e2_witness, fraction_radon_search_small,
    radon1d_construct, verify_fraction_radon,
)
from .regions import region_dims

OK, FAIL, USAGE, CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load(path):
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _query(args, file_query, dim):
    if getattr(args, "query", None):
        try:
            q = tuple(parse_rational(t.strip()) for t in args.query.split(","))
        except ValueError as exc:
            raise UsageError(f"--query: {exc}") from None
    elif file_query is not None:
        q = file_query
    else:
        raise UsageError("a query point is required (--query or a 'query' line in the file)")
    if len(q) != dim:
        raise UsageError(f"query has {len(q)} coordinates, instance has dimension {dim}")
    return q


def _classes(cs) -> str:
    return "|".join(" ".join(str(i) for i in c) for c in cs)


def _witness(w) -> str:
    if w is None:
        return ""
    if isinstance(w, (RPartition, EnclosingWitness)):
        return _classes(w.classes)
    if isinstance(w, OrientedHalfspace):
        op = ">=" if w.boundary_included else ">"
        return f"({' '.join(fmt(x) for x in w.normal)}).x {op} {fmt(w.offset)}"
    return str(w)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    return buf.getvalue()


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _caps(text) -> dict:
    out = {}
    for part in filter(None, (text or "").split(",")):
        k, _, v = part.partition("=")
        try:
            out[k.strip()] = int(v)
        except ValueError:
            raise UsageError(f"bad cap {part!r}") from None
    return out


# ---------------------------------------------------------------- commands

def cmd_depth(args, out):
    S, fq = _load(args.infile)
    q = _query(args, fq, S.dim)
    caps = _caps(args.caps)
    rows = []
    for m in [t.strip() for t in args.measures.split(",") if t.strip()]:
        if m == "td":
            r = tukey_depth_weighted(S, q) if S.weighted else tukey_depth(S, q)
        elif m == "tvd":
            r = tverberg_depth_exact(S, q, n_cap=caps.get("tvd", 12))
        elif m == "ed":
            r = enclosing_depth_exact(S, q, n_cap=caps.get("ed", 12))
        elif m == "sd":
            r = simplicial_depth(S, q)
        elif m == "peel":
            r = peeling_depth(S, q)
        else:
            raise UsageError(f"unknown measure {m!r}")
        rows.append(["depth.v1", m, fmt(r.value), "exact" if r.exact else "lower", _witness(r.witness)])
    out.write(_csv(rows, ["schema", "measure", "value", "kind", "witness"]))
    return OK


def cmd_regions(args, out):
    S, _ = _load(args.infile)
    measure = "td_weighted" if args.weighted else args.measure
    if args.weighted and args.measure != "td":
        raise UsageError("--weighted is only defined for td")
    if args.weighted and not S.weighted:
        S = S.with_weights([1] * len(S))
    rep = region_dims(S, measure, weighted=args.weighted)
    rows = [["regions.v1", "t", fmt(a), str(t)] for a, t in rep.dims.items()]
    if rep.cascade_sum is not None:
        rows.append(["regions.v1", "cascade_sum", "", str(rep.cascade_sum)])
    rows.append(["regions.v1", "cascade_integral", "", fmt(rep.cascade_integral)])
    rows.append(["regions.v1", "median_value", "", fmt(rep.median_value)])
    rows.append(["regions.v1", "median_dim", "", str(rep.median_region.dim)])
    for i, v in enumerate(rep.median_region.vertices):
        rows.append(["regions.v1", "median_vertex", str(i), " ".join(fmt(x) for x in v)])
    text = _csv(rows, ["schema", "key", "alpha", "value"])
    if args.out:
        _write(args.out, text)
    else:
        out.write(text)
    svg = args.svg
    if svg is None and args.out:
        svg = str(Path(args.out).with_suffix(".svg"))
    if svg:
        from .plotting import plot_regions

        plot_regions(rep, S, svg)
    out.write(f"median depth {fmt(rep.median_value)}, cascade integral {fmt(rep.cascade_integral)}\n")
    return OK


def cmd_cascade(args, out):
    S, _ = _load(args.infile)
    if args.weighted:
        if args.measure != "td":
            raise UsageError("--weighted is only defined for td")
        if not S.weighted:
            S = S.with_weights([1] * len(S))
        rep = region_dims(S, "td_weighted", weighted=True)
        val, name = rep.cascade_integral, "cascade_integral"
    else:
        rep = region_dims(S, args.measure, weighted=False)
        val, name = Fraction(rep.cascade_sum), "cascade_sum"
    verdict = "PASS" if val >= 0 else "FAIL"
    out.write(f"{name} {fmt(val)} {verdict}\n")
    return OK if val >= 0 else FAIL


_SUITES = {
    "superadditive": ["sensitivity", "locality", "nontriviality", "superadditivity"],
    "central": ["sensitivity", "locality", "centrality", "monotonicity"],
}


def cmd_axioms(args, out):
    corpus = []
    for text in args.corpus:
        try:
            spec, count = parse_corpus_spec(text)
        except ValueError as exc:
            raise UsageError(f"--corpus: {exc}") from None
        for s, S, q in expand_corpus(spec, count):
            iid = f"{s.family}:n={s.n},d={s.d},seed={s.seed}"
            corpus.append(ax.Instance(iid, S, queries=() if q is None else (q,)))
    if args.measure not in ax.ORACLES:
        raise UsageError(f"unknown measure {args.measure!r}")
    rows = []
    failed = False
    for name in _SUITES[args.suite]:
        rep = ax.axiom_matrix([args.measure], corpus, [name])[args.measure][name]
        failed |= not rep.passed
        ex = ""
        if rep.violations:
            v = rep.violations[0]
            det = ";".join(f"{k}={_detail(x)}" for k, x in v.detail.items())
            ex = f"{v.instance};q={' '.join(fmt(x) for x in v.q)};{det}"
        rows.append(["axioms.v1", args.measure, name, rep.label, "pass" if rep.passed else "fail",
                     rep.instances, rep.checks, len(rep.violations), ex])
    text = _csv(rows, ["schema", "measure", "axiom", "label", "status", "instances", "checks", "violations", "example"])
    if args.out:
        _write(args.out, text)
    out.write(text if not args.out else "".join(f"{r[2]} {r[4]}\n" for r in rows))
    return FAIL if failed else OK


def _detail(x) -> str:
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, tuple):
        return " ".join(fmt(v) for v in x)
    if isinstance(x, list):
        return " ".join(str(v) for v in x)
    return str(x)


def _parse_radon_witness(text) -> RadonFractionWitness:
    reds, blues = [], []
    for part in filter(None, text.split(";")):
        tag, _, idx = part.partition(":")
        try:
            cls = tuple(int(t) for t in idx.split(",") if t.strip())
        except ValueError:
            raise UsageError(f"bad witness class {part!r}") from None
        if tag.strip() == "R":
            reds.append(cls)
        elif tag.strip() == "B":
            blues.append(cls)
        else:
            raise UsageError(f"witness classes must be tagged R: or B:, got {part!r}")
    return RadonFractionWitness(tuple(reds), tuple(blues))


def cmd_radon(args, out):
    S, _ = _load(args.infile)
    if S.colors is None:
        raise UsageError("radon needs a coloured instance")
    P = BichromaticSet(S)
    if args.verify:
        w = _parse_radon_witness(args.verify)
        c2 = parse_rational(args.c2) if args.c2 else Fraction(0)
        v = verify_fraction_radon(P, w, c2)
        out.write(f"{'verified' if v else 'rejected'}: {v.reason}\n")
        return OK if v else FAIL
    if S.dim == 1:
        w = radon1d_construct(P)
        c2 = Fraction(len(P.red) // 3, len(P.red))
    else:
        w = fraction_radon_search_small(P, args.size)
        if w is None:
            out.write(f"no witness with class size {args.size}\n")
            return FAIL
        c2 = Fraction(args.size, len(P.red))
    v = verify_fraction_radon(P, w, c2)
    out.write("red " + _classes(w.red_classes) + "\n")
    out.write("blue " + _classes(w.blue_classes) + "\n")
    out.write(f"c2 {fmt(c2)} {'verified' if v else 'rejected'}\n")
    return OK if v else FAIL


def cmd_enclose(args, out):
    S, fq = _load(args.infile)
    q = _query(args, fq, S.dim)
    if args.construct_e2:
        try:
            w = construct_e2_witness(S, q)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        k = w.k
    else:
        r = enclosing_depth_exact(S, q, n_cap=args.cap)
        w, k = r.witness, int(r.value)
    out.write(f"k {k}\n")
    if w is not None:
        out.write(f"classes {_classes(w.classes)}\n")
        out.write("verified\n" if verify_enclosing_oracle(S, w) else "NOT verified\n")
    return OK


def cmd_check(args, out):
    S, fq = _load(args.infile)
    q = _query(args, fq, S.dim)
    rep = ax.inequality_chain_check(S, q)
    out.write(f"TD {fmt(rep.td)}\nTvD {fmt(rep.tvd)}\n")
    out.write(f"ED {fmt(rep.ed) if rep.ed is not None else 'n/a'}\nSD {fmt(rep.sd)}\n")
    out.write(f"chain {'PASS' if rep.chain_ok else 'FAIL'}\n")
    reay = "n/a" if rep.reay is None else ("PASS" if rep.reay else "FAIL")
    out.write(f"reay {reay}\n")
    if rep.one_dim_equal is not None:
        out.write(f"line-equality {'PASS' if rep.one_dim_equal else 'FAIL'}\n")
    bad = not rep.chain_ok or rep.reay is False or rep.one_dim_equal is False
    return FAIL if bad else OK


def cmd_gen(args, out):
    params = {}
    for p in args.param or []:
        k, eq, v = p.partition("=")
        if not eq:
            raise UsageError(f"--param expects key=value, got {p!r}")
        params[k] = v
    try:
        spec = CorpusSpec(args.family, args.n, args.d, args.seed, params)
        S, q = generate(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = serialize(S, q)
    if args.out:
        _write(args.out, text)
    else:
        out.write(text)
    return OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="combidepth", description="Exact combinatorial depth measures.")
    sub = p.add_subparsers(dest="cmd", required=True)

    d = sub.add_parser("depth", help="evaluate depth measures at a query point")
    d.add_argument("--in", dest="infile", required=True)
    d.add_argument("--query")
    d.add_argument("--measures", default="td,tvd,ed,sd,peel")
    d.add_argument("--caps", help="per-measure size caps, e.g. tvd=12,ed=10")
    d.set_defaults(func=cmd_depth)

    r = sub.add_parser("regions", help="depth region dimensions and cascade quantities")
    r.add_argument("--in", dest="infile", required=True)
    r.add_argument("--measure", default="td", choices=["td", "tvd", "ed", "sd", "peel"])
    r.add_argument("--weighted", action="store_true")
    r.add_argument("--out")
    r.add_argument("--svg", help="figure path; defaults to the --out path with .svg")
    r.set_defaults(func=cmd_regions)

    c = sub.add_parser("cascade", help="check the cascade condition")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--measure", default="td", choices=["td", "tvd", "ed", "sd", "peel"])
    c.add_argument("--weighted", action="store_true")
    c.set_defaults(func=cmd_cascade)

    a = sub.add_parser("axioms", help="test a measure against the depth axioms")
    a.add_argument("--measure", required=True)
    a.add_argument("--suite", choices=sorted(_SUITES), default="superadditive")
    a.add_argument("--corpus", action="append", required=True,
                   help="family:n=6,d=2,seed=0,count=5 (repeatable)")
    a.add_argument("--out")
    a.set_defaults(func=cmd_axioms)

    rd = sub.add_parser("radon", help="bichromatic Radon witnesses")
    rd.add_argument("--in", dest="infile", required=True)
    g = rd.add_mutually_exclusive_group()
    g.add_argument("--construct", action="store_true")
    g.add_argument("--verify", metavar="W", help="e.g. 'R:0;B:3;B:8'")
    rd.add_argument("--c2")
    rd.add_argument("--size", type=int, default=1)
    rd.set_defaults(func=cmd_radon)

    e = sub.add_parser("enclose", help="enclosing depth and witnesses")
    e.add_argument("--in", dest="infile", required=True)
    e.add_argument("--query")
    g = e.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--construct-e2", action="store_true")
    e.add_argument("--cap", type=int, default=12)
    e.set_defaults(func=cmd_enclose)

    ch = sub.add_parser("check", help="inequality chain and planar identity")
    ch.add_argument("--in", dest="infile", required=True)
    ch.add_argument("--query")
    ch.set_defaults(func=cmd_check)

    gn = sub.add_parser("gen", help="generate an instance file")
    gn.add_argument("--family", required=True)
    gn.add_argument("--n", type=int, default=6)
    gn.add_argument("--d", type=int, default=2)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--param", action="append")
    gn.add_argument("--out")
    gn.set_defaults(func=cmd_gen)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return CAP


if __name__ == "__main__":
    sys.exit(main())
