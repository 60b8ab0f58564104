"""``nilpoly`` command line.  Every command prints one JSON document.

Exit codes: 0 success, 1 domain error (bad document, inconsistent data, ...),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import kamke as km
from . import polymap as pm
from . import sequences as sq
from .document import (
    DocumentError,
    parse_document,
    parse_samples,
    polymap_to_obj,
)
from .errors import NilpolyError
from .scalars import degree_to_json, format_rational, parse_rational
from .symmetrize import all_perms, extract_cocycle, symmetrize, symmetrize_round


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None


def _rational_map(path: str) -> pm.PolyMap:
    doc = parse_document(_read(path))
    if doc.modulus is not None:
        raise DocumentError(f"{path}: symbolic commands need a rational document, got mod {doc.modulus}")
    return doc.polymap


def _lc(values) -> list:
    return [degree_to_json(d) for d in values]


def cmd_degree(args) -> dict:
    f = _rational_map(args.file)
    return {"degree": degree_to_json(pm.pm_degree(f))}


def cmd_lc_degree(args) -> dict:
    f = _rational_map(args.file)
    return {"lc_degree": _lc(pm.pm_lc_degree(f))}


def cmd_bounds(args) -> dict:
    f = _rational_map(args.file)
    lower, upper = pm.degree_bounds(f)
    lc = pm.pm_lc_degree(f)
    return {
        "lower": degree_to_json(lower),
        "upper": degree_to_json(upper),
        "exact": degree_to_json(pm.pm_degree(f)),
        "lc_degree": [
            {"lower": degree_to_json(lo), "upper": degree_to_json(hi), "exact": degree_to_json(d)}
            for (lo, hi), d in zip(pm.lc_degree_bounds(f), lc)
        ],
        "superadditive_closure": _lc(pm.superadditive_closure(lc)),
    }


def _binary(op):
    def run(args) -> dict:
        f, g = _rational_map(args.f), _rational_map(args.g)
        if f.n != g.n or f.N != g.N:
            raise DocumentError(f"maps differ in shape: n={f.n},N={f.N} vs n={g.n},N={g.N}")
        return {"result": polymap_to_obj(op(f, g))}
    return run


def cmd_conj(args) -> dict:
    f, g = _rational_map(args.f), _rational_map(args.g)
    if not g.is_constant():
        raise DocumentError(f"{args.g}: conjugating element must be a constant map")
    return {"result": polymap_to_obj(pm.pm_conjugate(f, g))}


def cmd_inv(args) -> dict:
    return {"result": polymap_to_obj(pm.pm_inverse(_rational_map(args.file)))}


def cmd_ordered_product(args) -> dict:
    f = _rational_map(args.file)
    return {"k": args.k, "result": polymap_to_obj(pm.ordered_product(f, args.k))}


def cmd_symmetrize(args) -> dict:
    f = _rational_map(args.file)
    g, count = symmetrize(f)
    return {"rounds": max(f.n - 1, 0), "factor_count": count, "result": polymap_to_obj(g)}


def cmd_cocycle(args) -> dict:
    f = _rational_map(args.file)
    g = f
    for _ in range(args.level):
        g = symmetrize_round(g)
    co = extract_cocycle(g, args.level)
    return {
        "level": args.level,
        "identity_violations": [[list(s), list(t)] for s, t in co.check_identity()],
        "values": [{"sigma": list(s), "alpha": polymap_to_obj(co[s])} for s in all_perms(f.N)],
    }


def cmd_seq_period(args) -> dict:
    doc = parse_document(_read(args.file))
    m = args.mod if args.mod is not None else doc.modulus
    if m is None:
        raise UsageError("seq period needs --mod or a mod document")
    rep = sq.seq_period(doc.polymap, m, seed=args.seed)
    return {
        "modulus": m,
        "period": rep.period,
        "degree": degree_to_json(rep.degree),
        "determining_set": list(rep.determining_set),
        "spot_checks": rep.spot_checks,
    }


def cmd_seq_fit(args) -> dict:
    samples = parse_samples(_read(args.file))
    return {"result": polymap_to_obj(sq.seq_fit(samples, args.degree))}


def cmd_seq_multiplicity(args) -> dict:
    f = _rational_map(args.file)
    return {
        "horizon": args.horizon,
        "multiplicity": sq.seq_value_multiplicity(f, args.horizon),
        "bound": sq.multiplicity_bound(f),
    }


def cmd_fibonacci(args) -> dict:
    witness = sq.fib_nonpoly_witness(args.depth)
    msg = (
        f"not polynomial of degree <= {args.depth - 1}: witness found"
        if witness
        else f"no witness at depth {args.depth}"
    )
    return {
        "depth": args.depth,
        "witness": witness,
        "message": msg,
        "values": [{"n": i, "v": list(sq.fib_map(i).v), "k": sq.fib_map(i).k} for i in range(6)],
    }


def _indexed(items, flag: str) -> dict:
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"{flag} expects v=value, got {item!r}")
        try:
            out[int(key)] = parse_rational(val)
        except ValueError as exc:
            raise UsageError(f"{flag} {item!r}: {exc}") from None
    return out


def cmd_kamke(args) -> dict:
    try:
        k1 = parse_rational(args.k1)
    except ValueError as exc:
        raise UsageError(f"--k1: {exc}") from None
    try:
        spec = km.KamkeSpec(args.B, k1, _indexed(args.k, "--k"), _indexed(args.K, "--K"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    param = km.kamke_solve(spec)
    out = {
        "n": param.n,
        "C": {str(v): format_rational(c) for v, c in param.C.items()},
        "D": {str(v): format_rational(d) for v, d in param.D.items()},
        "eps": format_rational(param.eps),
        "q": [str(p) for p in param.q],
        "sampling": km.sample_report(param, spec, args.samples, args.seed),
    }
    x = [Fraction(i) for i in range(param.n)] if args.jacobian_at is None else [
        parse_rational(c) for c in args.jacobian_at.split(",")
    ]
    if len(x) != param.n:
        raise UsageError(f"--jacobian-at needs {param.n} coordinates")
    out["jacobian"] = {"at": [format_rational(c) for c in x], "rank": km.kamke_jacobian_rank(param, x)}
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilpoly", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="PRNG seed for sampling commands")
    sub = p.add_subparsers(dest="command", required=True)

    def one(name, fn, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("file")
        s.set_defaults(func=fn)
        return s

    one("degree", cmd_degree, "exact degree of a polynomial map")
    one("lc-degree", cmd_lc_degree, "lc-degree vector")
    one("bounds", cmd_bounds, "degree bounds next to exact values")
    one("inv", cmd_inv, "pointwise inverse")
    for name, op in (("mul", pm.pm_product), ("comm", pm.pm_commutator)):
        s = sub.add_parser(name)
        s.add_argument("f")
        s.add_argument("g")
        s.set_defaults(func=_binary(op))
    s = sub.add_parser("conj", help="conjugate F by the constant map G")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(func=cmd_conj)
    s = one("ordered-product", cmd_ordered_product, "k-fold ordered product")
    s.add_argument("--k", type=int, required=True)
    one("symmetrize", cmd_symmetrize, "iterated symmetrization")
    s = one("cocycle", cmd_cocycle, "1-cocycle after LEVEL rounds")
    s.add_argument("--level", type=int, default=1)

    seq = sub.add_parser("seq", help="polynomial sequences").add_subparsers(dest="seq_command", required=True)
    s = seq.add_parser("period")
    s.add_argument("file")
    s.add_argument("--mod", type=int)
    s.set_defaults(func=cmd_seq_period)
    s = seq.add_parser("fit")
    s.add_argument("file")
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=cmd_seq_fit)
    s = seq.add_parser("multiplicity")
    s.add_argument("file")
    s.add_argument("--horizon", type=int, default=10**4)
    s.set_defaults(func=cmd_seq_multiplicity)

    demo = sub.add_parser("demo").add_subparsers(dest="demo_command", required=True)
    s = demo.add_parser("fibonacci")
    s.add_argument("--depth", type=int, default=8)
    s.set_defaults(func=cmd_fibonacci)

    s = sub.add_parser("kamke", help="polynomial set inside a Kamke domain")
    s.add_argument("--B", type=int, required=True)
    s.add_argument("--k1", required=True)
    s.add_argument("--k", action="append", metavar="V=VALUE")
    s.add_argument("--K", action="append", metavar="V=VALUE")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--jacobian-at", metavar="X1,X2,...")
    s.set_defaults(func=cmd_kamke)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = {"command": args.command, **args.func(args)}
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"nilpoly: error: {exc}", file=sys.stderr)
        return 2
    except (NilpolyError, ValueError) as exc:
        print(json.dumps({"command": args.command, "error": str(exc)}, indent=2))
        return 1
    print(json.dumps(out, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
