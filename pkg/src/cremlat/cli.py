"""Batch command line front-end; every subcommand prints JSON to stdout.

Exit codes: 0 on success, 1 on a domain error (a well-formed request whose
mathematics refuses: non-loxodromic input to reduce, resource guards, ...),
2 on a usage error (unknown flags, malformed words/polynomials/triples; the
message carries the offending position where the parsers provide one).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import birmap, orbits, reduction, salem, spectral, weyl
from .lattice import BubblePoint, ClassVector, e, e0, proper_point, infinitely_near, render
from .weyl import WordSyntaxError, parse_word, print_word, realize


class UsageError(ValueError):
    pass


def _parse_vector(text: str, names: dict) -> ClassVector:
    """The four normal-form shapes: e0, e(q), e0-e(q), 3e0-e(q1)-...-e(qk)."""
    text = text.replace(" ", "")
    if text == "e0":
        return e0()
    import re

    m = re.fullmatch(r"e\((\w+)\)", text)
    if m:
        return e(_named_point(m.group(1), names))
    m = re.fullmatch(r"e0-e\((\w+)\)", text)
    if m:
        return e0() - e(_named_point(m.group(1), names))
    m = re.fullmatch(r"3\*?e0((?:-e\(\w+\))+)", text)
    if m:
        pts = re.findall(r"-e\((\w+)\)", m.group(1))
        vec = ClassVector(3, {})
        for name in pts:
            vec = vec - e(_named_point(name, names))
        return vec
    raise UsageError(f"cannot parse vector {text!r} (position 0): "
                     "expected e0, e(q), e0-e(q) or 3e0-e(q1)-...")


def _named_point(name: str, names: dict) -> BubblePoint:
    if name not in names:
        from .lattice import point

        names[name] = point(label=name)
    return names[name]


def _emit(obj) -> None:
    print(json.dumps(obj))


def cmd_classify_number(args) -> int:
    poly = salem.parse_poly(args.polynomial)
    cls = salem.classify_number(poly, args.tol)
    _emit({
        "kind": cls.kind,
        "root": cls.dominant_root,
        "stripped": salem.format_poly(cls.stripped) if cls.stripped else None,
        "notes": list(cls.notes),
    })
    return 0


def cmd_salem_enum(args) -> int:
    found = salem.enumerate_salem(args.degree_bound, args.upper)
    _emit([
        {"polynomial": salem.format_poly(p), "root": r} for p, r in found
    ])
    return 0


def cmd_weyl_eval(args) -> int:
    w, _ = parse_word(args.word)
    h = realize(w)
    _emit({
        "degree": weyl.degree(h),
        "image_e0": render(weyl.apply(h, e0())),
        "support": [repr(p) for p in h.support],
        "word": print_word(w),
    })
    return 0


def cmd_weyl_normalize(args) -> int:
    w, names = parse_word(args.word)
    v = _parse_vector(args.vector, names)
    nw = weyl.normalize_increasing(w, v)
    _emit({
        "word": print_word(nw),
        "image": render(nw.apply(v)),
        "partial_degrees": [str(d) for d in weyl.increasing_degrees(nw, v)],
    })
    return 0


def cmd_spectrum(args) -> int:
    w, _ = parse_word(args.word)
    h = realize(w)
    _emit(spectral.spectrum_report(h, args.tol))
    return 0


def cmd_reduce(args) -> int:
    w, _ = parse_word(args.word)
    h = realize(w)
    trace = reduction.reduce(h, budget=args.budget, tol=args.tol)
    for line in trace.json_lines():
        print(line)
    return 0


def cmd_realizable(args) -> int:
    if args.config == "-":
        data = json.load(sys.stdin)
    else:
        with open(args.config) as fh:
            data = json.load(fh)
    names = {}
    points = []
    for spec in data["points"]:
        name = spec["id"]
        if "coords" in spec:
            pt = proper_point(*[Fraction(c) for c in spec["coords"]], label=name)
        elif "parent" in spec:
            pt = infinitely_near(names[spec["parent"]], label=name)
        else:
            from .lattice import point

            pt = point(label=name)
        names[name] = pt
        points.append(pt)
    config = reduction.PointConfiguration(points, k_max=data.get("k_max", 6))
    for triple_names in data.get("collinear", []):
        key = frozenset(names[n].id for n in triple_names)
        config.collinear_facts[key] = True
    for triple_names in data.get("not_collinear", []):
        key = frozenset(names[n].id for n in triple_names)
        config.collinear_facts[key] = False
    for spec in data["points"]:
        for host in spec.get("on_exceptional_of", []):
            config.exceptional_members.setdefault(names[host], set()).add(names[spec["id"]])
    report = reduction.realizable_jonquieres(config, args.m)
    _emit({"status": report.status, "condition": report.condition, "witness": report.witness})
    return 0


def cmd_fk_spectrum(args) -> int:
    entries = orbits.lambda_sequence(args.m, range(2, args.kmax + 1), args.tol)
    _emit({
        "m": args.m,
        "limit": orbits.lambda_limit(args.m),
        "entries": [{"k": ent.k, "lambda": ent.value, "class": ent.kind} for ent in entries],
    })
    return 0


def cmd_degseq(args) -> int:
    if args.monomial:
        entries = [int(x) for x in args.monomial.split(",")]
        if len(entries) != 4:
            raise UsageError("(position 0) --monomial needs a,b,c,d")
        f = birmap.monomial_map([[entries[0], entries[1]], [entries[2], entries[3]]])
        degs = birmap.monomial_iterates(f, args.n)
        _emit({"degrees": degs, "truncated": False, "lambda": birmap.monomial_lambda(f)})
        return 0
    prime = birmap.DEFAULT_PRIME if args.prime_field else None
    f = birmap.parse_triple(args.map, prime)
    degs, truncated = birmap.iterate_degrees(f, args.n)
    _emit({"degrees": degs, "truncated": truncated})
    return 0


def cmd_bounds(args) -> int:
    if args.degrees:
        report = reduction.bounds(args.degrees[0], args.degrees[1])
    elif args.lam is not None:
        lam = Fraction(args.lam) if "/" in args.lam or "." not in args.lam else float(args.lam)
        report = reduction.bounds(lam)
    else:
        raise UsageError("(position 0) bounds needs --lam or --degrees")
    _emit(report.as_dict())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cremlat",
        description="exact lattice dynamics of plane birational transformations",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--tol", type=float, default=1e-9, help="numeric tolerance")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for sampling commands (reserved)")
        return p

    p = add("classify-number", cmd_classify_number, help="classify a monic integer polynomial")
    p.add_argument("polynomial")

    p = add("salem-enum", cmd_salem_enum, help="exhaustive bounded Salem search")
    p.add_argument("--degree-bound", type=int, required=True)
    p.add_argument("--upper", type=float, required=True)

    p = add("weyl-eval", cmd_weyl_eval, help="realize a word and print its degree data")
    p.add_argument("word")

    p = add("weyl-normalize", cmd_weyl_normalize, help="rewrite a word with increasing degrees")
    p.add_argument("word")
    p.add_argument("--vector", default="e0")

    p = add("spectrum", cmd_spectrum, help="spectral report of a word")
    p.add_argument("word")

    p = add("reduce", cmd_reduce, help="degree reduction loop, one JSON line per step")
    p.add_argument("word")
    p.add_argument("--budget", type=int, default=200)

    p = add("realizable", cmd_realizable, help="base-point realizability of a configuration")
    p.add_argument("--config", required=True, help="JSON file, or - for stdin")
    p.add_argument("--m", type=int, required=True)

    p = add("fk-spectrum", cmd_fk_spectrum, help="truncated-orbit spectral radii")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)

    p = add("degseq", cmd_degseq, help="degree sequence of a coordinate triple")
    p.add_argument("--map", help="triple like [y*z : z*x : x*y]")
    p.add_argument("--monomial", help="a,b,c,d exponent matrix entries")
    p.add_argument("-n", type=int, default=8)
    p.add_argument("--prime-field", action="store_true")

    p = add("bounds", cmd_bounds, help="explicit bound formulas")
    p.add_argument("--lam", help="dynamical degree (rational or decimal)")
    p.add_argument("--degrees", type=int, nargs=2, help="two degrees for the conjugator bound")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (WordSyntaxError, UsageError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        msg = str(exc)
        if "parse" in msg or "position" in msg:
            print(f"usage error: {msg}", file=sys.stderr)
            return 2
        print(f"error: {msg}", file=sys.stderr)
        return 1
    except RuntimeError as exc:  # resource guards, budget overruns
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
