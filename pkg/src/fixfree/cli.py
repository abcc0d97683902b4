"""The fixfree command line.

Subcommands: analyze, generate, verify-lemma, transfer, degree,
converge.  Map files and reports are JSON, see mapio.  Exit codes: 0
on success, 2 on validation problems (bad files, bad expressions, bad
parameters, failed transfer hypotheses), 3 on internal limits such as
an exhausted center search.  Set FIXFREE_THREADS to cap parallelism
in the analyzer.
"""

import argparse
import json
import sys

from fractions import Fraction

from .analyzer import classify, lemma_check
from .catalog import FamilySpec, InvalidParameters, build
from .convergence import closure_demo
from .mapio import (
    MapFile,
    analyze_map,
    converge_report,
    degree_dict,
    lemma_report,
    parse_polynomial,
    read_map_file,
    transfer_report,
    write_map_file,
    write_report,
    SCHEMA_VERSION,
)
from .poly import AFFINE_VARS
from .spaces import INF, SpaceError, compose, degree_report
from .transfer import (
    HypothesesFailed,
    SearchExhausted,
    check_hypotheses,
    elementary_transform,
    find_center,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_LIMIT = 3


def _emit(doc: dict, path):
    if path:
        write_report(doc, path)
    else:
        print(json.dumps(doc, indent=2))


def _load(path) -> MapFile:
    return read_map_file(path)


def _parse_value(text: str):
    text = text.strip()
    if text.lower() == "inf":
        return INF
    return Fraction(text)


def _parse_center(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidParameters("a center is two values, like '3,5' or 'inf,0'")
    return tuple(_parse_value(p) for p in parts)


def _parse_pairs(text: str):
    pairs = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise InvalidParameters(
                "pairs are written 'a1,b1;a2,b2;...' with two values each"
            )
        pairs.append(tuple(_parse_value(p) for p in parts))
    return tuple(pairs)


def _family_label(args) -> str:
    bits = []
    for key in ("d", "k", "n"):
        value = getattr(args, key)
        if value is not None:
            bits.append(f"{key}={value}")
    if args.pairs:
        bits.append(f"pairs={args.pairs}")
    inner = ", ".join(bits)
    return f"{args.family}({inner})" if inner else args.family


def cmd_analyze(args) -> int:
    mapfile = _load(args.input)
    f = mapfile.to_map()
    name = (mapfile.metadata or {}).get("name")
    _emit(analyze_map(f, name=name, seed=args.seed), args.output)
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = FamilySpec(
        family=args.family,
        d=args.d,
        k=args.k,
        n=args.n,
        pairs=_parse_pairs(args.pairs) if args.pairs else None,
        allow_large=args.allow_large,
    )
    f = build(spec)
    metadata = {"name": args.name or _family_label(args)}
    if args.output:
        write_map_file(f, args.output, metadata=metadata)
    else:
        print(json.dumps(MapFile.from_map(f, metadata=metadata).to_dict(), indent=2))
    return EXIT_OK


def cmd_verify_lemma(args) -> int:
    p = parse_polynomial(args.p, AFFINE_VARS, args.field)
    q = parse_polynomial(args.q, AFFINE_VARS, args.field)
    result = lemma_check(p, q, args.k)
    _emit(lemma_report(p, q, args.k, result), args.output)
    return EXIT_OK


def cmd_transfer(args) -> int:
    f = _load(args.input).to_map()
    if args.center:
        center = _parse_center(args.center)
        hypotheses = check_hypotheses(f, center)
        if not hypotheses.all_pass:
            _emit(transfer_report(hypotheses), args.output)
            failed = [c.name for c in hypotheses.conditions if not c.passed]
            print(
                f"the center fails: {', '.join(failed)}", file=sys.stderr
            )
            return EXIT_INVALID
    else:
        center = find_center(f, seed=args.seed, budget=args.budget)
        hypotheses = check_hypotheses(f, center)
    transform = elementary_transform(hypotheses.center)
    g = compose(transform.forward, compose(f, transform.inverse))
    if args.skip_classify:
        _emit(transfer_report(hypotheses, transferred=g), args.output)
    else:
        _emit(
            transfer_report(
                hypotheses,
                transferred=g,
                cls=classify(g),
                degree=degree_report(g, seed=args.seed),
            ),
            args.output,
        )
    return EXIT_OK


def cmd_degree(args) -> int:
    f = _load(args.input).to_map()
    doc = {"schema_version": SCHEMA_VERSION}
    doc.update(degree_dict(degree_report(f, seed=args.seed)))
    _emit(doc, args.output)
    return EXIT_OK


def cmd_converge(args) -> int:
    report = closure_demo(args.n_max, samples=args.samples, seed=args.seed)
    _emit(converge_report(report), args.output)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fixfree",
        description="certify fixed-point freeness of rational self-maps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="classify the map in a file")
    analyze.add_argument("--input", required=True)
    analyze.add_argument("--output")
    analyze.add_argument("--seed", type=int, default=0)
    analyze.set_defaults(run=cmd_analyze)

    generate = sub.add_parser("generate", help="write a catalog family member")
    generate.add_argument("--family", required=True)
    generate.add_argument("--d", type=int)
    generate.add_argument("--k", type=int)
    generate.add_argument("--n", type=int)
    generate.add_argument("--pairs", help="root pairs, e.g. '3,7;4,9'")
    generate.add_argument("--allow-large", action="store_true")
    generate.add_argument("--name", help="metadata name for the file")
    generate.add_argument("--output")
    generate.set_defaults(run=cmd_generate)

    lemma = sub.add_parser("verify-lemma", help="run the coprime-pair root test")
    lemma.add_argument("--p", required=True)
    lemma.add_argument("--q", required=True)
    lemma.add_argument("--k", type=int, required=True)
    lemma.add_argument("--field", default="Q", choices=["Q", "Q(i)"])
    lemma.add_argument("--output")
    lemma.set_defaults(run=cmd_verify_lemma)

    transfer = sub.add_parser(
        "transfer", help="carry a product-surface map over to the plane"
    )
    transfer.add_argument("--input", required=True)
    where = transfer.add_mutually_exclusive_group(required=True)
    where.add_argument("--auto-center", action="store_true")
    where.add_argument("--center", help="explicit center, e.g. '3,5' or 'inf,0'")
    transfer.add_argument("--seed", type=int, default=0)
    transfer.add_argument("--budget", type=int, default=500)
    transfer.add_argument("--skip-classify", action="store_true")
    transfer.add_argument("--output")
    transfer.set_defaults(run=cmd_transfer)

    degree = sub.add_parser("degree", help="degree data of the map in a file")
    degree.add_argument("--input", required=True)
    degree.add_argument("--seed", type=int, default=0)
    degree.add_argument("--output")
    degree.set_defaults(run=cmd_degree)

    converge = sub.add_parser("converge", help="run the closure-family ladder")
    converge.add_argument("--n-max", type=int, default=32)
    converge.add_argument("--samples", type=int, default=500)
    converge.add_argument("--seed", type=int, default=42)
    converge.add_argument("--output")
    converge.set_defaults(run=cmd_converge)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except SearchExhausted as exc:
        print(f"limit reached: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except HypothesesFailed as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SyntaxError, ValueError, OSError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
