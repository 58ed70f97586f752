#!/usr/bin/env python
"""
facenum command line.

    facenum construct cyclic --d 4 --n 7 --out c47.cx
    facenum invariants c47.cx --field 2
    facenum audit c47.cx --fields q,2 --strict
    facenum facering wlp c47.cx --seed 3

Exit codes: 0 ok, 2 a theorem-status audit check failed, 3 a resource cap
was hit under --strict, 64 usage error, 65 malformed input file, 66 input
file missing, 75 no l.s.o.p. found with the given seed.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

from audit import run_audit
from classify import classify
from complex_file import ComplexFile, dump, dumps, load
from config import FACENUM_CONFIG, Caps
from constructions import ALIASES, ConstructionSpec, build, with_boundary_flag
from errors import DomainError, MalformedInputError, ResourceCapError, UnluckyFieldError
from face_ring import (colored_lsop, gorenstein_quotient_dims, graded_betti_hochster, hilbert_artinian,
                       probe_lefschetz, random_lsop, socle_dims)
from homology import FieldSpec
from report import (ReportDocument, audit_document, construct_document, facering_document, invariants_document,
                    render_text, validate)

logger = logging.getLogger("facenum")

EXIT_OK = 0
EXIT_THEOREM_FAILURE = 2
EXIT_RESOURCE = 3
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_NOINPUT = 66
EXIT_TEMPFAIL = 75

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

FAMILIES = sorted({
    "simplex", "simplex-boundary", "cross-polytope", "cycle", "cyclic", "stacked", "stacked-ball",
    "stacked-cross-polytopal", "barycentric", "join-of-cycles", "switch-ball", "switch-ball-boundary",
} | set(ALIASES))


class FaceNumArgumentParser(argparse.ArgumentParser):
    """argparse with the usage exit code moved to 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def configure_logging(verbose: bool = False, log_file: Optional[str] = None) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, format=LOG_FORMAT,
                        datefmt=DATE_FORMAT, handlers=handlers, force=True)


def field_arg(token: str) -> FieldSpec:
    try:
        return FieldSpec.parse(token)
    except (MalformedInputError, DomainError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def fields_arg(token: str) -> List[FieldSpec]:
    return [field_arg(part) for part in token.split(",") if part.strip()]


def _emit(document: ReportDocument, as_json: bool) -> None:
    validate(document)
    if as_json:
        sys.stdout.write(json.dumps(document, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(document))


def _read(path: str) -> ComplexFile:
    cf = load(path)
    if cf.complex.is_void:
        raise DomainError(f"{path}: the void complex")
    return cf


# ------------------ Commands ------------------

def cmd_construct(args) -> int:
    spec = ConstructionSpec(args.family, d=args.d, n=args.n, r=args.r, k=args.k, m=args.m, seed=args.seed)
    if args.boundary:
        spec = with_boundary_flag(spec)
    delta = build(spec)
    if args.out:
        dump(delta, args.out, spec)
        summary = sys.stdout
    else:
        sys.stdout.write(dumps(delta, spec))
        summary = sys.stderr
    document = construct_document(delta, spec, args.out)
    if args.json:
        validate(document)
        summary.write(json.dumps(document) + "\n")
    else:
        summary.write(f"{spec.to_token()}: f = {tuple(document['vectors']['f'])}, "
                      f"{document['facets']} facets\n")
    return EXIT_OK


def cmd_invariants(args) -> int:
    cf = _read(args.file)
    fields = args.field or [FieldSpec.default()]
    caps = Caps.from_config(mu_vertex_cap=args.mu_cap)
    classification = classify(cf.complex, fields[0], caps.face_cap)
    document = invariants_document(cf.complex, fields, caps, classification, cf.source, cf.provenance)
    _emit(document, args.json)
    if args.strict and document["capped"]:
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_audit(args) -> int:
    cf = _read(args.file)
    fields = args.fields or [FieldSpec.default()]
    caps = Caps.from_config(mu_vertex_cap=args.mu_cap)
    report = run_audit(cf.complex, fields, caps, seed=args.seed, provenance=cf.provenance)
    document = audit_document(report, cf.complex, args.strict, cf.source)
    _emit(document, args.json)
    return document["exit_code"]


def cmd_facering(args) -> int:
    cf = _read(args.file)
    delta = cf.complex
    field = args.field or FieldSpec.default()
    seed = FACENUM_CONFIG['default_seed'] if args.seed is None else args.seed
    caps = Caps.from_config()
    payload = {}
    try:
        if args.what == "hilbert":
            system = colored_lsop(delta, field, seed) if args.colored else random_lsop(delta, field, seed)
            payload = {"hilbert": hilbert_artinian(delta, system, delta.d), "field_used": system.label,
                       "lsop_draws": system.attempts, "colored": system.colored}
        elif args.what == "wlp":
            probe = probe_lefschetz(delta, field, seed, strong=args.strong)
            maps = probe.report.strong if args.strong else probe.report.weak
            payload = {
                "hilbert": probe.report.hilbert,
                "field_used": probe.report.field_label,
                "maps": [{"from": m.source, "to": m.target, "rank": m.rank, "status": m.status} for m in maps],
                "verdict": probe.verdict,
                "seeds": probe.seeds,
            }
        elif args.what == "socle":
            system = random_lsop(delta, field, seed)
            payload = {"socle": socle_dims(delta, system), "gorenstein": gorenstein_quotient_dims(delta, system),
                       "field_used": system.label}
        else:
            table = graded_betti_hochster(delta, field, caps.hochster_vertex_cap)
            payload = {"graded_betti": [[i, j, v] for (i, j), v in table.entries],
                       "murai_sigma": list(table.murai_sigma())}
    except ResourceCapError as exc:
        if args.strict:
            raise
        logger.warning("%s", exc)
        payload = {"omitted": {args.what: str(exc)}}
    _emit(facering_document(args.what, payload, delta, field, seed, cf.source), args.json)
    return EXIT_OK


# ------------------ Parser ------------------

def build_parser() -> argparse.ArgumentParser:
    parser = FaceNumArgumentParser(prog="facenum", description="Face numbers of simplicial complexes.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    parser.add_argument("--log-file", help="also write the log to this file")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=FaceNumArgumentParser)

    construct = sub.add_parser("construct", help="write a facet file for a named family")
    construct.add_argument("family", choices=FAMILIES)
    for name in ("d", "n", "r", "k", "m", "seed"):
        construct.add_argument(f"--{name}", type=int)
    construct.add_argument("--boundary", action="store_true", help="take the boundary of a ball family")
    construct.add_argument("--out", help="output file (default: stdout)")
    construct.add_argument("--json", action="store_true")
    construct.set_defaults(handler=cmd_construct)

    invariants = sub.add_parser("invariants", help="face numbers, Betti numbers and classification")
    invariants.add_argument("file")
    invariants.add_argument("--field", type=field_arg, action="append",
                            help="q, 2, 3 or p:<prime>; repeat for more homology fields")
    invariants.add_argument("--mu-cap", type=int)
    invariants.add_argument("--strict", action="store_true", help="exit 3 when a vector is omitted at a resource cap")
    invariants.add_argument("--json", action="store_true")
    invariants.set_defaults(handler=cmd_invariants)

    audit = sub.add_parser("audit", help="check every known inequality")
    audit.add_argument("file")
    audit.add_argument("--fields", type=fields_arg, help="comma-separated fields, first is primary")
    audit.add_argument("--mu-cap", type=int)
    audit.add_argument("--seed", type=int)
    audit.add_argument("--strict", action="store_true", help="exit 3 when a check hit a resource cap")
    audit.add_argument("--json", action="store_true")
    audit.set_defaults(handler=cmd_audit)

    facering = sub.add_parser("facering", help="Stanley-Reisner ring computations")
    facering.add_argument("what", choices=["hilbert", "wlp", "socle", "betti"])
    facering.add_argument("file")
    facering.add_argument("--field", type=field_arg)
    facering.add_argument("--seed", type=int)
    facering.add_argument("--strong", action="store_true", help="probe the strong Lefschetz maps")
    facering.add_argument("--colored", action="store_true", help="use the colored l.s.o.p.")
    facering.add_argument("--strict", action="store_true")
    facering.add_argument("--json", action="store_true")
    facering.set_defaults(handler=cmd_facering)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.log_file)
    try:
        return args.handler(args)
    except MalformedInputError as exc:
        logger.error("malformed input: %s", exc)
        return EXIT_DATAERR
    except FileNotFoundError as exc:
        logger.error("%s", exc)
        return EXIT_NOINPUT
    except ResourceCapError as exc:
        logger.error("%s", exc)
        return EXIT_RESOURCE
    except UnluckyFieldError as exc:
        logger.error("%s; retry with another --seed", exc)
        return EXIT_TEMPFAIL
    except DomainError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
