"""Command-line frontend.

Subcommands:

  expand    print exact Q coefficients of a catalog series
  opinfo    singularities, indicial polynomial, MOM verdict, good primes,
            p-curvature nilpotency of an operator JSON file
  certify   build and print a Lucas-type certificate as JSON
  casebook  run congruence cases over primes and emit a report table

Exit codes: 0 success, 1 input error, 2 verification failure,
3 height-bound violation.  All numeric output is exact.
"""

import argparse
import json
import sys

from .casebook import batch_report, case_ids, results_to_csv
from .catalog import default_catalog, load_catalog, lookup, gen_terms
from .certify import assemble_certificate
from .diffop import (
    diffop_from_json,
    good_primes,
    indicial_at_zero,
    is_mom,
    p_curvature,
    reduce_op_mod_p,
    singularities,
)
from .errors import (
    BadPrime,
    HeightBoundViolated,
    LucascertError,
    NoCycleFound,
    ParseError,
    ReconstructionFailed,
    UnknownCase,
    UnknownSeries,
)
from .poly import format_poly

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2
EXIT_BOUND = 3

DEFAULT_PRIMES = (3, 5, 7, 11, 13)
MIN_T = 64


def _parse_primes(text, allow_two):
    from .fields import is_prime

    primes = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        p = int(part)
        if not is_prime(p):
            raise BadPrime(f"{p} is not prime")
        if p == 2 and not allow_two:
            raise BadPrime("p = 2 is excluded by default; pass --allow-two to include it")
        primes.append(p)
    return primes


def _load_cat(args):
    if getattr(args, "catalog", None):
        return load_catalog(args.catalog)
    return default_catalog()


def _emit(args, text):
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_expand(args):
    entry = lookup(args.series, _load_cat(args))
    terms = gen_terms(entry, args.T)
    if args.format == "json":
        _emit(args, json.dumps([str(t) for t in terms]))
    else:
        _emit(args, "\n".join(str(t) for t in terms))
    return EXIT_OK


def cmd_opinfo(args):
    with open(args.operator, "r", encoding="utf-8") as fh:
        L = diffop_from_json(fh.read())
    report = singularities(L)
    ind = indicial_at_zero(L)
    info = {
        "order": L.order,
        "basis": L.basis,
        "mom": is_mom(L),
        "indicial": format_poly(ind, var="x"),
        "finite_singular_factors": [
            {"factor": format_poly(fac), "regular": reg}
            for fac, reg in report.finite_points
        ],
        "infinity": report.infinity,
        "count_r": report.count_r,
        "good_primes": good_primes(L, args.bound),
    }
    curvature = {}
    for p in _parse_primes(args.primes, args.allow_two):
        try:
            _, nilpotent = p_curvature(reduce_op_mod_p(L, p))
            curvature[str(p)] = nilpotent
        except BadPrime as exc:
            curvature[str(p)] = f"bad prime: {exc}"
    info["p_curvature_nilpotent"] = curvature
    if args.format == "json":
        _emit(args, json.dumps(info, indent=2))
    else:
        lines = [
            f"order: {info['order']} ({info['basis']}-basis)",
            f"MOM at zero: {'yes' if info['mom'] else 'no'}",
            f"indicial at zero: {info['indicial']}",
            "finite singular factors: "
            + (
                ", ".join(
                    f"{e['factor']}{'' if e['regular'] else ' (irregular)'}"
                    for e in info["finite_singular_factors"]
                )
                or "none"
            ),
            f"infinity: {info['infinity']}",
            f"count r: {info['count_r']}",
            f"good primes <= {args.bound}: {info['good_primes']}",
            "p-curvature nilpotent: "
            + ", ".join(f"p={p}: {v}" for p, v in curvature.items()),
        ]
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_certify(args):
    entry = lookup(args.series, _load_cat(args))
    cert = assemble_certificate(entry, args.p, T=args.T)
    _emit(args, json.dumps(cert.to_json(), indent=2))
    return EXIT_OK


def cmd_casebook(args):
    primes = _parse_primes(args.primes, args.allow_two)
    ids = case_ids() if args.cases == ["all"] else args.cases
    results = batch_report(primes, ids)
    warned = [r for r in results if r.excluded]
    if args.format == "csv":
        _emit(args, results_to_csv(results))
    else:
        _emit(args, json.dumps([r.to_json() for r in results], indent=2))
    for r in warned:
        print(f"warning: case {r.case_id} at p={r.p} excluded: {r.note}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lucascert",
        description="Holonomic series mod p: operator analysis and Lucas-type certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, with_primes=True):
        sp.add_argument("--T", type=int, default=512, help="truncation order (>= 64)")
        if with_primes:
            sp.add_argument(
                "--primes",
                default=",".join(str(p) for p in DEFAULT_PRIMES),
                help="comma-separated primes (2 excluded unless --allow-two)",
            )
            sp.add_argument("--allow-two", action="store_true", help="permit p = 2")
        sp.add_argument("--catalog", help="path to a catalog JSON file")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--out", help="write output to a file instead of stdout")

    sp = sub.add_parser("expand", help="print exact coefficients of a catalog series")
    sp.add_argument("series")
    common(sp, with_primes=False)
    sp.set_defaults(fn=cmd_expand)

    sp = sub.add_parser("opinfo", help="analyze an operator JSON file")
    sp.add_argument("operator", help="path to operator JSON")
    sp.add_argument("--bound", type=int, default=20, help="good-prime search bound")
    common(sp)
    sp.set_defaults(fn=cmd_opinfo)

    sp = sub.add_parser("certify", help="build a Lucas-type certificate")
    sp.add_argument("series")
    sp.add_argument("-p", type=int, required=True, dest="p")
    common(sp, with_primes=False)
    # without an explicit --T the library picks an order from the height bound
    sp.set_defaults(fn=cmd_certify, T=None)

    sp = sub.add_parser("casebook", help="run worked-example cases")
    sp.add_argument("cases", nargs="+", help=f"case ids ({', '.join(case_ids())}) or 'all'")
    common(sp)
    sp.set_defaults(fn=cmd_casebook)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    T = getattr(args, "T", None)
    if T is not None and T < MIN_T:
        print(f"error: --T must be >= {MIN_T}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.fn(args)
    except HeightBoundViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (ReconstructionFailed, NoCycleFound) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (UnknownSeries, UnknownCase, ParseError, BadPrime, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LucascertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
