"""Command-line surface.

stdout carries exactly one JSON report per invocation; progress and
diagnostics go to stderr.  Exit codes: 0 success, 1 verification failure,
2 invalid input, 3 hypothesis violation, 4 retry budget exhausted.

All randomness flows from the single --seed value (default 1729) through
Python's Mersenne Twister, so reports are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .branches import compute_dim_V
from .classify import decide_mult3, triangle_inflection
from .construct import (
    DEFAULT_SEED,
    RETRY_BUDGET,
    ImpossibilityCertificate,
    construct_multipoint,
    construct_prescribed,
    construct_univariate,
    _draw_through_one,
)
from .errors import (
    ConstructionFailure,
    HypothesisViolation,
    InputError,
    RetryBudgetExhausted,
    VerificationError,
)
from .jsonio import (
    certificate_to_json,
    point_to_json,
    support_from_json,
    support_to_json,
    system_from_json,
    system_to_json,
    upoly_to_json,
    _value_to_json,
)
from .lattice import SupportSet, convex_hull, erode, mixed_volume
from .reproduce import run_scenario
from .verify import (
    NON_ISOLATED,
    intersection_multiplicity_smooth,
    univariate_multiplicity,
)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_RETRIES = 4


def _load_request(args) -> dict:
    if getattr(args, "json", None):
        text = args.json
    elif getattr(args, "input", None):
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise InputError("provide --input FILE or --json TEXT")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}")
    if not isinstance(obj, dict):
        raise InputError("request must be a JSON object")
    return obj


def _emit(args, report: dict) -> None:
    report = {"version": __version__, **report}
    text = json.dumps(report, indent=2, sort_keys=False)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def _require(obj: dict, keys, what: str):
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InputError(f"missing fields {missing} in {what}")


def cmd_bounds(args) -> int:
    req = _load_request(args)
    _require(req, ["A", "B"], "bounds request")
    A = support_from_json(req["A"])
    B = support_from_json(req["B"])
    hull = convex_hull(A)
    ero = erode(hull, B)
    d_est = len(A) - len(ero) - 1
    import random

    rng = random.Random(args.seed)
    probe = None
    for _ in range(RETRY_BUDGET):
        probe = _draw_through_one(B, rng)
        if probe is not None:
            break
    d_refined = d_est
    if probe is not None:
        dim_v, _ = compute_dim_V(A, probe)
        d_refined = len(A) - dim_v - 1
    mv = mixed_volume(hull, convex_hull(B))
    _emit(
        args,
        {
            "request": {"command": "bounds", "A": support_to_json(A), "B": support_to_json(B)},
            "A_size": len(A),
            "erosion_size": len(ero),
            "D_estimate": d_est,
            "D_refined": d_refined,
            "mixed_volume": mv,
            "chain": {
                "initial_run_lower_bound": d_est,
                "initial_run_lower_bound_refined": d_refined,
                "max_multiplicity_upper_bound": mv,
            },
        },
    )
    return EXIT_OK


def cmd_construct(args) -> int:
    req = _load_request(args)
    _require(req, ["A", "B", "m"], "construct request")
    A = support_from_json(req["A"])
    B = support_from_json(req["B"])
    system = construct_prescribed(
        A, B, int(req["m"]), seed=args.seed, retries=args.retries,
        truncation=args.truncation,
    )
    _emit(args, {"request": {"command": "construct", "m": int(req["m"]), "seed": args.seed},
                 "system": system_to_json(system)})
    return EXIT_OK


def cmd_multipoint(args) -> int:
    req = _load_request(args)
    _require(req, ["A", "B", "multiplicities"], "multipoint request")
    system = construct_multipoint(
        support_from_json(req["A"]),
        support_from_json(req["B"]),
        [int(m) for m in req["multiplicities"]],
        seed=args.seed,
        retries=args.retries,
    )
    _emit(args, {"request": {"command": "multipoint", "seed": args.seed},
                 "system": system_to_json(system)})
    return EXIT_OK


def cmd_verify(args) -> int:
    req = _load_request(args)
    system = system_from_json(req)
    results = []
    ok = True
    for pt, claimed in zip(system.points, system.multiplicities):
        observed = intersection_multiplicity_smooth(system.f, system.g, pt)
        if observed == NON_ISOLATED:
            good = False
        elif system.exact:
            good = observed == claimed
        else:
            good = observed >= claimed
        ok = ok and good
        results.append(
            {"point": point_to_json(pt), "claimed": claimed,
             "observed": observed if isinstance(observed, int) else str(observed),
             "pass": good}
        )
    _emit(args, {"request": {"command": "verify"}, "verified": ok, "results": results})
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_classify(args) -> int:
    req = _load_request(args)
    _require(req, ["A", "B"], "classify request")
    report = decide_mult3(
        support_from_json(req["A"]), support_from_json(req["B"]),
        seed=args.seed, retries=args.retries,
    )
    out = {
        "request": {"command": "classify", "seed": args.seed},
        "A": support_to_json(report.A),
        "B": support_to_json(report.B),
        "mixed_volume": report.mixed_volume,
        "verdict": report.verdict,
    }
    if report.family is not None:
        out["family"] = _value_to_json(report.family)
    if report.construction is not None:
        out["construction"] = system_to_json(report.construction)
    if report.route_log:
        out["route_log"] = report.route_log
    _emit(args, out)
    return EXIT_OK


def cmd_triangle(args) -> int:
    req = _load_request(args)
    _require(req, ["points"], "triangle request")
    T = SupportSet((int(p[0]), int(p[1])) for p in req["points"])
    tc = triangle_inflection(T)
    out = {
        "request": {"command": "triangle"},
        "triangle": support_to_json(tc.triangle),
        "verdict": tc.verdict,
        "case": tc.case,
    }
    if tc.family is not None:
        out["family"] = tc.family
    if tc.decision_poly is not None:
        out["decision_poly"] = upoly_to_json(tc.decision_poly)
    if tc.reduced_factor is not None:
        out["reduced_factor"] = upoly_to_json(tc.reduced_factor)
    _emit(args, out)
    return EXIT_OK


def cmd_univariate(args) -> int:
    req = _load_request(args)
    _require(req, ["exponents", "l"], "univariate request")
    exponents = [int(e) for e in req["exponents"]]
    l = int(req["l"])
    result = construct_univariate(exponents, l)
    if isinstance(result, ImpossibilityCertificate):
        _emit(
            args,
            {
                "request": {"command": "univariate", "exponents": exponents, "l": l},
                "outcome": "impossible",
                "certificate": {"kind": result.kind,
                                "transcript": _value_to_json(result.transcript)},
            },
        )
        return EXIT_OK
    mult, cert = univariate_multiplicity(result, Fraction(1), with_certificate=True)
    ok = mult == l
    _emit(
        args,
        {
            "request": {"command": "univariate", "exponents": exponents, "l": l},
            "outcome": "constructed",
            "polynomial": upoly_to_json(result),
            "verified_multiplicity": mult,
            "certificate": certificate_to_json(cert),
        },
    )
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_reproduce(args) -> int:
    kwargs = {}
    if args.name == "ex10":
        kwargs["n"] = args.n if args.n is not None else 3
    if args.name == "triangle-atlas":
        kwargs["bound"] = args.bound if args.bound is not None else 5
    if args.name == "th2-atlas":
        kwargs["bound"] = args.bound if args.bound is not None else 2
    if args.name != "triangle-atlas":
        kwargs["seed"] = args.seed
    report = run_scenario(args.name, **kwargs)
    _emit(args, {"request": {"command": "reproduce", "name": args.name, **kwargs}, **report})
    return EXIT_OK if report.get("ok") else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsemult",
        description="Exact constructions and certification of root multiplicities "
        "for sparse bivariate systems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("--input", help="path to a JSON request")
            p.add_argument("--json", help="inline JSON request")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help=f"PRNG seed (default {DEFAULT_SEED})")
        p.add_argument("--retries", type=int, default=RETRY_BUDGET,
                       help="retry budget for randomized constructions")
        p.add_argument("--truncation", type=int, default=None,
                       help="series truncation override")
        p.add_argument("--output", help="also write the report to this path")

    p = sub.add_parser("bounds", help="pairing bounds and mixed volume for a support pair")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="build a verified system with a prescribed multiplicity")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("multipoint", help="prescribed lower bounds at several points")
    common(p)
    p.set_defaults(func=cmd_multipoint)

    p = sub.add_parser("verify", help="re-check a constructed system")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="multiplicity-3 classification of a support pair")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("triangle", help="inflection classification of a trinomial support")
    common(p)
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser("univariate", help="sparse univariate root of prescribed multiplicity")
    common(p)
    p.set_defaults(func=cmd_univariate)

    p = sub.add_parser("reproduce", help="run a named scenario with built-in checks")
    p.add_argument("name", choices=["exim", "ex3", "ex10", "triangle-atlas", "th2-atlas"])
    p.add_argument("--n", type=int, default=None, help="family parameter for ex10")
    p.add_argument("--bound", type=int, default=None, help="box bound for the atlases")
    common(p, with_input=False)
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except RetryBudgetExhausted as exc:
        print(f"retry budget exhausted: {exc}", file=sys.stderr)
        for line in exc.diagnostics.get("log", []):
            print(f"  {line}", file=sys.stderr)
        return EXIT_RETRIES
    except ConstructionFailure as exc:
        print(f"construction impossible: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except InputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except FileNotFoundError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
