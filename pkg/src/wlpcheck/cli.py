"""Command line entry point: check, bounds, jacobian, sweep.

Exit codes: 0 when everything asked for is certified, 2 on a suspected or
certified failure (or a singular hypersurface), 1 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bundle_bounds import wlp_ranges
from .exactfield import DEFAULT_PRIME, make_field
from .jacobian import beauville_check
from .lefschetz import (
    CERTIFIED,
    DEFAULT_TRIALS,
    NotArtinianError,
    QuotientAlgebra,
    full_wlp,
)
from .polyring import CiSpec, FormParseError, parse_form, render
from .sweep import ConfigError, load_config, run_sweep

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAILURE = 2
REPORT_VERSION = 1

log = logging.getLogger("wlpcheck")


class InputError(Exception):
    pass


def _field(args):
    try:
        return make_field(args.field, args.prime)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(report, args, stream=None):
    stream = stream or sys.stdout
    report = {"version": REPORT_VERSION, **report}
    if args.json:
        stream.write(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        stream.write(json.dumps(report, indent=2) + "\n")


def _spec_from_args(args, field) -> CiSpec:
    if args.random:
        n, d = args.random
        if n < 1 or d < 1:
            raise InputError("--random needs n >= 1 and d >= 1")
        return CiSpec.random(n + 1, [d] * (n + 1), args.seed, field)
    if not args.forms:
        raise InputError("give generators or --random N D")
    try:
        forms = [parse_form(text, args.vars, field) for text in args.forms]
    except FormParseError as exc:
        raise InputError(f"cannot parse {exc.text!r}: {exc}") from None
    nv = max(f.num_vars for f in forms)
    if args.vars is None and any(f.num_vars != nv for f in forms):
        forms = [parse_form(text, nv, field) for text in args.forms]
    return CiSpec.from_forms(forms, seed=args.seed)


def cmd_check(args) -> int:
    field = _field(args)
    spec = _spec_from_args(args, field)
    alg = QuotientAlgebra(spec)
    try:
        alg.hilbert(args.cap)
    except NotArtinianError as exc:
        raise InputError(str(exc)) from None
    shortcut = not args.exhaustive
    cert = None
    if spec.is_square:
        from .lefschetz import certify_complete_intersection
        cert = certify_complete_intersection(spec, alg)
    if shortcut and not (cert and cert.certified):
        shortcut = False
    report = full_wlp(alg, use_shortcut=shortcut, trials=args.trials, escalate=not args.no_escalate)
    bounds = None
    d0 = spec.degrees[0]
    if spec.is_square and all(d == d0 for d in spec.degrees) and spec.num_vars >= 4:
        bounds = wlp_ranges(spec.num_vars - 1, d0).to_dict()
    out = {
        "kind": "check",
        "field": field.name,
        "num_vars": spec.num_vars,
        "degrees": list(spec.degrees),
        "generators": [render(g) for g in spec.generators],
        "seed": spec.seed,
        "complete_intersection": bool(cert and cert.certified),
        "hilbert": list(report.hilbert.nonzero),
        "socle_degree": report.hilbert.socle_degree,
        "shortcut_used": report.shortcut_used,
        "overall": report.overall,
        "status": report.status,
        "verdicts": [v.to_dict() for v in report.verdicts],
        "bounds": bounds,
    }
    _emit(out, args)
    return EXIT_OK if report.status == CERTIFIED else EXIT_FAILURE


def cmd_bounds(args) -> int:
    try:
        report = wlp_ranges(args.n, args.d, args.b1)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(report.to_dict(), args)
    return EXIT_OK


def cmd_jacobian(args) -> int:
    field = _field(args)
    if args.vars is not None and args.vars < 2:
        raise InputError("a hypersurface needs at least 2 variables")
    try:
        f = parse_form(args.form, args.vars, field)
        if f.num_vars < 2:
            # x0^d alone is read as a form on P^1
            f = parse_form(args.form, 2, field)
    except FormParseError as exc:
        raise InputError(f"cannot parse {exc.text!r}: {exc}") from None
    if f.degree < 2:
        raise InputError("the hypersurface needs degree at least 2")
    if f.is_zero():
        raise InputError("the zero form does not define a hypersurface")
    report = beauville_check(f, trials=args.trials, seed=args.seed)
    _emit(report.to_dict(), args)
    if not report.smooth.smooth:
        return EXIT_FAILURE
    return EXIT_OK if report.verdict.status == CERTIFIED else EXIT_FAILURE


def cmd_sweep(args) -> int:
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        raise InputError(f"cannot read config: {exc}") from None
    overrides = {
        "seed": args.seed, "trials": args.trials, "output_path": args.csv, "json_path": args.json_path,
        "instances_per_cell": args.instances,
    }
    if args.field_given:
        overrides["field"] = args.field
    if args.prime_given:
        overrides["prime"] = args.prime
    if args.timing:
        overrides["timing"] = True
    try:
        cfg = load_config(text, overrides)
    except ConfigError as exc:
        raise InputError(str(exc)) from None

    def progress(r):
        log.info("n=%d d=%d instance=%d status=%s (%.2fs)", r.n, r.d, r.instance, r.status, r.seconds)

    result = run_sweep(cfg, progress)
    csv_text = result.csv_text()
    if cfg.output_path:
        Path(cfg.output_path).write_text(csv_text)
    summary = result.to_dict()
    if cfg.json_path:
        Path(cfg.json_path).write_text(json.dumps({"version": REPORT_VERSION, **summary}, indent=2) + "\n")
    if cfg.output_path:
        _emit(summary, args)
    else:
        sys.stdout.write(csv_text)
    return EXIT_OK if summary["all_agree"] else EXIT_FAILURE


class _Mark(argparse.Action):
    """Store the value and remember that the flag was given explicitly."""

    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        setattr(namespace, self.dest + "_given", True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="root seed (default 0)")
    common.add_argument("--trials", type=int, default=None, help=f"linear forms tried per degree (default {DEFAULT_TRIALS})")
    common.add_argument("--field", choices=("prime", "rational"), default="prime", action=_Mark)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME, action=_Mark, help="modulus for --field prime")
    common.add_argument("--json", action="store_true", help="compact single-line JSON")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="wlpcheck", description="Weak Lefschetz checks for graded Artinian algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="WLP report for an ideal")
    p.add_argument("forms", nargs="*", help="generators, e.g. 'x0^2 + 3*x1*x2'")
    p.add_argument("--random", nargs=2, type=int, metavar=("N", "D"), help="N+1 random forms of degree D in N+1 variables")
    p.add_argument("--vars", type=int, default=None, help="number of variables (default: highest index + 1)")
    p.add_argument("--exhaustive", action="store_true", help="check every degree instead of the middle maps")
    p.add_argument("--no-escalate", action="store_true", help="skip exact rational recomputation")
    p.add_argument("--cap", type=int, default=None, help="give up on Artinian detection past this degree")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bounds", parents=[common], help="guaranteed degree ranges for (n, d)")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--b1", type=int, default=None, help="top splitting twist, for the range t < -b1")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("jacobian", parents=[common], help="smoothness and degree-d WLP of a Jacobian ring")
    p.add_argument("form")
    p.add_argument("--vars", type=int, default=None, help="number of variables (default: highest index + 1, at least 2)")
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("sweep", parents=[common], help="randomized sweep from a config file")
    p.add_argument("config")
    p.add_argument("--csv", default=None, help="CSV output path (overrides output_path)")
    p.add_argument("--json-path", default=None, help="JSON summary path (overrides json_path)")
    p.add_argument("--instances", type=int, default=None, help="instances per cell")
    p.add_argument("--timing", action="store_true", help="include timings in the JSON summary")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("field", "prime"):
        if not hasattr(args, name + "_given"):
            setattr(args, name + "_given", False)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command != "sweep":
        args.seed = 0 if args.seed is None else args.seed
        args.trials = DEFAULT_TRIALS if args.trials is None else args.trials
    if args.trials is not None and args.trials < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.seed is not None and args.seed < 0:
        print("error: --seed must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
