"""Command-line interface: ``classexp <subcommand> ...``.

Exit codes: 0 success, 1 usage or parse error, 2 bound violation,
3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import errors
from .bounds import (
    exponent_lower_bound,
    nonfibral_lower_bound,
    order_count_lower_bound,
    relative_bound_part1,
    relative_bound_part2,
    relative_bound_sharp,
    stichtenoth_reference,
)
from .curve import curve_from_spec, to_odd_model
from .jacobian import Jacobian, group_profile
from .nonfibral import ComposedMap, XMap, count_nonfibral
from .relative import PhiMap, cover_from_spec, relative_profile
from .sweep import SweepSpec, analyze_curve, build_report, exit_code, report_csv, report_json, sweep
from .zeta import l_polynomial

log = logging.getLogger("classexp")

EXIT_OK, EXIT_PARSE, EXIT_VIOLATION, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _load_json(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"{path}: expected a JSON object")
    return data


def _load_curve(path):
    data = _load_json(path)
    for key in ("field", "f"):
        if key not in data:
            raise UsageError(f"{path}: missing field {key!r}")
    try:
        return curve_from_spec(data)
    except (errors.ClassExpError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: invalid curve ({getattr(exc, 'tag', type(exc).__name__)}): {exc}") from exc


def _load_cover(path):
    data = _load_json(path)
    for key in ("field", "F"):
        if key not in data:
            raise UsageError(f"{path}: missing field {key!r}")
    try:
        return cover_from_spec(data)
    except (errors.ClassExpError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: invalid cover ({getattr(exc, 'tag', type(exc).__name__)}): {exc}") from exc


def _emit(args, payload, name):
    text = json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"
    if args.output_dir:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.json").write_text(text)
    else:
        sys.stdout.write(text)


# --- subcommands --------------------------------------------------------------------


def cmd_zeta(args):
    curve = _load_curve(args.curve)
    z = l_polynomial(curve, cap=args.cap)
    _emit(args, {"curve": curve.to_spec(), "genus": curve.genus, **z.as_dict()}, "zeta")
    return EXIT_OK


def cmd_jacobian(args):
    curve = _load_curve(args.curve)
    odd, _ = to_odd_model(curve)
    h = l_polynomial(curve, cap=args.cap).class_number
    prof = group_profile(Jacobian(odd), args.mode, h=h, seed=args.seed, samples=args.samples)
    payload = {"curve": curve.to_spec(), "odd_model": odd.to_spec(), **prof.as_dict(),
               "exponent_is_lower_bound": prof.exponent_is_lower_bound}
    _emit(args, payload, "jacobian")
    return EXIT_OK


def cmd_bounds(args):
    out = {"log_base": args.log_base}
    if args.g is not None:
        if args.q is None or args.gon is None:
            raise UsageError("--g needs --q and --gon")
        main, gon_free = exponent_lower_bound(args.g, args.q, args.gon)
        out["exponent"] = main.as_dict()
        out["exponent_gonality_free"] = gon_free.as_dict()
        out["stichtenoth_reference"] = stichtenoth_reference(args.g, args.log_base).as_dict()
        if args.m is not None:
            out["order_count"] = order_count_lower_bound(args.g, args.q, args.gon, args.m).as_dict()
        if args.k is not None:
            out["nonfibral"] = nonfibral_lower_bound(args.g, args.q, args.k, args.deg_f).as_dict()
    if args.g1 is not None:
        if args.q is None:
            raise UsageError("--g1 needs --q")
        if args.g2 is not None:
            out["relative_floor_form"] = relative_bound_part1(args.g1, args.g2, args.q).as_dict()
        if args.deg_phi is not None:
            out["relative_degree_form"] = relative_bound_part2(args.g1, args.q, args.deg_phi).as_dict()
            if args.gon1 is not None:
                out["relative_sharp_form"] = relative_bound_sharp(
                    args.g1, args.gon1, args.q, args.deg_phi).as_dict()
    if len(out) == 1:
        raise UsageError("nothing to evaluate: give --g/--q/--gon or --g1/--q")
    _emit(args, out, "bounds")
    return EXIT_OK


def cmd_nonfibral(args):
    if args.cover:
        cover = _load_cover(args.cover)
        phi = PhiMap(cover)
        if args.map == "x":
            args.map = "x-phi"
        f = phi if args.map == "phi" else ComposedMap(XMap(cover.X2), phi)
        curve = cover.even
    else:
        if args.curve is None:
            raise UsageError("give a curve file or --cover")
        if args.map != "x":
            raise UsageError("--map phi needs --cover")
        curve = _load_curve(args.curve)
        f = XMap(curve)
    count = count_nonfibral(curve, f, args.k, args.cap)
    payload = {"k": args.k, "map": args.map, "map_degree": f.degree, "count": count}
    if f.target == "P1" or args.map in ("x", "x-phi"):
        bound = nonfibral_lower_bound(curve.genus, curve.q, args.k, f.degree).safe_lower
        payload.update(bound=bound, **{"pass": count >= bound})
    _emit(args, payload, "nonfibral")
    return EXIT_VIOLATION if payload.get("pass") is False else EXIT_OK


def cmd_relative(args):
    cover = _load_cover(args.cover)
    prof = relative_profile(cover, cap=args.cap)
    _emit(args, {"cover": cover.to_spec(), **prof.as_dict()}, "relative")
    return EXIT_OK if prof.pass_all else EXIT_VIOLATION


def _sweep_spec(args):
    ks = tuple(int(k) for k in args.ks.split(",")) if args.ks else None
    return SweepSpec(p=args.p, n=args.n, genus=args.genus, models=args.models,
                     max_curves=args.max_curves, nonfibral_ks=ks, seed=args.seed,
                     jobs=args.jobs, log_base=args.log_base, count_cap=args.cap)


def _write_report(args, report, stem):
    if args.output_dir:
        out = Path(args.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{stem}.csv").write_text(report_csv(report))
        (out / f"{stem}.json").write_text(report_json(report))
        log.info("wrote %s/%s.{csv,json}", out, stem)
    elif args.format == "csv":
        sys.stdout.write(report_csv(report))
    else:
        sys.stdout.write(report_json(report))


def cmd_sweep(args):
    t0 = time.perf_counter()
    report = sweep(_sweep_spec(args))
    s = report["summary"]
    log.info("%d curves, %d violations, %d internal errors in %.1fs", s["curves_processed"],
             s["violations"], s["internal_errors"], time.perf_counter() - t0)
    _write_report(args, report, f"sweep_p{args.p}_n{args.n}_g{args.genus}")
    return exit_code(report)


def cmd_verify(args):
    data = _load_json(args.file)
    if "F" in data:
        cover = _load_cover(args.file)
        prof = relative_profile(cover, cap=args.cap)
        _emit(args, {"cover": cover.to_spec(), **prof.as_dict()}, "verify")
        return EXIT_OK if prof.pass_all else EXIT_VIOLATION
    curve = _load_curve(args.file)
    spec = SweepSpec(p=curve.field.p, n=curve.field.m, genus=curve.genus, seed=args.seed,
                     log_base=args.log_base, count_cap=args.cap)
    try:
        result = analyze_curve(curve, spec, "single")
    except errors.ConsistencyFailure as exc:
        result = {"row": {"curve_id": "single"}, "internal_error": str(exc)}
    report = build_report([result], {"seed": args.seed, "file": args.file})
    _write_report(args, report, "verify")
    return exit_code(report)


# --- parser -------------------------------------------------------------------------


def _add_common(parser, suppress):
    """Global flags; subcommand copies default to SUPPRESS so either position works."""

    def d(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--cap", type=int, default=d(1 << 24),
                        help="largest field size q^k enumerated when counting (default 2^24)")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for sampled modes")
    parser.add_argument("--output-dir", default=d(None), help="write reports here instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), default=d("json"))
    parser.add_argument("--log-base", default=d("e"),
                        help="log base for the g^(1/3)/(4 log g) comparison value")
    parser.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)

    p = _Parser(prog="classexp", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_common(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("zeta", parents=[common], help="point counts, L-polynomial, class number")
    s.add_argument("curve", help="curve JSON file ('-' for stdin)")
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("jacobian", parents=[common], help="group structure of Pic^0")
    s.add_argument("curve")
    s.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    s.add_argument("--samples", type=int, default=64)
    s.set_defaults(func=cmd_jacobian)

    s = sub.add_parser("bounds", parents=[common], help="evaluate the exponent bounds")
    for flag in ("g", "q", "gon", "m", "k", "g1", "g2", "gon1"):
        s.add_argument(f"--{flag}", type=int)
    s.add_argument("--deg-f", type=int, default=2, help="degree of the map for the non-fibral bound")
    s.add_argument("--deg-phi", type=int)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("nonfibral", parents=[common], help="count non-fibral degree-k points")
    s.add_argument("curve", nargs="?")
    s.add_argument("--cover", help="cover JSON; counts on the genus-2 curve of the cover")
    s.add_argument("--map", choices=("x", "phi", "x-phi"), default="x")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_nonfibral)

    s = sub.add_parser("relative", parents=[common], help="relative class group of a bielliptic cover")
    s.add_argument("cover")
    s.set_defaults(func=cmd_relative)

    s = sub.add_parser("sweep", parents=[common], help="verify every curve of a given shape")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--genus", type=int, default=2)
    s.add_argument("--models", choices=("odd", "all"), default="odd")
    s.add_argument("--max-curves", type=int)
    s.add_argument("--ks", help="comma-separated primes k for the non-fibral check")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("verify", parents=[common], help="verify one curve or cover file")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"classexp: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except errors.ConsistencyFailure as exc:
        print(f"classexp: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (errors.PreconditionViolated, errors.NoPrimeInInterval, errors.JacobianUnavailable,
            errors.CapExceeded) as exc:
        print(f"classexp: {exc.tag}: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
