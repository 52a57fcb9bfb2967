"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 out of range / wrong index,
4 retries or work budget exhausted, 5 certificate mismatch.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from dataclasses import dataclass
from fractions import Fraction

from .brauerq import BrauerClassQ, QuaternionPair, index, parse_class, period, quaternion_class, sb_dimension
from .constructions import (
    CurveCertificate,
    InvalidInputError,
    MalformedCertificateError,
    RetriesExhaustedError,
    WrongIndexError,
    build_index2,
    build_index3,
    build_index4_split,
    build_index5_pfaffian,
    plan_index4,
    plan_index5,
    verify_certificate,
)
from .groebner import DEFAULT_PAIR_BUDGET, GroebnerBudgetError

EXIT_OK, EXIT_INPUT, EXIT_RANGE, EXIT_RESOURCE, EXIT_MISMATCH = 0, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class CliConfig:
    seed: int
    height: int = 3
    max_retries: int = 20
    pair_budget: int = DEFAULT_PAIR_BUDGET
    output: str = "json"

    def __post_init__(self):
        if self.height < 1 or self.max_retries < 1 or self.pair_budget < 1:
            raise CliError("height, max-retries and pair-budget must be positive", EXIT_INPUT)
        if not 0 <= self.seed < 2**64:
            raise CliError("seed must be a 64-bit unsigned integer", EXIT_INPUT)

    def to_json(self) -> dict:
        return {"seed": self.seed, "height": self.height, "max_retries": self.max_retries,
                "pair_budget": self.pair_budget}


def _int_arg(text: str) -> int:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value.denominator != 1:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _read_class(args) -> tuple[BrauerClassQ, dict]:
    try:
        if getattr(args, "quaternion", None):
            q = QuaternionPair.parse(args.quaternion)
            return quaternion_class(q), {"quaternion": q.to_json()}
        if getattr(args, "invariants", None):
            c = parse_class(args.invariants)
            return c, {"alpha": c.to_json()}
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse algebra: {exc}", EXIT_INPUT)
    raise CliError("give --quaternion a,b or --invariants JSON", EXIT_INPUT)


def _config(args) -> CliConfig:
    seed = args.seed if args.seed is not None else secrets.randbits(64)
    return CliConfig(seed=seed, height=args.height, max_retries=args.max_retries,
                     pair_budget=args.pair_budget, output=args.output)


def _emit(payload: dict, text: str, output: str, out_file: str | None = None):
    body = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out_file:
        with open(out_file, "w", encoding="utf-8") as fh:
            fh.write(body)
    if output == "json":
        if not out_file:
            sys.stdout.write(body)
    else:
        print(text)
        if out_file:
            print(f"written to {out_file}")


def _case_for(k: int) -> int | None:
    return k if 2 <= k <= 5 else None


def cmd_algebra_analyze(args) -> int:
    alpha, inputs = _read_class(args)
    per, ind = period(alpha), index(alpha)
    if ind > 5:
        raise CliError(f"index {ind} is out of range: constructions exist for index <= 5 "
                       f"(Severi-Brauer dimension <= 4)", EXIT_RANGE)
    report = {
        "inputs": inputs,
        "class": alpha.to_json(),
        "period": per,
        "index": ind,
        "sb_dimension": sb_dimension(alpha),
        "case": _case_for(ind),
    }
    lines = [
        "invariants: " + (", ".join(f"{p}: {v}" for p, v in alpha.invariants.items()) or "(split)"),
        f"period: {per}",
        f"index: {ind}",
        f"Severi-Brauer dimension: {sb_dimension(alpha)}",
        f"construction case: {report['case'] if report['case'] else 'none (split class)'}",
    ]
    _emit(report, "\n".join(lines), args.output)
    return EXIT_OK


def cmd_plan(args) -> int:
    alpha, inputs = _read_class(args)
    k = index(alpha)
    try:
        plan = plan_index4(alpha) if k == 4 else plan_index5(alpha)
    except WrongIndexError:
        hint = f"; use `curve build --case {k}`" if k in (2, 3) else ""
        raise CliError(f"plan needs a class of index 4 or 5, got index {k}{hint}", EXIT_RANGE)
    payload = plan.to_json()
    lines = [
        f"index case: {plan.index_case}",
        f"Y class: 2α, Severi-Brauer dimension {plan.y_dim}",
        f"bundle on X x Y: {plan.bundle.label()}",
        f"obstruction: {plan.arithmetic}",
        f"bundle rank on X: {plan.bundle_rank}",
        f"global sections: {plan.expected_sections}",
    ]
    _emit(payload, "\n".join(lines), args.output, args.out)
    return EXIT_OK


def _parse_pair(text: str) -> tuple[Fraction, Fraction]:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 2:
        raise CliError(f"expected 'a,b', got {text!r}", EXIT_INPUT)
    try:
        return Fraction(parts[0]), Fraction(parts[1])
    except (ValueError, ZeroDivisionError):
        raise CliError(f"cannot parse {text!r}", EXIT_INPUT)


def cmd_curve_build(args) -> int:
    cfg = _config(args)
    common = dict(height=cfg.height, seed=cfg.seed, max_retries=cfg.max_retries,
                  pair_budget=cfg.pair_budget)
    alpha = None
    if args.invariants:
        alpha, _ = _read_class(args)
    try:
        if args.case == 2:
            if not args.quaternion:
                raise CliError("case 2 needs --quaternion a,b", EXIT_INPUT)
            a, b = _parse_pair(args.quaternion)
            cert = build_index2(a, b, **common)
        elif args.case == 3:
            if args.cyclic and args.split:
                raise CliError("--cyclic and --split are exclusive", EXIT_INPUT)
            if args.cyclic:
                cert = build_index3("cyclic", _parse_pair(args.cyclic), **common)
            else:
                cert = build_index3("split", **common)
        elif args.case == 4:
            cert = build_index4_split(alpha=alpha, **common)
        else:
            cert = build_index5_pfaffian(alpha=alpha, **common)
    except WrongIndexError as exc:
        raise CliError(str(exc), EXIT_RANGE)
    except InvalidInputError as exc:
        raise CliError(str(exc), EXIT_INPUT)
    except (RetriesExhaustedError, GroebnerBudgetError) as exc:
        raise CliError(str(exc), EXIT_RESOURCE)
    payload = cert.to_json()
    payload["config"] = cfg.to_json()
    r = cert.report
    text = (f"{cert.construction}: degree {r['degree']}, arithmetic genus {r['genus']}, "
            f"smooth {r['smooth']} (seed {cfg.seed}, retries {cert.retries})\n"
            + "\n".join("  " + g.to_text() for g in cert.generators))
    _emit(payload, text, args.output, args.out)
    return EXIT_OK


def cmd_curve_verify(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            data = json.load(fh)
        cert = CurveCertificate.from_json(data)
    except (OSError, json.JSONDecodeError, MalformedCertificateError, AttributeError) as exc:
        raise CliError(f"cannot read certificate: {exc}", EXIT_INPUT)
    try:
        report = verify_certificate(cert, pair_budget=args.pair_budget)
    except GroebnerBudgetError as exc:
        raise CliError(str(exc), EXIT_RESOURCE)
    except MalformedCertificateError as exc:
        raise CliError(str(exc), EXIT_INPUT)
    payload = {"ok": report.ok, "claimed": report.claimed, "actual": report.actual,
               "mismatches": {k: {"claimed": c, "actual": a} for k, (c, a) in report.mismatches.items()}}
    text = "certificate verified" if report.ok else "MISMATCH\n" + "\n".join(report.diff_lines())
    _emit(payload, text, args.output)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brauercurves",
        description="Genus one curves splitting Brauer classes of index <= 5 over Q.")
    sub = parser.add_subparsers(dest="command", required=True)

    def algebra_flags(p):
        p.add_argument("--quaternion", metavar="A,B", help="quaternion algebra (a, b)")
        p.add_argument("--invariants", metavar="JSON",
                       help="local invariants, e.g. '{2:1/4,3:3/4}' or the certificate JSON form")

    def output_flags(p):
        p.add_argument("--output", choices=("json", "text"), default="json")

    algebra = sub.add_parser("algebra", help="inspect a central simple algebra")
    algebra_sub = algebra.add_subparsers(dest="action", required=True)
    analyze = algebra_sub.add_parser("analyze", help="period, index and construction case")
    algebra_flags(analyze)
    output_flags(analyze)
    analyze.set_defaults(func=cmd_algebra_analyze)

    plan = sub.add_parser("plan", help="obstruction bookkeeping for index 4 and 5")
    algebra_flags(plan)
    output_flags(plan)
    plan.add_argument("--out", metavar="FILE")
    plan.set_defaults(func=cmd_plan)

    curve = sub.add_parser("curve", help="build or verify curve certificates")
    curve_sub = curve.add_subparsers(dest="action", required=True)
    build = curve_sub.add_parser("build", help="build a certified genus one curve")
    build.add_argument("--case", type=int, choices=(2, 3, 4, 5), required=True)
    algebra_flags(build)
    build.add_argument("--cyclic", metavar="A,B", help="case 3: diagonal cubic a x^3 + b y^3 + z^3")
    build.add_argument("--split", action="store_true", help="case 3: random plane cubic (default)")
    build.add_argument("--seed", type=_int_arg)
    build.add_argument("--height", type=_int_arg, default=3)
    build.add_argument("--max-retries", type=_int_arg, default=20)
    build.add_argument("--pair-budget", type=_int_arg, default=DEFAULT_PAIR_BUDGET)
    build.add_argument("--out", metavar="FILE")
    output_flags(build)
    build.set_defaults(func=cmd_curve_build)

    verify = curve_sub.add_parser("verify", help="re-certify a certificate file")
    verify.add_argument("path")
    verify.add_argument("--pair-budget", type=_int_arg, default=DEFAULT_PAIR_BUDGET)
    output_flags(verify)
    verify.set_defaults(func=cmd_curve_verify)
    return parser


_VALUE_FLAGS = ("--quaternion", "--cyclic", "--invariants")


def _join_signed_values(argv: list[str]) -> list[str]:
    """Turn ``--quaternion -1,-1`` into ``--quaternion=-1,-1`` so argparse keeps the value."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_join_signed_values(argv))
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
