"""Command-line interface: evaluate family members, run the identity
catalog, verify user-stated identities, and emit numeric specializations.

Exit codes: 0 when every requested check passes, 1 when at least one
identity cell fails, 2 for usage, parse, or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import idlang
from .identities import catalog_by_id, run_catalog
from .poly import canonical_text
from .report import CheckReport, DomainError
from .sequences import SeqKind, seq


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibluc",
        description="Exact bivariate Fibonacci/Lucas polynomial toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate F[n] or L[n], optionally composed or at a point")
    p_eval.add_argument("kind", choices=["F", "L"])
    p_eval.add_argument("n", type=int)
    p_eval.add_argument("--xsub", metavar="EXPR", help="expression substituted for x")
    p_eval.add_argument("--ysub", metavar="EXPR", help="expression substituted for y")
    p_eval.add_argument("--at", metavar="X0,Y0", help="evaluate numerically at a rational point")

    p_cat = sub.add_parser("catalog", help="verify the built-in identity catalog over an index grid")
    p_cat.add_argument("--n-max", type=int, default=10)
    p_cat.add_argument("--k-max", type=int, default=6)
    p_cat.add_argument("--ids", metavar="EQnn,...", help="comma-separated case ids to run")
    p_cat.add_argument("--json", action="store_true", help="structured output, one record per cell")

    p_ver = sub.add_parser("verify", help="check a user-stated identity over index ranges")
    p_ver.add_argument("identity", nargs="?", help="identity source, e.g. 'y*F[n-1]+F[n+1]=L[n]'")
    p_ver.add_argument(
        "--range",
        dest="ranges",
        action="append",
        default=[],
        metavar="n=a..b[,k=c..d]",
        help="inclusive index ranges (defaults: n=0..10, k=1..6)",
    )
    p_ver.add_argument(
        "--corpus",
        nargs="?",
        const="",
        default=None,
        metavar="PATH",
        help="verify the shipped identity corpus (or the corpus file at PATH)",
    )
    p_ver.add_argument("--ids", metavar="EQnn,...", help="restrict corpus verification to these ids")
    p_ver.add_argument("--n-max", type=int, default=10, help="corpus grid upper bound for n")
    p_ver.add_argument("--k-max", type=int, default=6, help="corpus grid upper bound for k")
    p_ver.add_argument("--json", action="store_true", help="structured output, one record per cell")

    p_seq = sub.add_parser("sequence", help="emit the numeric sequence at a rational point")
    p_seq.add_argument("kind", choices=["F", "L"])
    p_seq.add_argument("--x", required=True, metavar="X0")
    p_seq.add_argument("--y", required=True, metavar="Y0")
    p_seq.add_argument("--count", type=int, required=True)

    return parser


class _UsageError(Exception):
    pass


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"not a rational number: {text!r} ({exc})") from None


def _parse_ranges(args: list[str]) -> dict[str, tuple[int, int]]:
    ranges: dict[str, tuple[int, int]] = {}
    for chunk in args:
        for part in chunk.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part or ".." not in part:
                raise _UsageError(f"bad range {part!r}, expected name=low..high")
            name, _, span = part.partition("=")
            low_text, _, high_text = span.partition("..")
            try:
                low, high = int(low_text), int(high_text)
            except ValueError:
                raise _UsageError(f"bad range bounds in {part!r}") from None
            ranges[name.strip()] = (low, high)
    return ranges


def _parse_ids(text: str | None) -> list[str] | None:
    if text is None:
        return None
    return [item.strip() for item in text.split(",") if item.strip()]


def _substitution(expr_text: str | None, default):
    if expr_text is None:
        return default
    node = idlang.parse_expression(expr_text)
    free = idlang.free_meta_vars(node)
    if free:
        raise _UsageError(
            f"substitution {expr_text!r} has free meta-variable(s): {', '.join(sorted(free))}"
        )
    return idlang.evaluate(node, {})


def _cmd_eval(args) -> int:
    kind = SeqKind.FIB if args.kind == "F" else SeqKind.LUC
    if args.n < 0:
        raise _UsageError("n must be nonnegative")
    if args.at is not None:
        if args.xsub is not None or args.ysub is not None:
            raise _UsageError("--at cannot be combined with --xsub/--ysub")
        x_text, sep, y_text = args.at.partition(",")
        if not sep:
            raise _UsageError("--at expects two rationals, e.g. --at 1,1")
        value = seq(kind, args.n, _parse_rational(x_text), _parse_rational(y_text))
        print(value)
        return 0
    from .poly import X, Y

    x_arg = _substitution(args.xsub, X)
    y_arg = _substitution(args.ysub, Y)
    print(canonical_text(seq(kind, args.n, x_arg, y_arg)))
    return 0


def _emit_report(report: CheckReport, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report.to_records(), indent=2))
    else:
        print(report.to_text())
        failures = report.failures()
        total = len(report.cells)
        if failures:
            first = failures[0]
            where = ", ".join(
                part
                for part in (
                    f"n={first.n}" if first.n is not None else "",
                    f"k={first.k}" if first.k is not None else "",
                )
                if part
            )
            print(f"{len(failures)} of {total} cells FAILED")
            print(f"first counterexample: {first.case_id} at {where}: {first.lhs!r} vs {first.rhs!r}")
        else:
            print(f"all {total} cells pass")
    return 0 if report.all_passed else 1


def _cmd_catalog(args) -> int:
    report = run_catalog(args.n_max, args.k_max, ids=_parse_ids(args.ids))
    return _emit_report(report, args.json)


def _corpus_report(args) -> CheckReport:
    path = args.corpus if args.corpus else None
    entries = idlang.load_corpus(path)
    wanted = _parse_ids(args.ids)
    if wanted is not None:
        known = {entry.case_id for entry in entries}
        unknown = [i for i in wanted if i not in known]
        if unknown:
            raise _UsageError(f"unknown corpus id(s): {', '.join(unknown)}")
        entries = [entry for entry in entries if entry.case_id in wanted]
    cases = catalog_by_id()
    reports = []
    for entry in entries:
        case = cases.get(entry.case_id)
        n_min = case.n_min if case else 0
        k_min = case.k_min if case and case.is_binary else 1
        ranges = {"n": (n_min, args.n_max), "k": (k_min, args.k_max)}
        reports.append(idlang.check(entry.ast, ranges, case_id=entry.case_id))
    return CheckReport.combine(reports)


def _cmd_verify(args) -> int:
    if args.corpus is not None:
        if args.identity is not None:
            raise _UsageError("give either an identity or --corpus, not both")
        return _emit_report(_corpus_report(args), args.json)
    if args.identity is None:
        raise _UsageError("an identity (or --corpus) is required")
    ast = idlang.parse(args.identity)
    ranges = {"n": (0, 10), "k": (1, 6)}
    ranges.update(_parse_ranges(args.ranges))
    report = idlang.check(ast, ranges)
    return _emit_report(report, args.json)


def _cmd_sequence(args) -> int:
    if args.count < 1:
        raise _UsageError("--count must be at least 1")
    kind = SeqKind.FIB if args.kind == "F" else SeqKind.LUC
    x0 = _parse_rational(args.x)
    y0 = _parse_rational(args.y)
    u_prev, u_cur = (Fraction(0), Fraction(1)) if kind is SeqKind.FIB else (Fraction(2), x0)
    for index in range(args.count):
        if index == 0:
            value = u_prev
        elif index == 1:
            value = u_cur
        else:
            u_prev, u_cur = u_cur, x0 * u_cur + y0 * u_prev
            value = u_cur
        print(value)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "eval": _cmd_eval,
        "catalog": _cmd_catalog,
        "verify": _cmd_verify,
        "sequence": _cmd_sequence,
    }
    try:
        return handlers[args.command](args)
    except idlang.ParseError as exc:
        print(f"parse error at {exc}", file=sys.stderr)
        return 2
    except (_UsageError, DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
