"""``mockxi`` command line: expand, verify, congruence, scan, paper-suite.

Exit status: 0 success, 1 a mathematical check failed, 2 usage, parse or
evaluation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .congruence import CongruenceClaim, InsufficientOrderError, primitive_filter, scan, verify_congruence
from .qexpr import QExprError, evaluate, parse_corpus_line
from .result import CheckResult
from .series import EXACT, NonUnitError, RingMismatchError, Zmod, first_mismatch
from .suite import DEFAULT_CONFIG, GROUPS, generated_at, blocking_failures, dumps_report, full_report, strip_timing

DEFAULT_ORDER = 200
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _modulus(text: str) -> int:
    m = int(text)
    if not 2 <= m < 2**32:
        raise argparse.ArgumentTypeError("modulus must satisfy 2 <= m < 2^32")
    return m


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _progression(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected A,B") from None
    if a < 1 or not 0 <= b < a:
        raise argparse.ArgumentTypeError("need A >= 1 and 0 <= B < A")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mockxi", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, order=True, mod=True):
        if order:
            sp.add_argument("--order", type=_nonneg, default=None, help=f"truncation order (default {DEFAULT_ORDER})")
        if mod:
            sp.add_argument("--mod", type=_modulus, default=None, help="work in Z/mZ")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("expand", help="print coefficients of an expression")
    sp.add_argument("expr")
    common(sp)

    sp = sub.add_parser("verify", help="check LHS == RHS [order N] [mod m]")
    sp.add_argument("identity")
    common(sp)

    sp = sub.add_parser("congruence", help="check c(An+B) = 0 (mod m)")
    sp.add_argument("expr")
    sp.add_argument("--progression", type=_progression, required=True, metavar="A,B")
    sp.add_argument("--count", type=_nonneg, default=None, help="number of terms (default: all An+B <= order)")
    common(sp)

    sp = sub.add_parser("scan", help="find all classes c(An+B) = 0 (mod m) with A <= max-A")
    sp.add_argument("expr")
    sp.add_argument("--max-A", type=int, default=16, dest="max_A")
    sp.add_argument("--count", type=int, default=200)
    common(sp, order=False)

    sp = sub.add_parser("paper-suite", help="run the full catalog of checks")
    sp.add_argument("--report", metavar="PATH", help="write the JSON report here")
    sp.add_argument("--group", action="append", choices=GROUPS, help="run only this group (repeatable)")
    sp.add_argument("--scale", type=float, default=1.0, help="multiply every default order by this factor")
    common(sp, order=False, mod=False)
    return p


def _ring(m: Optional[int]):
    return EXACT if m is None else Zmod(m)


def _single_report(result: CheckResult, config: dict) -> dict:
    summary = {s: int(result.status == s) for s in ("pass", "fail", "skipped")}
    return {
        "suite_version": __version__,
        "generated_at": generated_at(),
        "config": config,
        "results": strip_timing([result.to_dict()]),
        "summary": summary,
    }


def cmd_expand(args, out) -> int:
    order = DEFAULT_ORDER if args.order is None else args.order
    s = evaluate(args.expr, order, _ring(args.mod))
    if args.format == "json":
        out.write(json.dumps(list(s.coeffs)) + "\n")
    else:
        for n, c in enumerate(s.coeffs):
            out.write(f"{n} {c}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    line = parse_corpus_line(args.identity)
    if line is None:
        raise UsageError("empty identity")
    order = args.order if args.order is not None else (line.order if line.order is not None else DEFAULT_ORDER)
    m = args.mod if args.mod is not None else line.modulus
    ring = _ring(m)
    a = evaluate(line.lhs, order, ring)
    b = evaluate(line.rhs, order, ring)
    bad = first_mismatch(a, b)
    result = CheckResult(args.identity.split("#", 1)[0].strip(), "", "identity", order,
                         "pass" if bad is None else "fail", bad)
    if args.format == "json":
        config = {"order": order} if m is None else {"order": order, "mod": m}
        out.write(dumps_report(_single_report(result, config)))
    elif bad is None:
        where = "" if m is None else f" (mod {m})"
        out.write(f"ok: sides agree to order {order}{where}\n")
    else:
        out.write(f"mismatch at index {bad}: lhs {a.coeffs[bad]}, rhs {b.coeffs[bad]}\n")
    return EXIT_OK if bad is None else EXIT_FAIL


def cmd_congruence(args, out) -> int:
    if args.mod is None:
        raise UsageError("congruence needs --mod")
    A, B = args.progression
    if args.count is not None:
        count = args.count
    else:
        order = DEFAULT_ORDER if args.order is None else args.order
        count = 0 if order < B else (order - B) // A + 1
    order = max(A * (count - 1) + B, 0)
    s = evaluate(args.expr, order, Zmod(args.mod))
    claim = CongruenceClaim(A, B, args.mod)
    result = verify_congruence(s, claim, count, id=f"{args.expr}: c({A}n+{B}) mod {args.mod}")
    if args.format == "json":
        config = {"A": A, "B": B, "mod": args.mod, "count": count}
        out.write(dumps_report(_single_report(result, config)))
    elif result.passed:
        out.write(f"ok: c({A}n+{B}) = 0 (mod {args.mod}) for 0 <= n < {count}\n")
    else:
        n = result.first_failure
        out.write(f"fails at n = {n}: c({A * n + B}) = {s.coeffs[A * n + B]} (mod {args.mod})\n")
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_scan(args, out) -> int:
    if args.mod is None:
        raise UsageError("scan needs --mod")
    if args.max_A < 1:
        raise UsageError("--max-A must be >= 1")
    order = args.max_A * args.count - 1
    s = evaluate(args.expr, max(order, 0), Zmod(args.mod))
    raw = scan(s, args.mod, args.max_A, args.count)
    prim = primitive_filter(raw)
    if args.format == "json":
        doc = {
            "expr": args.expr,
            "mod": args.mod,
            "max_A": args.max_A,
            "count": args.count,
            "raw": [c.to_dict() for c in raw],
            "primitive": [c.to_dict() for c in prim],
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        prim_set = set(prim)
        for c in raw:
            tag = "  primitive" if c in prim_set else ""
            out.write(f"{c.A} {c.B}{tag}\n")
        out.write(f"{len(raw)} classes, {len(prim)} primitive\n")
    return EXIT_OK


def cmd_paper_suite(args, out) -> int:
    if args.scale < 0:
        raise UsageError("--scale must be >= 0")
    config = {g: int(n * args.scale) for g, n in DEFAULT_CONFIG.items()}
    groups = args.group or list(GROUPS)
    report = full_report({g: config[g] for g in groups}, groups=groups)
    text = dumps_report(report)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    blocking = blocking_failures(report)
    if args.format == "json":
        out.write(text)
    else:
        for r in report["results"]:
            line = f"{r['status']:7s} {r['id']}  (order {r['order_checked']})"
            if r["first_failure"] is not None:
                line += f" first failure at {r['first_failure']}"
            if r["adjudication"] is not None:
                line += f" [adjudicated: {r['adjudication']}]"
            if r["kind"] == "conjecture":
                line += " [conjecture: finite evidence only]"
            out.write(line + "\n")
        sm = report["summary"]
        out.write(f"pass {sm['pass']}, fail {sm['fail']} ({len(blocking)} blocking), skipped {sm['skipped']}\n")
    return EXIT_FAIL if blocking else EXIT_OK


COMMANDS = {
    "expand": cmd_expand,
    "verify": cmd_verify,
    "congruence": cmd_congruence,
    "scan": cmd_scan,
    "paper-suite": cmd_paper_suite,
}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, QExprError, NonUnitError, RingMismatchError, InsufficientOrderError, ValueError, OSError) as exc:
        err.write(f"mockxi: {exc}\n")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
