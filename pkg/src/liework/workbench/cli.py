"""Command line for the liework checks.

Exit codes: 0 all verdicts as expected, 1 a verdict contradicts the theory (or a
requested property fails), 2 parse/validation error or unknown input,
3 precondition violation.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass

from ..finitegrp import FiniteMetricGroup
from ..invariants import MetricTensor, PreconditionError, isometry_algebra, skew_derivations
from ..liecore import LieAlgebra, is_nilpotent
from . import checks
from .catalog import catalog, lookup
from .formats import (
    ParseError,
    ValidationError,
    detect_kind,
    parse_fmg,
    parse_lie,
    parse_metric_file,
    serialize_fmg,
    serialize_lie,
)
from .report import Check, Report, canonical

EXIT_OK, EXIT_FALSIFIED, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Source:
    name: str
    kind: str
    text: str
    algebra: LieAlgebra | None = None
    metric: MetricTensor | None = None
    group: FiniteMetricGroup | None = None


def load(arg: str) -> Source:
    """Read ``arg`` as a file if it exists, otherwise as a catalog name."""
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
        kind = detect_kind(text)
        if kind == "lie-algebra":
            lf = parse_lie(text)
            return Source(lf.name, kind, text, algebra=lf.algebra, metric=lf.metric)
        m = parse_fmg(text)
        return Source(m.name, kind, text, group=m)
    try:
        entry = lookup(arg)
    except KeyError:
        raise UsageError(f"{arg!r} is neither a readable file nor a catalog entry") from None
    if entry.kind == "lie-algebra":
        p = entry.payload
        return Source(entry.name, entry.kind, serialize_lie(entry.name, p.algebra, p.metric), p.algebra, p.metric)
    return Source(entry.name, entry.kind, serialize_fmg(entry.payload), group=entry.payload)


def _need(src: Source, kind: str) -> None:
    if src.kind != kind:
        raise UsageError(f"{src.name} is a {src.kind}; this command needs a {kind}")


def _metric(src: Source, text: str | None) -> MetricTensor:
    if text is not None:
        return parse_metric_file(text, src.algebra.dim)
    return src.metric or MetricTensor.identity(src.algebra.dim)


def full_lie_checks(src: Source) -> list[Check]:
    g, q = src.algebra, src.metric or MetricTensor.identity(src.algebra.dim)
    out = checks.lie_check(src.name, g)
    out += checks.series_check(src.name, g)
    out += checks.nilradical_check(src.name, g)
    out += checks.derivations_check(src.name, g, q, skew=True)
    if is_nilpotent(g):
        out += checks.nilrad_condition_check(src.name, g, q)
    else:
        try:
            isometry_algebra(g, q)
            refused, reason = False, "isometry algebra built for a non-nilpotent base"
        except PreconditionError as exc:
            refused, reason = True, str(exc)
        out.append(
            Check(
                "isometry-algebra-refused",
                src.name,
                refused,
                {"refused": refused, "skew_derivation_dim": skew_derivations(g, q).dim},
                reason,
            )
        )
    return out


def full_finite_checks(src: Source) -> list[Check]:
    return checks.finite_analyze_check(src.name, src.group) + checks.finite_tfae_check(src.name, src.group)


def full_checks(src: Source) -> list[Check]:
    return full_lie_checks(src) if src.kind == "lie-algebra" else full_finite_checks(src)


def _format_value(v) -> str:
    c = canonical(v)
    if isinstance(c, dict) and "basis" in c and "dim" in c:
        rows = "; ".join(" ".join(r) for r in c["basis"])
        return f"dim {c['dim']} [{rows}]"
    if isinstance(c, list) and c and isinstance(c[0], list) and c[0] and isinstance(c[0][0], list):
        return f"<{len(c)} matrices>"
    if isinstance(c, list) and c and isinstance(c[0], list):
        return "[" + "; ".join(" ".join(str(x) for x in r) for r in c) + "]"
    if isinstance(c, list):
        return "[" + ", ".join(str(x) for x in c) + "]"
    if isinstance(c, bool):
        return "true" if c else "false"
    if isinstance(c, dict):
        return "{" + ", ".join(f"{k}: {_format_value(x)}" for k, x in sorted(c.items())) + "}"
    return str(c)


def print_text(checks_: list[Check], out) -> None:
    for c in checks_:
        print(f"{c.name} {c.subject}: {'PASS' if c.ok else 'FAIL'}", file=out)
        if c.message:
            print(f"  {c.message}", file=out)
        for k in sorted(c.data):
            print(f"  {k} = {_format_value(c.data[k])}", file=out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liework", description="Exact Lie algebra and finite metric group checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help_, target=True, target_help="file or catalog name"):
        sp = sub.add_parser(name, help=help_)
        if target:
            sp.add_argument("target", help=target_help)
        sp.add_argument("--json", action="store_true", help="print the canonical JSON report")
        return sp

    cmd("check", "parse and validate an input")
    cmd("series", "lower central and derived series")
    cmd("nilradical", "radical and nilradical with certificate")
    sp = cmd("derivations", "derivation algebra")
    sp.add_argument("--skew", action="store_true", help="also compute metric-skew derivations")
    sp.add_argument("--metric", help="metric file (defaults to the input's metric or the identity)")
    sp = cmd("isometry-algebra", "n ⋊ skew derivations for a nilpotent base")
    sp.add_argument("--metric", help="metric file")
    sp = cmd("nilrad-condition", "check that the nilradical of the isometry algebra is the base")
    sp.add_argument("--metric", help="metric file")

    fin = sub.add_parser("finite", help="finite metric group checks")
    fsub = fin.add_subparsers(dest="finite_command", required=True)
    for name, help_ in (("analyze", "isometry, translation, stabilizer and automorphism counts"),
                        ("tfae", "the four equivalent conditions on affine isometries")):
        fp = fsub.add_parser(name, help=help_)
        fp.add_argument("target")
        fp.add_argument("--json", action="store_true")

    cat = sub.add_parser("catalog", help="built-in entries")
    csub = cat.add_subparsers(dest="catalog_command", required=True)
    csub.add_parser("list")
    show = csub.add_parser("show")
    show.add_argument("name")

    cmd("verify-all", "run every check on every catalog entry", target=False)
    cmd("report", "run every applicable check on one input", target_help="file or catalog name")
    return p


def run_command(argv: list[str], out=None, err=None) -> tuple[int, Report | None]:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return (EXIT_PARSE if exc.code else EXIT_OK), None

    start = time.perf_counter()
    try:
        if args.command == "catalog":
            if args.catalog_command == "list":
                for e in catalog():
                    print(f"{e.name}\t{e.kind}\t{e.provenance}", file=out)
                return EXIT_OK, None
            src = load(args.name)
            print(src.text, end="", file=out)
            return EXIT_OK, None

        if args.command == "verify-all":
            sources = [load(e.name) for e in catalog()]
            results = [c for s in sources for c in full_checks(s)]
            inputs = [s.text for s in sources]
        else:
            target = args.target
            src = load(target)
            inputs = [src.text]
            cmd = args.command if args.command != "finite" else f"finite-{args.finite_command}"
            if cmd in ("finite-analyze", "finite-tfae"):
                _need(src, "finite-group")
                fn = checks.finite_analyze_check if cmd == "finite-analyze" else checks.finite_tfae_check
                results = fn(src.name, src.group)
            elif cmd == "report":
                results = full_checks(src)
            elif cmd == "check":
                if src.kind == "lie-algebra":
                    results = checks.lie_check(src.name, src.algebra)
                else:
                    results = [Check("check", src.name, True, {"order": src.group.order, "valid": True})]
            else:
                _need(src, "lie-algebra")
                g = src.algebra
                metric_path = getattr(args, "metric", None)
                metric_text = None
                if metric_path:
                    with open(metric_path, encoding="utf-8") as fh:
                        metric_text = fh.read()
                    inputs.append(metric_text)
                if cmd == "series":
                    results = checks.series_check(src.name, g)
                elif cmd == "nilradical":
                    results = checks.nilradical_check(src.name, g)
                elif cmd == "derivations":
                    results = checks.derivations_check(src.name, g, _metric(src, metric_text), skew=args.skew)
                elif cmd == "isometry-algebra":
                    results = checks.isometry_algebra_check(src.name, g, _metric(src, metric_text))
                elif cmd == "nilrad-condition":
                    results = checks.nilrad_condition_check(src.name, g, _metric(src, metric_text))
                else:  # pragma: no cover - argparse restricts the choices
                    raise UsageError(f"unknown command {cmd}")
    except (ParseError, ValidationError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE, None
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=err)
        return EXIT_PRECONDITION, None

    report = Report(inputs, results, time.perf_counter() - start)
    if args.json:
        out.write(report.to_json())
    else:
        print_text(results, out)
    return (EXIT_OK if report.ok else EXIT_FALSIFIED), report


def main(argv: list[str] | None = None) -> int:
    code, _ = run_command(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
