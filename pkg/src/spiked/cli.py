"""Command-line front end.

    spiked gen --l 1 --count 6
    spiked bracket --dim 0 --a 7,1 --b 7,5 --digits 8
    spiked physical --dim 3 --l 2 --count 6
    spiked gram --dim 3 --l 0 --kmax 9 --format json
    spiked bases --dim 3 --l 0 --kmax 9
    spiked spectrum --l 1 --count 3
    spiked verify all

``--dim 0`` selects the full-line measure; ``--dim N`` (N >= 1) the radial
measure in N dimensions.  Exit status is 0 on success, 1 on domain errors
(non-integrable brackets, failing verification) and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from itertools import islice

from . import verify
from .exactnum import ROUNDING_MODES, TRUNCATE, to_decimal
from .laurent import LaurentSeries, render_latex, render_text
from .measure import (
    MeasureSpec,
    NonIntegrable,
    bracket_normalized,
    bracket_raw,
    gram,
    physical_pattern,
)
from .operators import StateLabel, spectrum, wavefunction

FORMATS = ("plain", "json", "latex")


@dataclass(frozen=True)
class CliConfig:
    digits: int = 8
    format: str = "plain"
    count: int = 6


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _label(text: str) -> StateLabel:
    try:
        return StateLabel.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _ratstr(q) -> str:
    return f"{q.numerator}/{q.denominator}"


def _series_line(f: LaurentSeries) -> str:
    return f"{f!r} -- {render_text(f)}"


def _latex_table(header: list[str], rows: list[list[str]]) -> str:
    cols = "|" + "l|" * len(header)
    lines = [rf"\begin{{tabular}}{{{cols}}}", r"\hline", " & ".join(header) + r" \\", r"\hline"]
    lines += [" & ".join(row) + r" \\" for row in rows]
    lines += [r"\hline", r"\end{tabular}"]
    return "\n".join(lines)


def cmd_gen(args) -> str:
    if args.k is not None:
        ks = [args.k]
    else:
        ks = list(range(args.count))
    series = [wavefunction(args.l, k) for k in ks]
    if args.format == "json":
        if args.k is not None:
            return _dumps(series[0].to_json())
        return _dumps([f.to_json() for f in series])
    if args.format == "latex":
        if args.k is not None:
            return f"${render_latex(series[0])}$"
        rows = [[str(k), f"${render_latex(f)}$"] for k, f in zip(ks, series)]
        return _latex_table(["$k$", f"$f_{{{args.l},k}}(x)$"], rows)
    return "\n".join(_series_line(f) for f in series)


def cmd_bracket(args) -> str:
    spec = MeasureSpec(args.dim)
    if args.normalized:
        text = bracket_normalized(spec, args.a, args.b, args.digits, args.rounding)
        exact = None
    else:
        exact = bracket_raw(spec, args.a, args.b)
        text = to_decimal(exact, args.digits, args.rounding)
    if args.format == "json":
        out = {"dim": args.dim, "a": list(args.a), "b": list(args.b), "decimal": text}
        if exact is not None:
            out.update(rat=_ratstr(exact.rat), pi=_ratstr(exact.pi))
        return _dumps(out)
    if args.format == "latex":
        return rf"$\langle {args.a.l},{args.a.k} | {args.b.l},{args.b.k} \rangle = {text}$"
    return text


def cmd_physical(args) -> str:
    flags = list(islice(physical_pattern(args.dim, args.l), args.count))
    if args.format == "json":
        return _dumps(flags)
    if args.format == "latex":
        return _latex_table([str(k) for k in range(args.count)], [[str(f) for f in flags]])
    return " ".join(str(f) for f in flags)


def cmd_gram(args) -> str:
    report = gram(args.dim, args.l, args.kmax)
    if args.format == "json":
        return _dumps(report.to_json())
    cells = [[to_decimal(x, args.digits) for x in row] for row in report.matrix]
    if args.format == "latex":
        rows = [[str(k)] + row for k, row in zip(report.labels, cells)]
        return _latex_table(["$k$"] + [str(k) for k in report.labels], rows)
    width = max([len(c) for row in cells for c in row] + [len(str(k)) for k in report.labels])
    lines = ["k".rjust(3) + " " + " ".join(str(k).rjust(width) for k in report.labels)]
    for k, row in zip(report.labels, cells):
        lines.append(str(k).rjust(3) + " " + " ".join(c.rjust(width) for c in row))
    return "\n".join(lines)


def cmd_bases(args) -> str:
    report = gram(args.dim, args.l, args.kmax)
    if args.format == "json":
        partition = report.partition if report.partition is not None else "none"
        return _dumps(
            {"dim": args.dim, "l": args.l, "ks": report.labels, "partition": partition, "step": report.step}
        )
    if report.partition is None:
        msg = "no consistent pattern"
        if report.violation:
            msg += f" (first violating pair: {report.violation[0]},{report.violation[1]})"
        return msg
    if args.format == "latex":
        rows = [[str(report.step), "$" + ", ".join(map(str, c)) + "$"] for c in report.partition]
        return _latex_table([r"$\Delta k$", "$k$"], rows)
    classes = ["{" + ",".join(map(str, c)) + "}" for c in report.partition]
    return f"step {report.step}\n" + "\n".join(classes)


def cmd_spectrum(args) -> str:
    energies = spectrum(args.l, args.count)
    if args.format == "json":
        return _dumps(energies)
    if args.format == "latex":
        return _latex_table([f"$E_{{{args.l},{k}}}$" for k in range(args.count)], [[str(e) for e in energies]])
    return " ".join(map(str, energies))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spiked", description="Spiked harmonic oscillator toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, count=False, digits=False):
        p.add_argument("--format", choices=FORMATS, default=CliConfig.format)
        if count:
            p.add_argument("--count", type=_positive, default=CliConfig.count)
        if digits:
            p.add_argument("--digits", type=_positive, default=CliConfig.digits)

    p = sub.add_parser("gen", help="generate wavefunction factors f_{l,k}")
    p.add_argument("--l", type=_nonneg, required=True)
    which = p.add_mutually_exclusive_group()
    which.add_argument("--k", type=_nonneg)
    which.add_argument("--count", type=_positive, default=CliConfig.count)
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bracket", help="exact bracket of two states")
    p.add_argument("--dim", type=_nonneg, required=True)
    p.add_argument("--a", type=_label, required=True)
    p.add_argument("--b", type=_label, required=True)
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--rounding", choices=ROUNDING_MODES, default=TRUNCATE)
    common(p, digits=True)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("physical", help="square-integrability pattern over k")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--l", type=_nonneg, required=True)
    common(p, count=True)
    p.set_defaults(func=cmd_physical)

    for name, func, help_ in (
        ("gram", cmd_gram, "Gram matrix of admissible states"),
        ("bases", cmd_bases, "orthogonal basis partition"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--dim", type=_nonneg, required=True)
        p.add_argument("--l", type=_nonneg, required=True)
        p.add_argument("--kmax", type=_positive, required=True)
        common(p, digits=name == "gram")
        p.set_defaults(func=func)

    p = sub.add_parser("spectrum", help="energies E_{l,k} in units of hbar*omega/2")
    p.add_argument("--l", type=_nonneg, required=True)
    common(p, count=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run verification suites")
    # checked in main(): older argparse rejects an empty list against choices
    p.add_argument("suites", nargs="*", metavar="SUITE", help=f"one of {', '.join(verify.SUITES)} or all")
    p.set_defaults(func=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        wanted = args.suites or ["all"]
        unknown = [s for s in wanted if s != "all" and s not in verify.SUITES]
        if unknown:
            parser.error(f"unknown suite {unknown[0]!r}")
        names = list(verify.SUITES) if "all" in wanted else wanted
        results = verify.run(names)
        for res in results:
            print(res.summary())
        return 0 if all(r.passed for r in results) else 1
    try:
        print(args.func(args))
    except NonIntegrable as exc:
        print(f"spiked: {exc}", file=sys.stderr)
        return 1
    return 0
