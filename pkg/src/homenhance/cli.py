"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 I/O or format error, 3 numerical
degeneracy (constant image, collapsed nodes, undefined gamma, empty partition).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import plots
from .errors import EnhanceMathError, PgmError
from .image_io import read_pgm, sniff_format, write_pgm
from .pipeline import enhance, report_fields, report_serialize
from .statistics import IterationConfig, histogram
from .transfer import EQUALIZING_TARGETS, TargetLevels

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_MATH = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _targets(text: str) -> TargetLevels:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"targets must be four numbers, got {text!r}")
    if len(values) != 4:
        raise argparse.ArgumentTypeError(f"targets must be four numbers, got {len(values)}")
    try:
        return TargetLevels(*values)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--epsilon", type=_positive_float, default=1e-4,
                        help="stopping threshold for the node iteration (unit gray)")
    common.add_argument("--max-iters", type=_positive_int, default=100)
    common.add_argument("--targets", type=_targets, default=EQUALIZING_TARGETS,
                        metavar="G1,GC1,GC2,G2", help="output levels of the four nodes")

    parser = _Parser(prog="homenhance", description="Gray-level enhancement with a generalized homographic transfer curve.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enhance", parents=[common], help="write the enhanced image")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--report", metavar="PATH", help="also write the JSON report here")
    p.add_argument("--format", choices=("p2", "p5"), type=str.lower,
                   help="output PGM flavour (default: same as input)")

    p = sub.add_parser("analyze", parents=[common], help="print the fit report")
    p.add_argument("input")
    p.add_argument("--full", action="store_true", help="include both histograms")

    p = sub.add_parser("curve", parents=[common], help="write the fitted transfer curve")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--format", choices=("csv", "svg"), type=str.lower,
                   help="default: from the output suffix, else csv")
    p.add_argument("--samples", type=int, default=plots.CURVE_SAMPLES, help="CSV rows")

    p = sub.add_parser("histogram", parents=[common], help="write a histogram")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--format", choices=("csv", "svg"), type=str.lower)
    p.add_argument("--which", choices=("original", "enhanced"), default="original")
    return parser


def _plot_format(args) -> str:
    if args.format:
        return args.format
    return "svg" if Path(args.output).suffix.lower() == ".svg" else "csv"


def _run(args) -> int:
    data = Path(args.input).read_bytes()
    img = read_pgm(data)
    cfg = IterationConfig(epsilon=args.epsilon, max_iters=args.max_iters)

    if args.command == "histogram" and args.which == "original":
        h = histogram(img)
        out = plots.histogram_svg(h) if _plot_format(args) == "svg" else plots.histogram_csv(h)
        Path(args.output).write_bytes(out)
        return EXIT_OK

    enhanced, report = enhance(img, args.targets, cfg)

    if args.command == "enhance":
        fmt = (args.format or sniff_format(data)).upper()
        Path(args.output).write_bytes(write_pgm(enhanced, fmt))
        if args.report:
            Path(args.report).write_bytes(report_serialize(report))
        keep = {"x1", "c1", "c2", "x2", "gamma", "alpha1", "alpha2"}
        for key, value in report_fields(report):
            if key in keep:
                print(f"{key}={value}")
    elif args.command == "analyze":
        sys.stdout.write(report_serialize(report, include_histograms=args.full).decode("utf-8"))
    elif args.command == "curve":
        t = report.transfer
        if _plot_format(args) == "svg":
            out = plots.curve_svg(t)
        else:
            if args.samples < 2:
                raise UsageError("--samples must be at least 2")
            out = plots.curve_csv(t, args.samples)
        Path(args.output).write_bytes(out)
    else:
        h = report.histogram_after
        out = plots.histogram_svg(h) if _plot_format(args) == "svg" else plots.histogram_csv(h)
        Path(args.output).write_bytes(out)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except UsageError as exc:
        print(f"homenhance: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnhanceMathError as exc:
        print(f"homenhance: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (PgmError, OSError) as exc:
        print(f"homenhance: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
