"""Batch figure rendering from chiralwalk CSV outputs."""

from __future__ import annotations

import argparse
import sys

from .figures import FigureSpec, render
from .io import SchemaError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walkplots",
        description="Render heatmaps, edge-state curves, and band plots from "
        "chiralwalk CSV files.",
    )
    parser.add_argument("kind", choices=["heatmap", "edge-lines", "band"])
    parser.add_argument("input", help="input CSV path")
    parser.add_argument("output", help="output image path (png, pdf, svg)")
    parser.add_argument("--value-column", default="F", help="sweep column for heatmaps")
    parser.add_argument("--xlabel", default=None)
    parser.add_argument("--ylabel", default=None)
    parser.add_argument("--title", default=None)
    parser.add_argument(
        "--color-bounds",
        default=None,
        metavar="LO,HI",
        help="fix the heatmap color scale",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    bounds = None
    if args.color_bounds is not None:
        try:
            lo, hi = (float(v) for v in args.color_bounds.split(","))
        except ValueError:
            print(f"error: bad --color-bounds {args.color_bounds!r}", file=sys.stderr)
            return 2
        bounds = (lo, hi)
    spec = FigureSpec(
        input_path=args.input,
        kind=args.kind,
        output_path=args.output,
        value_column=args.value_column,
        xlabel=args.xlabel,
        ylabel=args.ylabel,
        title=args.title,
        color_bounds=bounds,
    )
    try:
        render(spec)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
