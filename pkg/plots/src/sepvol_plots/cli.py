"""Command-line entry point: render sepvol CSV outputs to figures."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FIGURE_IDS, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepvol-plots", description="Render figures from sepvol CSV outputs."
    )
    subs = parser.add_subparsers(dest="command", required=True)
    rend = subs.add_parser("render", help="render one figure")
    rend.add_argument("--figure", choices=FIGURE_IDS, required=True)
    rend.add_argument("--input", nargs="+", type=Path, required=True,
                      help="input CSV file(s); the first is the data table")
    rend.add_argument("--output", type=Path, required=True,
                      help="output image (.png or .svg)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        render(args.figure, args.input, args.output)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"rendered {args.figure} -> {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
