"""boundfigs command line: render auxbounds CSV files to images."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import FIXED, VLSF, CsvFormatError, FigureSpec, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="boundfigs", description="Render bound-comparison figures from CSV."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one CSV to an image")
    p.add_argument("--in", dest="csv_path", type=Path, required=True)
    p.add_argument("--kind", choices=(FIXED, VLSF), required=True)
    p.add_argument("--out", type=Path, required=True,
                   help="output image (.svg or .png)")
    p.add_argument("--title", default=None)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = render(FigureSpec(args.csv_path, args.kind, args.out, args.title))
    except (CsvFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
