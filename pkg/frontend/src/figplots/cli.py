"""`render_figures` entry point."""
from __future__ import annotations

import argparse
import sys

from .io import SchemaError
from .render import FIGURE_SPECS, render_preset


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render_figures",
        description="Render dimerdyn CSV datasets as figures")
    parser.add_argument("--preset", required=True,
                        choices=sorted(FIGURE_SPECS),
                        help="figure preset to render")
    parser.add_argument("--data", required=True,
                        help="directory holding <preset>.csv (+ manifest.json)")
    parser.add_argument("--out", required=True,
                        help="output directory for <preset>.png")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out_path = render_preset(args.preset, args.data, args.out)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(out_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
