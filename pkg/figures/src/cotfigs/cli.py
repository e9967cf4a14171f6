"""CLI: cotsim-figures render --kind K --in FILES --out PATH."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, FigureSpec, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cotsim-figures")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("render")
    r.add_argument("--kind", required=True, choices=KINDS)
    r.add_argument("--in", dest="inputs", nargs="+", required=True,
                   help="input CSV files")
    r.add_argument("--out", required=True,
                   help="output path; an extension pins the format, otherwise "
                        "both .png and .svg are written")
    r.add_argument("--formats", nargs="+", default=["png", "svg"],
                   choices=["png", "svg"])
    r.add_argument("--logx", action="store_true")
    r.add_argument("--logy", action="store_true")
    r.add_argument("--title")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            kind=args.kind,
            inputs=tuple(args.inputs),
            out=args.out,
            formats=tuple(args.formats),
            logx=args.logx,
            logy=args.logy,
            title=args.title,
        )
        written = render(spec)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
