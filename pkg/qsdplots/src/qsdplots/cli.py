"""Command-line front end: `plot fig1 ...` and `plot fig2 ...`.

Exit codes: 0 success, 1 usage error, 2 schema or I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .rendering import PlotSpec, SchemaError, render


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plot", description=__doc__)
    sub = parser.add_subparsers(dest="kind", required=True)

    p1 = sub.add_parser("fig1", help="bound-tightness scatter with the 1/(1+R) reference curve")
    p1.add_argument("--in", dest="input_csv", required=True, metavar="CSV")
    p1.add_argument("--out", dest="output_path", required=True, metavar="IMAGE")

    p2 = sub.add_parser("fig2", help="distinguishability-gap curve with threshold marker")
    p2.add_argument("--in", dest="input_csv", required=True, metavar="CSV")
    p2.add_argument("--out", dest="output_path", required=True, metavar="IMAGE")
    p2.add_argument("--rc", dest="r_c", type=float, default=None,
                    help="override the threshold marker position")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    spec = PlotSpec(
        input_csv=args.input_csv,
        kind=args.kind,
        output_path=args.output_path,
        r_c=getattr(args, "r_c", None),
    )
    try:
        path = render(spec)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
