"""Command line entry point: ``geolab check <file>``."""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .dsl import SceneError, parse_scene
from .runner import DEFAULT_SAMPLES, DEFAULT_SEED, emit_report, exit_code, run_checks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geolab", description="Exact checks on E1(M) scenes.")
    parser.add_argument("--version", action="version", version=f"geolab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="run the checks declared in a scene file")
    check.add_argument("file")
    check.add_argument("--report", choices=("json", "text"), default="json")
    check.add_argument("--out", help="write the report here instead of stdout")
    check.add_argument("--seed", type=int, default=DEFAULT_SEED)
    check.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    check.add_argument("--strict", action="store_true", help="treat generic-pass as fail")
    check.add_argument("--timing", action="store_true", help="record wall time per check")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"geolab: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return 2
    try:
        scene = parse_scene(text)
    except SceneError as exc:
        print(f"{args.file}:{exc}", file=sys.stderr)
        return 2
    report = run_checks(scene, args.seed, args.samples, timing=args.timing)
    data = emit_report(report, args.report)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return exit_code(report, args.strict)


if __name__ == "__main__":
    sys.exit(main())
