"""Command-line surface.

Subcommands: transform, detect, verify, plot.  Exit codes: 0 success,
1 verification failure, 2 usage error, 3 input/runtime error.

Curve files are plain text, one `key = value` per line, `#` comments:

    name = "ellipse"        # optional, double-quoted
    x = cos(t)              # expression in t
    y = sin(t)/sqrt(3)
    t_min = 0               # constant expressions allowed (2*pi, ...)
    t_max = 2*pi
    samples = 1024          # optional
    closed = true           # optional, default true

Expressions use +, -, *, /, ^, parentheses, the parameter t, the
constants pi and e, and the functions sin, cos, tan, sqrt, exp, log,
abs.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

import numpy as np

from . import figures as fig
from . import singularity as sg
from . import transforms as tr
from .curve import BUILTIN_NAMES, CurveDef, builtin_curve, load_curve, sample_grid
from .envelope import make_family
from .errors import PedalkitError, RangeError
from .render import (PALETTE, PlotSpec, overlay_from_curve, overlay_from_mapped,
                     render_svg, render_to_file, write_mapped_csv)
from .transforms import FLAG_NAMES, TRANSFORM_KINDS, apply_transform
from .verify import SUITES, run_suite

DETECT_KINDS = ("inflections", "vertices", "primitive-cusps")


def _resolve_curve(spec: str, samples: int | None) -> CurveDef:
    if os.path.exists(spec):
        curve = load_curve(spec)
        if samples is not None:
            curve = dataclasses.replace(curve, samples=samples)
        return curve
    if spec in BUILTIN_NAMES:
        return builtin_curve(spec, samples=samples)
    raise RangeError(
        f"curve {spec!r} is neither a file nor a built-in name "
        f"(built-ins: {', '.join(BUILTIN_NAMES)})")


def _flag_summary(mc: tr.MappedCurve) -> str:
    counts = np.bincount(mc.flags, minlength=len(FLAG_NAMES))
    parts = [f"{counts[i]} {name}" for i, name in enumerate(FLAG_NAMES) if counts[i]]
    return f"{len(mc.grid)} samples: " + ", ".join(parts)


def cmd_transform(args: argparse.Namespace) -> int:
    curve = _resolve_curve(args.curve, args.samples)
    mc = apply_transform(curve, args.kind, angle=args.angle, ratio=args.ratio)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            write_mapped_csv(mc, fh)
    else:
        write_mapped_csv(mc, sys.stdout)
    if args.svg:
        spec = PlotSpec([overlay_from_curve(curve, color=PALETTE[0]),
                         overlay_from_mapped(mc, color=PALETTE[1])])
        render_to_file(spec, args.svg)
    if not mc.ok.all():
        print(_flag_summary(mc), file=sys.stderr)
    return 0


def cmd_detect(args: argparse.Namespace) -> int:
    curve = _resolve_curve(args.curve, args.samples)
    ts = sample_grid(curve)
    if args.what == "inflections":
        reports = sg.inflections(curve, ts)
    elif args.what == "vertices":
        reports = sg.vertices(curve, ts)
    else:
        reports = sg.primitive_singularities(curve, ts)
    out = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else sys.stdout
    try:
        for r in reports:
            cls = r.classification or ""
            out.write(f"{r.kind}\t{r.t:.12g}\t{r.residual:.12g}\t{cls}\n")
    finally:
        if args.out:
            out.close()
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    curve = _resolve_curve(args.curve, args.samples)
    report = run_suite(args.suite, curve)
    text = report.format() + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return 0 if report.passed else 1


def _parse_overlay(spec: str) -> tuple[str, float | None]:
    kind, _, param = spec.partition(":")
    if kind not in TRANSFORM_KINDS and kind != "source":
        raise RangeError(
            f"unknown overlay kind {kind!r}; choices: source, {', '.join(TRANSFORM_KINDS)}")
    value = None
    if param:
        try:
            value = float(param)
        except ValueError:
            raise RangeError(f"overlay parameter {param!r} is not a number") from None
    return kind, value


def cmd_plot(args: argparse.Namespace) -> int:
    if args.figure is not None:
        if args.overlay or args.family_lines or args.curve:
            raise RangeError("--figure picks its own curve and overlays")
        spec = fig.figure_spec(args.figure)
    else:
        if not args.curve:
            raise RangeError("plot needs --curve (or --figure)")
        curve = _resolve_curve(args.curve, args.samples)
        overlays = []
        requested = args.overlay or ["source"]
        for i, ov_spec in enumerate(requested):
            kind, value = _parse_overlay(ov_spec)
            color = PALETTE[i % len(PALETTE)]
            if kind == "source":
                overlays.append(overlay_from_curve(curve, color=color))
                continue
            angle = value if kind in ("slant", "pedaloid") else None
            ratio = value if kind == "parallel" else None
            mc = apply_transform(curve, kind, angle=angle, ratio=ratio)
            overlays.append(overlay_from_mapped(mc, color=color))
        family = make_family("primitive", curve) if args.family_lines else None
        spec = PlotSpec(overlays, family=family, family_count=args.family_lines)
    if args.svg:
        render_to_file(spec, args.svg)
    else:
        sys.stdout.write(render_svg(spec))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pedalkit",
        description="Pedals, primitives and primitivoids of plane curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def shared(p, curve_required=True):
        p.add_argument("--curve", required=curve_required, default=None,
                       help="curve file or built-in name "
                            f"({', '.join(BUILTIN_NAMES)})")
        p.add_argument("--samples", type=int, default=None,
                       help="override the sample count")
        p.add_argument("--out", default=None, help="write output to this file")
        p.add_argument("--svg", default=None, help="also write an SVG plot here")

    p = sub.add_parser("transform", help="map a curve and emit CSV")
    shared(p)
    p.add_argument("--kind", required=True, choices=TRANSFORM_KINDS)
    p.add_argument("--angle", type=float, default=None,
                   help="angle for slant/pedaloid (radians)")
    p.add_argument("--ratio", type=float, default=None, help="ratio for parallel")
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("detect", help="locate singular parameters")
    shared(p)
    p.add_argument("--what", required=True, choices=DETECT_KINDS)
    p.set_defaults(fn=cmd_detect)

    p = sub.add_parser("verify", help="run a named identity suite")
    shared(p)
    p.add_argument("--suite", required=True, choices=SUITES)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("plot", help="render overlays to SVG")
    shared(p, curve_required=False)
    p.add_argument("--overlay", action="append", default=None,
                   metavar="KIND[:PARAM]",
                   help="repeatable; source or a transform kind, with the "
                        "angle/ratio after a colon (e.g. slant:0.31415)")
    p.add_argument("--family-lines", type=int, default=0, metavar="N",
                   help="draw N lines of the family enveloping the primitive")
    p.add_argument("--figure", type=int, default=None,
                   help=f"render a prebuilt gallery figure "
                        f"(1..{max(fig.FIGURE_NUMBERS)})")
    p.set_defaults(fn=cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PedalkitError as exc:
        print(f"pedalkit: error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"pedalkit: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
