"""Command-line front end.

Exit codes: 0 pass, 1 verdict or construction failure, 2 hypothesis failure,
3 I/O or parse error.  Output files land next to the input unless --out or
the DJC_OUTPUT_DIR environment variable says otherwise.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path as FsPath

from . import acceptance, fileio, svg
from .complex_core import orient, validate
from .contraction import SampleSpec, certify_simply_connected, contract_cycle
from .errors import JordanError, ParseError
from .gensurf import GenSpec, generate
from .jordan import check_separation, check_veblen_separation
from .planar import default_config, lattice, EmbedConfig, embed_polygon, widen_angles

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_HYPOTHESES = 2
EXIT_IO = 3


def _out_path(arg: str | None, default_name: str) -> FsPath:
    if arg:
        return FsPath(arg)
    base = os.environ.get("DJC_OUTPUT_DIR", ".")
    return FsPath(base) / default_name


def _read(path: str) -> str:
    try:
        return FsPath(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _load_surface_bundle(path: str):
    bundle = fileio.parse_bundle(_read(path))
    if bundle.surface is None:
        raise ParseError(f"{path} holds no surface")
    return bundle


def cmd_validate(args) -> int:
    bundle = _load_surface_bundle(args.surface)
    report = validate(bundle.surface)
    print(report)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_gen(args) -> int:
    spec = GenSpec(args.kind, args.a, args.b, args.seed)
    surface, curves = generate(spec)
    text = fileio.write_bundle(surface, tuple(curves.values()))
    out = _out_path(args.out, f"{args.kind}.surf")
    out.write_text(text)
    print(out)
    return EXIT_OK


def _pick_curve(bundle, index: int):
    if not bundle.curves:
        raise ParseError("no curve (`c ...` line) in the input")
    try:
        return bundle.curves[index]
    except IndexError:
        raise ParseError(f"curve index {index} out of range") from None


def cmd_separate(args) -> int:
    bundle = _load_surface_bundle(args.surface)
    surface = orient(bundle.surface)
    curve = _pick_curve(bundle, args.curve_index)
    if args.veblen:
        check = check_veblen_separation(surface, curve)
        print(check.separation.to_text(check.verdict))
        return EXIT_OK if check.verdict else EXIT_FAIL
    check = check_separation(surface, curve)
    for note in check.notes:
        print(f"# {note}")
    print(check.separation.to_text(check.verdict))
    if check.verdict:
        return EXIT_OK
    return EXIT_HYPOTHESES if not check.hypotheses_ok else EXIT_FAIL


def cmd_contract(args) -> int:
    bundle = _load_surface_bundle(args.surface)
    surface = orient(bundle.surface)
    curve = _pick_curve(bundle, args.curve_index)
    seq = contract_cycle(surface, curve, args.anchor)
    text = fileio.write_sequence(seq)
    out = _out_path(args.out, "contraction.seq")
    out.write_text(text)
    print(f"{out} steps {seq.steps}")
    return EXIT_OK


def cmd_certify(args) -> int:
    bundle = _load_surface_bundle(args.surface)
    surface = orient(bundle.surface)
    spec = SampleSpec(curves=args.curves, seed=args.seed, pairs=args.pairs)
    report = certify_simply_connected(surface, spec)
    for w in report.warnings:
        print(f"# {w}")
    for s in report.samples:
        state = "ok" if s.ok else f"fail ({s.note})"
        print(f"curve {' '.join(map(str, s.curve.vertices))} p={s.p} q={s.q}: {state}")
    print("certified" if report.certified else "not certified")
    return EXIT_OK if report.certified else EXIT_FAIL


def cmd_embed(args) -> int:
    polygon = fileio.parse_polygon(_read(args.polygon))
    if args.edge_length or args.margin:
        auto = default_config(polygon, args.widen_rounds)
        config = EmbedConfig(
            Fraction(args.edge_length) if args.edge_length else auto.edge_length,
            Fraction(args.margin) if args.margin else auto.margin,
            Fraction(0),
            args.widen_rounds,
        )
    else:
        config = default_config(polygon, args.widen_rounds)
    config.validate_for(polygon)
    x0, y0, x1, y1 = polygon.bbox()
    m = config.margin
    base = lattice(config, (x0 - m, y0 - m, x1 + m, y1 + m))
    ec, curve = embed_polygon(base, polygon)
    if args.widen:
        ec = widen_angles(ec, curve, config.widen_rounds)
    out = _out_path(args.out, "embedded.surf")
    out.write_text(fileio.write_embedded(ec, (curve,)))
    print(f"{out} cells {len(ec.surface.cells)} curve {len(curve.vertices)}")
    return EXIT_OK


def cmd_render(args) -> int:
    bundle = _load_surface_bundle(args.surface)
    curve = bundle.curves[args.curve_index] if bundle.curves else None
    seq = None
    if args.sequence:
        seq = fileio.parse_sequence(_read(args.sequence))
    if bundle.coords:
        from .planar import EmbeddedComplex

        ec = EmbeddedComplex(bundle.surface, bundle.coords, {})
        doc = svg.render_svg(ec=ec, curve=curve, sequence=seq)
    else:
        doc = svg.render_svg(surface=bundle.surface, curve=curve, sequence=seq)
    out = _out_path(args.out, "render.svg")
    out.write_text(doc)
    print(out)
    return EXIT_OK


def cmd_accept(args) -> int:
    results = acceptance.run_all()
    ok = True
    for r in results:
        print(r.line())
        ok = ok and r.passed
    print("acceptance " + ("pass" if ok else "fail"))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="djc", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check surface invariants")
    p.add_argument("surface")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("gen", help="generate a fixture surface")
    p.add_argument("kind")
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("separate", help="check curve separation")
    p.add_argument("surface")
    p.add_argument("--curve-index", type=int, default=0)
    p.add_argument("--veblen", action="store_true", help="insert central points first")
    p.set_defaults(fn=cmd_separate)

    p = sub.add_parser("contract", help="contract a disk-bounding curve")
    p.add_argument("surface")
    p.add_argument("--anchor", type=int, required=True)
    p.add_argument("--curve-index", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_contract)

    p = sub.add_parser("certify", help="sample curves and certify simple connectedness")
    p.add_argument("surface")
    p.add_argument("--curves", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=2)
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("embed", help="snap a polygon onto a lattice")
    p.add_argument("polygon")
    p.add_argument("--edge-length")
    p.add_argument("--margin")
    p.add_argument("--widen", action="store_true", help="apply centroid widening")
    p.add_argument("--widen-rounds", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_embed)

    p = sub.add_parser("render", help="render a surface or sequence as SVG")
    p.add_argument("surface")
    p.add_argument("--curve-index", type=int, default=0)
    p.add_argument("--sequence")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("accept", help="run the acceptance suite")
    p.set_defaults(fn=cmd_accept)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except JordanError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
