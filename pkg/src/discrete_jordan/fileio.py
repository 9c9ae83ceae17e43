"""Line-based text formats.

Surface files: one `f v1 v2 ... vk` line per 2-cell, `#` comments, vertices
implicit.  Curves ride along as `c [closed] v1 v2 ...` lines, rational
coordinates as `coord v x y`, polygon points as `p x y`.  Writers emit cells
sorted by canonical form so write-read-write round trips are byte exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complex_core import Surface, canonical_cell
from .contraction import DeformationSequence
from .curves import Path
from .errors import ParseError
from .planar import EmbeddedComplex, Point, PolylineCurve


@dataclass
class Bundle:
    """Everything a surface file can carry."""

    surface: Surface | None = None
    curves: list[Path] = field(default_factory=list)
    coords: dict[int, Point] = field(default_factory=dict)
    polygon_points: list[Point] = field(default_factory=list)


def _parse_fraction(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {tok!r}") from exc


def _format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_bundle(text: str) -> Bundle:
    cells: list[tuple[int, ...]] = []
    curves: list[tuple[bool, tuple[int, ...]]] = []
    coords: dict[int, Point] = {}
    poly: list[Point] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kind, args = toks[0], toks[1:]
        try:
            if kind == "f":
                if len(args) < 3:
                    raise ParseError("cell needs at least 3 vertices")
                cells.append(tuple(int(t) for t in args))
            elif kind == "c":
                closed = bool(args) and args[0] == "closed"
                vs = tuple(int(t) for t in (args[1:] if closed else args))
                curves.append((closed, vs))
            elif kind == "coord":
                coords[int(args[0])] = (_parse_fraction(args[1]), _parse_fraction(args[2]))
            elif kind == "p":
                poly.append((_parse_fraction(args[0]), _parse_fraction(args[1])))
            else:
                raise ParseError(f"unknown record {kind!r}")
        except (ValueError, IndexError) as exc:
            raise ParseError(f"line {ln}: {raw!r}") from exc
        except ParseError as exc:
            raise ParseError(f"line {ln}: {exc}") from exc
    bundle = Bundle()
    if cells:
        bundle.surface = Surface(cells)
        for closed, vs in curves:
            bundle.curves.append(Path.make(bundle.surface, vs, closed))
    else:
        bundle.curves = [Path(vs, closed) for closed, vs in curves]
    bundle.coords = coords
    bundle.polygon_points = poly
    return bundle


def write_bundle(
    surface: Surface | None = None,
    curves: tuple[Path, ...] | list[Path] = (),
    coords: dict[int, Point] | None = None,
    polygon_points: list[Point] | None = None,
) -> str:
    lines: list[str] = []
    if surface is not None:
        for cell in sorted(canonical_cell(c) for c in surface.cells):
            lines.append("f " + " ".join(str(v) for v in cell))
    for curve in curves:
        head = "c closed " if curve.closed else "c "
        lines.append(head + " ".join(str(v) for v in curve.vertices))
    if coords:
        for v in sorted(coords):
            x, y = coords[v]
            lines.append(f"coord {v} {_format_fraction(x)} {_format_fraction(y)}")
    if polygon_points:
        for x, y in polygon_points:
            lines.append(f"p {_format_fraction(x)} {_format_fraction(y)}")
    return "\n".join(lines) + "\n"


def write_embedded(ec: EmbeddedComplex, curves: tuple[Path, ...] = ()) -> str:
    return write_bundle(ec.surface, curves, ec.coords)


def parse_polygon(text: str) -> PolylineCurve:
    bundle = parse_bundle(text)
    if not bundle.polygon_points:
        raise ParseError("no polygon points (`p x y` lines) found")
    return PolylineCurve.make(bundle.polygon_points, closed=True)


def write_sequence(seq: DeformationSequence) -> str:
    lines = [f"kind {seq.kind}"]
    if seq.anchor is not None:
        lines.append(f"anchor {seq.anchor}")
    for i, entry in enumerate(seq.entries):
        lines.append(f"step {i}: " + " ".join(str(v) for v in entry.vertices))
    for i, cell in enumerate(seq.witnesses):
        lines.append(f"witness {i}: " + " ".join(str(v) for v in cell))
    return "\n".join(lines) + "\n"


def parse_sequence(text: str) -> DeformationSequence:
    kind = None
    anchor = None
    steps: list[tuple[int, tuple[int, ...]]] = []
    witnesses: list[tuple[int, tuple[int, ...]]] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("kind "):
                kind = line.split()[1]
            elif line.startswith("anchor "):
                anchor = int(line.split()[1])
            elif line.startswith("step "):
                head, _, rest = line.partition(":")
                steps.append((int(head.split()[1]), tuple(int(t) for t in rest.split())))
            elif line.startswith("witness "):
                head, _, rest = line.partition(":")
                witnesses.append((int(head.split()[1]), tuple(int(t) for t in rest.split())))
            else:
                raise ParseError(f"unknown record {line!r}")
        except (ValueError, IndexError) as exc:
            raise ParseError(f"line {ln}: {raw!r}") from exc
    if kind not in ("contraction", "arc"):
        raise ParseError(f"bad sequence kind {kind!r}")
    closed = kind == "contraction"
    steps.sort()
    witnesses.sort()
    return DeformationSequence(
        tuple(Path(vs, closed) for _i, vs in steps),
        kind,
        tuple(vs for _i, vs in witnesses),
        anchor=anchor,
    )
