"""Deterministic SVG rendering of embedded complexes and deformation steps.

Rendering is presentation only: coordinates are formatted floats with fixed
precision, cells draw as polygons, the curve gets a heavy stroke, and each
step of a deformation sequence becomes one frame with its witness cell
shaded.  Abstract surfaces render only when they are disks, via a convex
boundary layout with iterative barycentric smoothing.
"""

from __future__ import annotations

import math

from .complex_core import Surface, boundary
from .contraction import DeformationSequence
from .curves import Path
from .errors import NoCoordinates
from .planar import EmbeddedComplex

_PRECISION = 4


def _fmt(x: float) -> str:
    return f"{x:.{_PRECISION}f}"


def tutte_layout(surface: Surface, iterations: int = 200) -> dict[int, tuple[float, float]]:
    """Convex-boundary barycentric layout for disk-like surfaces."""
    edges, bverts = boundary(surface)
    if not edges:
        raise NoCoordinates("closed surface has no boundary to pin")
    # Walk the boundary cycle deterministically.
    adj: dict[int, list[int]] = {}
    for u, v in sorted(edges):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = min(bverts)
    cycle = [start, min(adj[start])]
    while True:
        nxt = [w for w in adj[cycle[-1]] if w != cycle[-2]]
        if not nxt or nxt[0] == start:
            break
        cycle.append(nxt[0])
    if len(cycle) != len(bverts):
        raise NoCoordinates("boundary is not a single cycle")
    pos: dict[int, tuple[float, float]] = {}
    n = len(cycle)
    for k, v in enumerate(cycle):
        ang = 2 * math.pi * k / n
        pos[v] = (math.cos(ang), math.sin(ang))
    inner = sorted(surface.vertices - bverts)
    for v in inner:
        pos[v] = (0.0, 0.0)
    for _ in range(iterations):
        for v in inner:
            ns = surface.neighbors(v)
            pos[v] = (
                sum(pos[w][0] for w in ns) / len(ns),
                sum(pos[w][1] for w in ns) / len(ns),
            )
    return pos


def _frame(
    surface: Surface,
    pos: dict[int, tuple[float, float]],
    curve: Path | None,
    shaded: tuple[int, ...] | None,
    offset: float,
    scale: float,
) -> list[str]:
    out = []
    shaded_key = frozenset(shaded) if shaded else None
    for cell in surface.cells:
        pts = " ".join(
            f"{_fmt(offset + scale * pos[v][0])},{_fmt(scale * pos[v][1])}" for v in cell
        )
        fill = "#f5c6aa" if shaded_key and frozenset(cell) == shaded_key else "#eef2f7"
        out.append(f'<polygon points="{pts}" fill="{fill}" stroke="#8899aa" stroke-width="0.5"/>')
    if curve is not None:
        vs = list(curve.vertices) + ([curve.vertices[0]] if curve.closed else [])
        pts = " ".join(
            f"{_fmt(offset + scale * pos[v][0])},{_fmt(scale * pos[v][1])}" for v in vs
        )
        out.append(f'<polyline points="{pts}" fill="none" stroke="#c0392b" stroke-width="1.8"/>')
    return out


def render_svg(
    ec: EmbeddedComplex | None = None,
    surface: Surface | None = None,
    curve: Path | None = None,
    sequence: DeformationSequence | None = None,
) -> str:
    """One SVG document; a sequence renders as one frame per entry."""
    if ec is not None:
        surface = ec.surface
        pos = {v: (float(x), float(y)) for v, (x, y) in ec.coords.items()}
    elif surface is not None:
        pos = tutte_layout(surface)
    else:
        raise NoCoordinates("nothing to render")
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = 200.0 / span
    width = (max(xs) - min(xs)) * scale + 20
    shift = -min(xs) * scale + 10

    body: list[str] = []
    if sequence is None:
        body.extend(_frame(surface, pos, curve, None, shift, scale))
        frames = 1
    else:
        frames = len(sequence.entries)
        for i, entry in enumerate(sequence.entries):
            off = shift + i * (width + 10)
            shaded = sequence.witnesses[i] if i < len(sequence.witnesses) else None
            body.extend(_frame(surface, pos, entry, shaded, off, scale))
    total_w = width * frames + 10 * frames
    h_lo = min(ys) * scale - 10
    h_hi = max(ys) * scale + 10
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 {_fmt(h_lo)} '
        f'{_fmt(total_w)} {_fmt(h_hi - h_lo)}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"
