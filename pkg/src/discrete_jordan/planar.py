"""Exact-rational planar constructions.

Builds a triangular lattice over a bounding box, snaps a simple polygon onto
it so the polygon becomes a vertex path of the complex, widens curve angles
by centroid refinement, refines a triangulation along a polyline by midpoint
subdivision, and labels vertices inside or outside an embedded curve.  Every
predicate is decided in rational arithmetic; there is no tolerance anywhere.

The lattice is the sheared integer grid (vertex (i, j) sits at
((i + j/2) * h, j * h)), which is combinatorially the equilateral
triangulation; only incidence matters downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .complex_core import Cell, Edge, Surface, cell_directed_edges, edge_key
from .curves import Path
from .errors import (
    BadParameters,
    CurveTriangleMultiCross,
    DegenerateBBox,
    JordanError,
    LatticeTooCoarse,
    NotSimplePolygon,
)

Point = tuple[Fraction, Fraction]


# -- exact predicates ------------------------------------------------------

def orient2d(a: Point, b: Point, c: Point) -> Fraction:
    """Twice the signed area of triangle a,b,c (positive = counterclockwise)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def dist2(a: Point, b: Point) -> Fraction:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def l1(a: Point, b: Point) -> Fraction:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def on_segment(a: Point, b: Point, x: Point, strict: bool = True) -> bool:
    """Is x on segment ab (strictly inside when strict)?"""
    if orient2d(a, b, x) != 0:
        return False
    lo0, hi0 = min(a[0], b[0]), max(a[0], b[0])
    lo1, hi1 = min(a[1], b[1]), max(a[1], b[1])
    if strict:
        inside = (lo0 < x[0] < hi0) or (lo1 < x[1] < hi1)
        return inside and x != a and x != b
    return lo0 <= x[0] <= hi0 and lo1 <= x[1] <= hi1


def segments_cross(p: Point, q: Point, a: Point, b: Point) -> Point | None:
    """Proper interior crossing point of pq and ab, else None."""
    d1 = orient2d(a, b, p)
    d2 = orient2d(a, b, q)
    d3 = orient2d(p, q, a)
    d4 = orient2d(p, q, b)
    if (d1 > 0) == (d2 > 0) or d1 == 0 or d2 == 0:
        return None
    if (d3 > 0) == (d4 > 0) or d3 == 0 or d4 == 0:
        return None
    t = d1 / (d1 - d2)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def segments_touch(p: Point, q: Point, a: Point, b: Point) -> bool:
    """Any contact at all between the closed segments."""
    d1, d2 = orient2d(a, b, p), orient2d(a, b, q)
    d3, d4 = orient2d(p, q, a), orient2d(p, q, b)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and 0 not in (d1, d2, d3, d4):
        return True
    for x, (u, v) in ((p, (a, b)), (q, (a, b)), (a, (p, q)), (b, (p, q))):
        if on_segment(u, v, x, strict=False):
            return True
    return False


def point_segment_dist2(x: Point, a: Point, b: Point) -> Fraction:
    ab2 = dist2(a, b)
    if ab2 == 0:
        return dist2(x, a)
    t = ((x[0] - a[0]) * (b[0] - a[0]) + (x[1] - a[1]) * (b[1] - a[1])) / ab2
    t = min(Fraction(1), max(Fraction(0), t))
    proj = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
    return dist2(x, proj)


def segment_dist2(p: Point, q: Point, a: Point, b: Point) -> Fraction:
    if segments_touch(p, q, a, b):
        return Fraction(0)
    return min(
        point_segment_dist2(p, a, b),
        point_segment_dist2(q, a, b),
        point_segment_dist2(a, p, q),
        point_segment_dist2(b, p, q),
    )


def circle_direction(u: Fraction) -> Point:
    """Exact rational point on the unit circle at turn fraction u in [0, 1).

    Quadrant by quadrant, the arc is parameterized by the stereographic map
    t -> ((1 - t^2), 2t) / (1 + t^2), so every output is a rational point
    with x^2 + y^2 = 1; the angle grows monotonically with u.
    """
    u = u % 1
    quadrant, local = divmod(4 * u, 1)
    t = local
    den = 1 + t * t
    x, y = (1 - t * t) / den, 2 * t / den
    for _ in range(int(quadrant)):
        x, y = -y, x
    return (x, y)


# -- polyline curves -------------------------------------------------------

@dataclass(frozen=True)
class PolylineCurve:
    """Simple polyline with exact rational points.

    The parameterization used for point_at is cumulative L1 length, which is
    exactly proportional to Euclidean length within each straight segment.
    """

    points: tuple[Point, ...]
    closed: bool = True

    @staticmethod
    def make(points: Sequence[Point], closed: bool = True) -> "PolylineCurve":
        pts = tuple((Fraction(x), Fraction(y)) for x, y in points)
        if len(pts) < (3 if closed else 2):
            raise NotSimplePolygon("too few points")
        if len(set(pts)) != len(pts):
            raise NotSimplePolygon("repeated point")
        segs = list(zip(pts, pts[1:]))
        if closed:
            segs.append((pts[-1], pts[0]))
        n = len(segs)
        for i, (p, q) in enumerate(segs):
            if p == q:
                raise NotSimplePolygon("zero-length segment")
            for j in range(i + 1, n):
                a, b = segs[j]
                adjacent = j == i + 1 or (closed and i == 0 and j == n - 1)
                if adjacent:
                    shared = {p, q} & {a, b}
                    if len(shared) != 1:
                        raise NotSimplePolygon("adjacent segments overlap")
                    s = shared.pop()
                    others = [x for x in (p, q, a, b) if x != s]
                    if on_segment(a, b, others[0], strict=False) and orient2d(a, b, others[0]) == 0:
                        if on_segment(*((a, b) if others[0] in (p, q) else (p, q)), s, strict=True):
                            raise NotSimplePolygon("adjacent segments fold back")
                    if orient2d(p, q, b if s == q else a) == 0 and (
                        on_segment(p, q, b, strict=True) or on_segment(a, b, p, strict=True)
                    ):
                        raise NotSimplePolygon("adjacent segments fold back")
                elif segments_touch(p, q, a, b):
                    raise NotSimplePolygon(f"segments {i} and {j} intersect")
        return PolylineCurve(pts, closed)

    def segments(self) -> tuple[tuple[Point, Point], ...]:
        segs = list(zip(self.points, self.points[1:]))
        if self.closed:
            segs.append((self.points[-1], self.points[0]))
        return tuple(segs)

    def param_lengths(self) -> tuple[Fraction, ...]:
        return tuple(l1(p, q) for p, q in self.segments())

    def total_param(self) -> Fraction:
        return sum(self.param_lengths(), Fraction(0))

    def point_at(self, s: Fraction) -> Point:
        total = self.total_param()
        s = s % total
        for (p, q), ln in zip(self.segments(), self.param_lengths()):
            if s <= ln:
                if ln == 0:
                    return p
                t = s / ln
                return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
            s -= ln
        return self.points[0]

    def vertex_pairwise_min_dist2(self) -> Fraction:
        pts = self.points
        best = None
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                d = dist2(pts[i], pts[j])
                if best is None or d < best:
                    best = d
        return best

    def diameter2(self) -> Fraction:
        pts = self.points
        best = Fraction(0)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                best = max(best, dist2(pts[i], pts[j]))
        return best

    def nonadjacent_clearance2(self) -> Fraction:
        """Smallest squared distance between non-adjacent segments."""
        segs = self.segments()
        n = len(segs)
        best = None
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (self.closed and i == 0 and j == n - 1):
                    continue
                d = segment_dist2(*segs[i], *segs[j])
                if best is None or d < best:
                    best = d
        return best if best is not None else self.diameter2()

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        return (min(xs), min(ys), max(xs), max(ys))


# -- embedded complexes ----------------------------------------------------

@dataclass
class EmbeddedComplex:
    surface: Surface
    coords: dict[int, Point]
    provenance: dict[int, str]  # original | lattice | snap | veblen_edge | veblen_face

    def point(self, v: int) -> Point:
        return self.coords[v]


@dataclass(frozen=True)
class EmbedConfig:
    """Lattice sizing for a polygon embedding.

    edge_length must not exceed a third of the smallest polygon vertex
    distance; margin must exceed the polygon diameter; snapping has no
    tolerance (coordinates are exact rationals).
    """

    edge_length: Fraction
    margin: Fraction
    snap_tolerance: Fraction = Fraction(0)
    widen_rounds: int = 2

    def validate_for(self, polygon: PolylineCurve) -> None:
        if self.snap_tolerance != 0:
            raise BadParameters("snapping is exact; the tolerance must be zero")
        if self.widen_rounds < 2:
            raise BadParameters("widen_rounds must be at least 2")
        if self.edge_length <= 0 or self.margin <= 0:
            raise BadParameters("edge_length and margin must be positive")
        d0sq = polygon.vertex_pairwise_min_dist2()
        if self.edge_length ** 2 * 9 > d0sq:
            raise BadParameters("edge_length exceeds a third of the vertex spacing")
        if self.margin ** 2 <= polygon.diameter2():
            raise BadParameters("margin does not exceed the polygon diameter")


def _floor_sqrt(value: Fraction, scale: int = 1 << 12) -> Fraction:
    """Largest multiple of 1/scale whose square is at most value."""
    n = math.isqrt((value.numerator * scale * scale) // value.denominator)
    return Fraction(n, scale)


def default_config(polygon: PolylineCurve, widen_rounds: int = 2) -> EmbedConfig:
    """Safe sizing: the lattice pitch also stays under a third of the
    clearance between non-adjacent polygon edges, so distinct strands of the
    snapped curve never come within two lattice steps of one another."""
    limit = min(polygon.vertex_pairwise_min_dist2(), polygon.nonadjacent_clearance2())
    edge = _floor_sqrt(limit / 9)
    if edge <= 0:
        raise BadParameters("polygon features are too small to size a lattice")
    diam = _floor_sqrt(polygon.diameter2()) + Fraction(1, 1 << 12)
    while diam ** 2 <= polygon.diameter2():
        diam += Fraction(1, 1 << 12)
    return EmbedConfig(edge, diam, Fraction(0), widen_rounds)


def lattice_point(i: int, j: int, h: Fraction) -> Point:
    return ((i + Fraction(j, 2)) * h, j * h)


def lattice(config: EmbedConfig, bbox: tuple[Fraction, Fraction, Fraction, Fraction]) -> EmbeddedComplex:
    """Triangular lattice covering the box, all cells counterclockwise."""
    x0, y0, x1, y1 = (Fraction(v) for v in bbox)
    if x1 <= x0 or y1 <= y0:
        raise DegenerateBBox(f"bad box {bbox}")
    h = config.edge_length
    j_lo = math.floor(y0 / h) - 1
    j_hi = math.ceil(y1 / h) + 1
    vid: dict[tuple[int, int], int] = {}
    coords: dict[int, Point] = {}
    rows: dict[int, tuple[int, int]] = {}
    nxt = 0
    for j in range(j_lo, j_hi + 1):
        i_lo = math.floor((x0 - Fraction(j, 2) * h) / h) - 1
        i_hi = math.ceil((x1 - Fraction(j, 2) * h) / h) + 1
        rows[j] = (i_lo, i_hi)
        for i in range(i_lo, i_hi + 1):
            vid[(i, j)] = nxt
            coords[nxt] = lattice_point(i, j, h)
            nxt += 1
    cells: list[Cell] = []
    for j in range(j_lo, j_hi):
        for i in range(rows[j][0], rows[j][1] + 1):
            up = ((i, j), (i + 1, j), (i, j + 1))
            down = ((i + 1, j), (i + 1, j + 1), (i, j + 1))
            for tri in (up, down):
                if all(c in vid for c in tri):
                    cells.append(tuple(vid[c] for c in tri))
    prov = {v: "lattice" for v in coords}
    return EmbeddedComplex(Surface(cells), coords, prov)


class _Mesh:
    """Mutable triangulation used while snapping; cells stay counterclockwise."""

    def __init__(self, ec: EmbeddedComplex):
        self.coords: dict[int, Point] = dict(ec.coords)
        self.prov: dict[int, str] = dict(ec.provenance)
        self.by_point: dict[Point, int] = {pt: v for v, pt in self.coords.items()}
        self.cells: dict[int, Cell] = {}
        self.edge_cells: dict[Edge, set[int]] = {}
        self.vertex_cells: dict[int, set[int]] = {}
        self.next_cid = 0
        self.next_vid = max(self.coords) + 1 if self.coords else 0
        for cell in ec.surface.cells:
            self._add(cell)

    def _add(self, cell: Cell) -> int:
        cid = self.next_cid
        self.next_cid += 1
        self.cells[cid] = cell
        for u, v in cell_directed_edges(cell):
            self.edge_cells.setdefault(edge_key(u, v), set()).add(cid)
        for v in cell:
            self.vertex_cells.setdefault(v, set()).add(cid)
        return cid

    def _remove(self, cid: int) -> None:
        cell = self.cells.pop(cid)
        for u, v in cell_directed_edges(cell):
            self.edge_cells[edge_key(u, v)].discard(cid)
        for v in cell:
            self.vertex_cells[v].discard(cid)

    def add_vertex(self, pt: Point, prov: str) -> int:
        v = self.next_vid
        self.next_vid += 1
        self.coords[v] = pt
        self.by_point[pt] = v
        self.prov[v] = prov
        return v

    def split_edge(self, e: Edge, pt: Point, prov: str) -> int:
        m = self.add_vertex(pt, prov)
        for cid in sorted(self.edge_cells.get(e, ())):
            cell = self.cells[cid]
            k = len(cell)
            idx = next(
                i for i in range(k) if edge_key(cell[i], cell[(i + 1) % k]) == e
            )
            a, b = cell[idx], cell[(idx + 1) % k]
            c = cell[(idx + 2) % k]
            self._remove(cid)
            self._add((a, m, c))
            self._add((m, b, c))
        return m

    def split_cell(self, cid: int, pt: Point, prov: str) -> int:
        m = self.add_vertex(pt, prov)
        a, b, c = self.cells[cid]
        self._remove(cid)
        self._add((a, b, m))
        self._add((b, c, m))
        self._add((c, a, m))
        return m

    def neighbors(self, v: int) -> set[int]:
        out: set[int] = set()
        for cid in self.vertex_cells.get(v, ()):
            cell = self.cells[cid]
            i = cell.index(v)
            out.add(cell[i - 1])
            out.add(cell[(i + 1) % len(cell)])
        return out

    def locate(self, pt: Point) -> tuple[str, object]:
        v = self.by_point.get(pt)
        if v is not None:
            return "vertex", v
        for cid in sorted(self.cells):
            cell = self.cells[cid]
            pts = [self.coords[x] for x in cell]
            signs = [
                orient2d(pts[i], pts[(i + 1) % 3], pt) for i in range(3)
            ]
            if all(s > 0 for s in signs):
                return "cell", cid
            if all(s >= 0 for s in signs) and signs.count(0) == 1:
                i = signs.index(0)
                return "edge", edge_key(cell[i], cell[(i + 1) % 3])
        return "outside", None

    def to_embedded(self) -> EmbeddedComplex:
        cells = [self.cells[cid] for cid in sorted(self.cells)]
        return EmbeddedComplex(Surface(cells), dict(self.coords), dict(self.prov))


def embed_polygon(
    base: EmbeddedComplex, polygon: PolylineCurve
) -> tuple[EmbeddedComplex, Path]:
    """Snap a simple polygon onto the triangulation.

    Polygon vertices landing inside edges or cells become vertices with local
    re-triangulation; lattice vertices met by polygon edges join the curve;
    every transversal edge crossing becomes a vertex of both.  The returned
    path walks the polygon as complex edges; all cells stay triangles.
    """
    if not polygon.closed:
        raise NotSimplePolygon("the embedded curve must be closed")
    mesh = _Mesh(base)

    # Fineness guard on the untouched lattice: no two polygon vertices may
    # land in one closed cell (vertex hits are exempt).
    hits: dict[int, list[int]] = {}
    for k, pt in enumerate(polygon.points):
        kind, where = mesh.locate(pt)
        if kind == "outside":
            raise DegenerateBBox(f"polygon point {pt} lies outside the lattice")
        if kind == "vertex":
            continue
        cids = [where] if kind == "cell" else sorted(mesh.edge_cells[where])
        for cid in cids:
            hits.setdefault(cid, []).append(k)
    for cid, ks in sorted(hits.items()):
        if len(ks) > 1:
            raise LatticeTooCoarse(f"polygon points {ks} share a cell")

    anchors: list[int] = []
    for pt in polygon.points:
        kind, where = mesh.locate(pt)
        if kind == "vertex":
            v = where
            mesh.prov[v] = "original"
        elif kind == "edge":
            v = mesh.split_edge(where, pt, "original")
        else:
            v = mesh.split_cell(where, pt, "original")
        anchors.append(v)

    curve: list[int] = []
    for k, start in enumerate(anchors):
        goal = anchors[(k + 1) % len(anchors)]
        curve.extend(_walk_segment(mesh, start, goal)[:-1])
    path = Path(tuple(curve), closed=True)
    for a, b in zip(curve, curve[1:] + curve[:1]):
        if edge_key(a, b) not in mesh.edge_cells:
            raise JordanError(f"snapped curve edge ({a},{b}) missing from the mesh")
    for v in curve:
        if mesh.prov.get(v) == "lattice":
            mesh.prov[v] = "snap"
    return mesh.to_embedded(), path


def _walk_segment(mesh: _Mesh, start: int, goal: int) -> list[int]:
    """March from vertex ``start`` to vertex ``goal`` along the straight
    segment between them, inserting a vertex at every transversal edge
    crossing and collecting every vertex met on the way."""
    out = [start]
    target = mesh.coords[goal]
    while out[-1] != goal:
        cur = out[-1]
        cpt = mesh.coords[cur]
        dx, dy = target[0] - cpt[0], target[1] - cpt[1]
        # Collinear continuation along an existing edge.
        collinear: list[tuple[Fraction, int]] = []
        for w in mesh.neighbors(cur):
            wpt = mesh.coords[w]
            if orient2d(cpt, target, wpt) != 0:
                continue
            t = (wpt[0] - cpt[0]) * dx + (wpt[1] - cpt[1]) * dy
            if t > 0 and dist2(cpt, wpt) <= dist2(cpt, target):
                collinear.append((dist2(cpt, wpt), w))
        if collinear:
            out.append(min(collinear)[1])
            continue
        # Otherwise the segment leaves through the interior of a wedge.
        step = None
        for cid in sorted(mesh.vertex_cells[cur]):
            cell = mesh.cells[cid]
            i = cell.index(cur)
            a, b = cell[(i + 1) % 3], cell[(i + 2) % 3]
            apt, bpt = mesh.coords[a], mesh.coords[b]
            d = (dx, dy)
            if (
                orient2d(cpt, apt, (cpt[0] + dx, cpt[1] + dy)) > 0
                and orient2d(cpt, (cpt[0] + dx, cpt[1] + dy), bpt) > 0
            ):
                x = segments_cross(cpt, target, apt, bpt)
                if x is None:
                    raise JordanError("segment walk lost its crossing")
                m = mesh.split_edge(edge_key(a, b), x, "snap")
                step = m
                break
        if step is None:
            raise JordanError(f"segment walk stuck at vertex {cur}")
        out.append(step)
    return out


def widen_angles(ec: EmbeddedComplex, curve: Path | None = None, rounds: int = 2) -> EmbeddedComplex:
    """Centroid-split every triangle, ``rounds`` times.

    Two rounds make every angle of an embedded curve wide (detours of three
    or more edges) while preserving the curve's vertices and edges exactly.
    """
    coords = dict(ec.coords)
    prov = dict(ec.provenance)
    cells = list(ec.surface.cells)
    nxt = max(coords) + 1 if coords else 0
    for _ in range(rounds):
        new_cells: list[Cell] = []
        for cell in cells:
            if len(cell) != 3:
                raise BadParameters("centroid widening expects triangles")
            a, b, c = cell
            g = (
                (coords[a][0] + coords[b][0] + coords[c][0]) / 3,
                (coords[a][1] + coords[b][1] + coords[c][1]) / 3,
            )
            coords[nxt] = g
            prov[nxt] = "veblen_face"
            new_cells.extend(((a, b, nxt), (b, c, nxt), (c, a, nxt)))
            nxt += 1
        cells = new_cells
    out = EmbeddedComplex(Surface(cells), coords, prov)
    if curve is not None:
        for e in curve.edge_list():
            if e not in out.surface.edges:
                raise JordanError(f"widening lost curve edge {e}")
    return out


def inside_outside(ec: EmbeddedComplex, curve: Path, vertex: int) -> str:
    """Ray-cast parity of a complex vertex against the embedded curve."""
    if vertex in curve.vertex_set:
        return "on_curve"
    x, y = ec.coords[vertex]
    crossings = 0
    vs = curve.vertices
    for i in range(len(vs)):
        p1 = ec.coords[vs[i]]
        p2 = ec.coords[vs[(i + 1) % len(vs)]]
        if (p1[1] <= y < p2[1]) or (p2[1] <= y < p1[1]):
            xi = p1[0] + (y - p1[1]) * (p2[0] - p1[0]) / (p2[1] - p1[1])
            if xi > x:
                crossings += 1
    return "inside" if crossings % 2 else "outside"


# -- midpoint refinement along a polyline ----------------------------------

def _point_param(curve: PolylineCurve, pt: Point) -> Fraction | None:
    """Cumulative L1 parameter of a point on the polyline, or None."""
    prefix = Fraction(0)
    for (p, q), ln in zip(curve.segments(), curve.param_lengths()):
        if on_segment(p, q, pt, strict=False):
            return prefix + l1(p, pt)
        prefix += ln
    return None


def _find_crossings(
    cells: Sequence[Cell],
    coords: dict[int, Point],
    curve: PolylineCurve,
    candidates: Iterable[int],
    on_curve: dict[int, Fraction],
) -> dict[Edge, tuple[Fraction, Point]]:
    """Transversal crossings of the curve with candidate cell edges.

    Vertices already lying on the curve are expected (they conform to it);
    a polyline corner inside an edge, a vertex of the complex newly touching
    the curve, or an edge crossed twice are degenerate and rejected.
    """
    segs = curve.segments()
    lens = curve.param_lengths()
    prefix: list[Fraction] = [Fraction(0)]
    for ln in lens:
        prefix.append(prefix[-1] + ln)
    out: dict[Edge, tuple[Fraction, Point]] = {}
    seen_edges: set[Edge] = set()
    for ci in candidates:
        cell = cells[ci]
        for i in range(3):
            e = edge_key(cell[i], cell[(i + 1) % 3])
            if e in seen_edges:
                continue
            seen_edges.add(e)
            apt, bpt = coords[e[0]], coords[e[1]]
            exlo, exhi = min(apt[0], bpt[0]), max(apt[0], bpt[0])
            eylo, eyhi = min(apt[1], bpt[1]), max(apt[1], bpt[1])
            for k, (p, q) in enumerate(segs):
                if (
                    max(p[0], q[0]) < exlo
                    or min(p[0], q[0]) > exhi
                    or max(p[1], q[1]) < eylo
                    or min(p[1], q[1]) > eyhi
                ):
                    continue
                x = segments_cross(p, q, apt, bpt)
                if x is not None:
                    t = prefix[k] + l1(p, x)
                    if e in out and out[e][0] != t:
                        raise CurveTriangleMultiCross(f"edge {e} is crossed twice")
                    out[e] = (t, x)
                    continue
                if on_segment(apt, bpt, p, strict=True) or on_segment(apt, bpt, q, strict=True):
                    raise CurveTriangleMultiCross(
                        f"a curve corner touches the interior of edge {e}"
                    )
                for v, vpt in ((e[0], apt), (e[1], bpt)):
                    if v not in on_curve and on_segment(p, q, vpt, strict=False):
                        raise CurveTriangleMultiCross(
                            f"vertex {v} touches the curve without conforming to it"
                        )
    return out


def _chain_contacts(
    cells: Sequence[Cell],
    coords: dict[int, Point],
    curve: PolylineCurve,
    crossings: dict[Edge, tuple[Fraction, Point]],
    on_curve: dict[int, Fraction],
) -> list[dict]:
    """Split the curve at its contacts and classify every arc in between.

    A contact is an edge crossing or an on-curve vertex.  Each arc either
    rides an existing edge between two on-curve vertices or runs through the
    interior of exactly one host cell.
    """
    contacts: list[tuple[Fraction, str, object]] = []
    for e, (t, _pt) in crossings.items():
        contacts.append((t, "edge", e))
    for v, t in on_curve.items():
        contacts.append((t, "vertex", v))
    if len(contacts) < 2:
        raise CurveTriangleMultiCross("the curve meets the complex at fewer than two contacts")
    contacts.sort(key=lambda c: c[0])

    vertex_cells: dict[int, set[int]] = {}
    edge_cells: dict[Edge, set[int]] = {}
    for ci, cell in enumerate(cells):
        for v in cell:
            vertex_cells.setdefault(v, set()).add(ci)
        for i in range(3):
            edge_cells.setdefault(edge_key(cell[i], cell[(i + 1) % 3]), set()).add(ci)

    def incident(kind: str, key) -> set[int]:
        return edge_cells.get(key, set()) if kind == "edge" else vertex_cells.get(key, set())

    total = curve.total_param()
    arcs: list[dict] = []
    hosts: set[int] = set()
    n = len(contacts)
    for k in range(n):
        t1, k1, key1 = contacts[k]
        t2, k2, key2 = contacts[(k + 1) % n]
        span = (t2 - t1) % total
        if span == 0 and n > 1:
            raise CurveTriangleMultiCross("two contacts at one curve point")
        mid_pt = curve.point_at((t1 + span / 2) % total)
        cand = incident(k1, key1) & incident(k2, key2)
        inside = []
        for ci in sorted(cand):
            a, b, c = (coords[v] for v in cells[ci])
            if (
                orient2d(a, b, mid_pt) > 0
                and orient2d(b, c, mid_pt) > 0
                and orient2d(c, a, mid_pt) > 0
            ):
                inside.append(ci)
        if len(inside) == 1:
            ci = inside[0]
            if ci in hosts:
                raise CurveTriangleMultiCross(f"cell {cells[ci]} is crossed more than once")
            hosts.add(ci)
            arcs.append({"kind": "cell", "host": ci, "t1": t1, "c1": (k1, key1),
                         "t2": t2, "c2": (k2, key2), "mid": mid_pt})
            continue
        if inside:
            raise CurveTriangleMultiCross("arc midpoint inside several cells")
        # No interior host: the arc must ride an existing edge between two
        # on-curve vertices.
        if k1 == "vertex" and k2 == "vertex":
            e = edge_key(key1, key2)
            if e in edge_cells:
                apt, bpt = coords[e[0]], coords[e[1]]
                corners_ok = True
                prefix = Fraction(0)
                for (p, q), ln in zip(curve.segments(), curve.param_lengths()):
                    t_corner = prefix
                    prefix += ln
                    if (t_corner - t1) % total < span and (t_corner - t1) % total > 0:
                        if not on_segment(apt, bpt, p, strict=False):
                            corners_ok = False
                if corners_ok:
                    arcs.append({"kind": "ride", "edge": e, "t1": t1, "c1": (k1, key1),
                                 "t2": t2, "c2": (k2, key2)})
                    continue
        raise CurveTriangleMultiCross(
            f"arc after parameter {t1} neither crosses a cell nor rides an edge"
        )
    return arcs


def midpoint_subdivide(
    ec: EmbeddedComplex, curve: PolylineCurve, levels: int
) -> tuple[EmbeddedComplex, Path]:
    """Refine by midpoint subdivision, conforming to the curve.

    Triangles away from the curve split in four through their edge midpoints.
    An edge the curve crosses takes its crossing point as the midpoint, and a
    triangle carrying an arc of the curve gains the arc's parameter midpoint
    as an interior vertex and splits as the fan around it.  Level by level
    the on-curve vertices chain into the returned closed boundary path; every
    inherited edge halves exactly, so the path tightens onto the curve.

    The curve must meet the input complex transversally: each cut triangle is
    entered and left through two edge interiors.
    """
    if levels < 1:
        raise BadParameters("at least one refinement level is required")
    coords = dict(ec.coords)
    prov = dict(ec.provenance)
    cells: list[Cell] = list(ec.surface.cells)
    candidates: list[int] = list(range(len(cells)))
    on_curve: dict[int, Fraction] = {}

    boundary_path: list[int] = []
    for level in range(levels):
        crossings = _find_crossings(cells, coords, curve, candidates, on_curve)
        arcs = _chain_contacts(cells, coords, curve, crossings, on_curve)
        nxt = max(coords) + 1 if coords else 0

        def vertex_at(pt: Point, kind: str, param: Fraction | None) -> int:
            nonlocal nxt
            v = nxt
            nxt += 1
            coords[v] = pt
            prov[v] = kind
            if param is not None:
                on_curve[v] = param
            return v

        cross_vid: dict[Edge, int] = {}
        for e in sorted(crossings):
            t, pt = crossings[e]
            cross_vid[e] = vertex_at(pt, "snap", t)

        ride_edges = {arc["edge"] for arc in arcs if arc["kind"] == "ride"}
        midpoint: dict[Edge, int] = {}

        def mid(u: int, v: int) -> int:
            e = edge_key(u, v)
            if e in cross_vid:
                return cross_vid[e]
            m = midpoint.get(e)
            if m is None:
                pu, pv = coords[u], coords[v]
                pt = ((pu[0] + pv[0]) / 2, (pu[1] + pv[1]) / 2)
                param = _point_param(curve, pt) if e in ride_edges else None
                kind = "snap" if param is not None else "veblen_edge"
                m = vertex_at(pt, kind, param)
                midpoint[e] = m
            return m

        arc_mid_vid: dict[int, int] = {}
        host_of: dict[int, dict] = {}
        for arc in arcs:
            if arc["kind"] == "cell":
                host_of[arc["host"]] = arc

        new_cells: list[Cell] = []
        next_candidates: list[int] = []
        for ci, cell in enumerate(cells):
            arc = host_of.get(ci)
            if arc is None:
                a, b, c = cell
                mab, mbc, mca = mid(a, b), mid(b, c), mid(c, a)
                new_cells.extend(
                    ((a, mab, mca), (mab, b, mbc), (mca, mbc, c), (mab, mbc, mca))
                )
                continue
            span = (arc["t2"] - arc["t1"]) % curve.total_param()
            t_mid = (arc["t1"] + span / 2) % curve.total_param()
            big = vertex_at(arc["mid"], "snap", t_mid)
            arc_mid_vid[ci] = big
            a, b, c = cell
            ring = (a, mid(a, b), b, mid(b, c), c, mid(c, a))
            for i in range(6):
                u, w = ring[i], ring[(i + 1) % 6]
                if orient2d(coords[u], coords[w], coords[big]) <= 0:
                    raise CurveTriangleMultiCross(
                        f"arc midpoint leaves the interior of cell {cell}"
                    )
            start = len(new_cells)
            for i in range(6):
                new_cells.append((ring[i], ring[(i + 1) % 6], big))
            next_candidates.extend(range(start, len(new_cells)))
        cells = new_cells
        candidates = next_candidates

        if level == levels - 1:
            boundary_path = []
            for arc in arcs:
                k1, key1 = arc["c1"]
                boundary_path.append(cross_vid[key1] if k1 == "edge" else key1)
                if arc["kind"] == "cell":
                    boundary_path.append(arc_mid_vid[arc["host"]])
                else:
                    boundary_path.append(midpoint[arc["edge"]])

    out = EmbeddedComplex(Surface(cells), coords, prov)
    bc = Path.make(out.surface, tuple(boundary_path), closed=True)
    return out, bc
