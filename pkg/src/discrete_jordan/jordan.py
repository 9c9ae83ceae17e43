"""Veblen subdivision, component separation, and the Jordan curve checks.

The separation check for discrete curves flood-fills the complement of the
curve and classifies the flanking cells of every curve edge by orientation.
The generalized check first inserts central (Veblen) points so that a curve
which is itself a cell boundary still separates an inside from an outside.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex_core import (
    Cell,
    Edge,
    Surface,
    VertexKind,
    arc_neighborhood,
    canonical_cell,
    cell_directed_edges,
    edge_key,
)
from .curves import (
    CurveClass,
    HypothesesReport,
    Path,
    check_wide_angle_hypotheses,
    classify,
)
from .errors import (
    CurveNotClosed,
    CurveTouchesBoundary,
    NonOrientable,
    NotAnArc,
    NotDegenerateBoundary,
)


@dataclass(frozen=True)
class SeparationReport:
    """Components of the curve complement plus flank data along the curve."""

    components: tuple[frozenset[int], ...]
    flank_cells_clockwise: tuple[Cell, ...]
    flank_cells_counterclockwise: tuple[Cell, ...]
    seed_a: int | None
    seed_b: int | None
    curve: Path

    def component_of(self, v: int) -> int | None:
        for i, comp in enumerate(self.components):
            if v in comp:
                return i
        return None

    @property
    def separated(self) -> bool:
        return (
            len(self.components) >= 2
            and self.seed_a is not None
            and self.seed_b is not None
            and self.component_of(self.seed_a) != self.component_of(self.seed_b)
        )

    def to_text(self, verdict: bool | None = None) -> str:
        lines = []
        for i, comp in enumerate(self.components):
            vs = " ".join(str(v) for v in sorted(comp))
            lines.append(f"component {i} size {len(comp)}: {vs}")
        a = "-" if self.seed_a is None else self.seed_a
        b = "-" if self.seed_b is None else self.seed_b
        lines.append(f"seeds a={a} b={b}")
        if verdict is not None:
            lines.append("verdict " + ("pass" if verdict else "fail"))
        return "\n".join(lines)


def _require_off_boundary(surface: Surface, curve: Path, strict: bool = False) -> None:
    bverts = surface.boundary_vertices()
    if curve.vertex_set & bverts:
        raise CurveTouchesBoundary("curve touches the surface boundary")
    if strict:
        near = {w for v in bverts for w in surface.neighbors(v)}
        if curve.vertex_set & near:
            raise CurveTouchesBoundary("curve touches a boundary-adjacent vertex")


def _flood_components(surface: Surface, blocked: frozenset[int]) -> tuple[frozenset[int], ...]:
    comps: list[frozenset[int]] = []
    seen: set[int] = set(blocked)
    for start in sorted(surface.vertices):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = {start}
        while stack:
            u = stack.pop()
            for w in surface.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: (len(c), min(c)))
    return tuple(comps)


def components(surface: Surface, curve: Path, strict: bool = False) -> SeparationReport:
    """Split the surface along a closed curve.

    Flood-fills the graph on the off-curve vertices, classifies the two cells
    flanking each curve edge by whether they traverse it along or against the
    curve, and picks one seed vertex on each side of the first curve edge:
    the last off-curve vertex of the along-side cell walked from the edge
    start, and the first off-curve vertex of the against-side cell.
    """
    if not curve.closed:
        raise CurveNotClosed("separation needs a closed curve")
    _require_off_boundary(surface, curve, strict)
    comps = _flood_components(surface, curve.vertex_set)

    cw: list[Cell] = []
    ccw: list[Cell] = []
    curve_vs = curve.vertex_set
    seed_a: int | None = None
    seed_b: int | None = None
    vs = curve.vertices
    for i, p in enumerate(vs):
        r = vs[(i + 1) % len(vs)]
        cells = [surface.cells[ci] for ci in surface.edge_cell_ids(edge_key(p, r))]
        along = [c for c in cells if (p, r) in set(cell_directed_edges(c))]
        against = [c for c in cells if (r, p) in set(cell_directed_edges(c))]
        if len(along) != 1 or len(against) != 1:
            raise NonOrientable(
                f"curve edge ({p},{r}) is not flanked by one cell per orientation"
            )
        cw.append(along[0])
        ccw.append(against[0])
        if seed_a is None and i == 0:
            seed_a = _seed_in_cell(along[0], p, curve_vs, last=True)
            seed_b = _seed_in_cell(against[0], p, curve_vs, last=False)
    return SeparationReport(comps, tuple(cw), tuple(ccw), seed_a, seed_b, curve)


def _seed_in_cell(cell: Cell, p: int, curve_vs: frozenset[int], last: bool) -> int | None:
    i = cell.index(p)
    walk = [cell[(i + k) % len(cell)] for k in range(1, len(cell))]
    off = [v for v in walk if v not in curve_vs]
    if not off:
        return None
    return off[-1] if last else off[0]


@dataclass
class SeparationCheck:
    """Discrete Jordan separation: verdict plus the evidence."""

    verdict: bool
    separation: SeparationReport
    hypotheses: HypothesesReport
    notes: tuple[str, ...] = ()

    @property
    def hypotheses_ok(self) -> bool:
        return self.hypotheses.ok


def check_separation(
    surface: Surface, curve: Path, pair_path_radius: int = 4
) -> SeparationCheck:
    """Does the closed curve split the surface into at least two components?

    Hypothesis failures are reported, not raised: the wide-angle conditions
    are sufficient, not necessary, so the component count is still computed
    and the verdict states whether separation actually happened.
    """
    hyp = check_wide_angle_hypotheses(surface, curve, pair_path_radius)
    rep = components(surface, curve)
    verdict = rep.separated
    notes = []
    if verdict and not hyp.ok:
        notes.append("conclusion holds, hypotheses fail")
    if not verdict:
        notes.append("separation failed: surface may not be simply connected")
    return SeparationCheck(verdict, rep, hyp, tuple(notes))


def insert_veblen_points(
    surface: Surface, curve: Path | None = None
) -> tuple[Surface, dict[int, VertexKind]]:
    """Add a central point to every 2-cell and to every edge off the curve.

    Each k-gon becomes the star of its face point (k triangles); each
    off-curve edge is then split at its edge point, doubling the incident
    star triangles.  Curve edges stay intact so no path can sneak through a
    curve edge's midpoint.  New vertex count: cells + (edges - curve edges).
    """
    curve_edges: frozenset[Edge] = curve.edge_set if curve is not None else frozenset()
    if curve is not None:
        if not curve.closed:
            raise CurveNotClosed("veblen insertion expects a closed curve")
        _require_off_boundary(surface, curve)
    kinds: dict[int, VertexKind] = {v: VertexKind("original") for v in surface.vertices}
    nxt = max(surface.vertices) + 1 if surface.vertices else 0
    face_pt: dict[int, int] = {}
    for ci, cell in enumerate(surface.cells):
        face_pt[ci] = nxt
        kinds[nxt] = VertexKind("veblen_face", canonical_cell(cell))
        nxt += 1
    edge_pt: dict[Edge, int] = {}
    for e in sorted(surface.edges):
        if e not in curve_edges:
            edge_pt[e] = nxt
            kinds[nxt] = VertexKind("veblen_edge", e)
            nxt += 1
    new_cells: list[Cell] = []
    for ci, cell in enumerate(surface.cells):
        f = face_pt[ci]
        for u, v in cell_directed_edges(cell):
            m = edge_pt.get(edge_key(u, v))
            if m is None:
                new_cells.append((u, v, f))
            else:
                new_cells.append((u, m, f))
                new_cells.append((m, v, f))
    return Surface(new_cells, surface.vertices), kinds


@dataclass
class VeblenSeparationCheck:
    """Generalized separation: exactly two components after Veblen insertion."""

    verdict: bool
    separation: SeparationReport
    refined: Surface
    kinds: dict[int, VertexKind]
    component_of_side_a: int | None
    component_of_side_b: int | None


def check_veblen_separation(surface: Surface, curve: Path) -> VeblenSeparationCheck:
    """Check that a closed simple path (semi-curves included) separates the
    Veblen-refined surface into exactly two components.

    Also locates the component holding the face points of the along-side
    flank cells and the one holding the against-side face points.
    """
    refined, kinds = insert_veblen_points(surface, curve)
    rep = components(refined, curve)
    verdict = len(rep.components) == 2

    def face_component(cells: tuple[Cell, ...]) -> int | None:
        comps: set[int] = set()
        for cell in cells:
            # Face point of the star triangle is its last vertex.
            f = cell[2]
            idx = rep.component_of(f)
            if idx is None:
                return None
            comps.add(idx)
        return comps.pop() if len(comps) == 1 else None

    side_a = face_component(rep.flank_cells_clockwise)
    side_b = face_component(rep.flank_cells_counterclockwise)
    return VeblenSeparationCheck(verdict, rep, refined, kinds, side_a, side_b)


@dataclass(frozen=True)
class DegenerateBoundary:
    """Boundary of an arc neighborhood: one cycle plus hanging branches."""

    cycle: tuple[int, ...]
    branches: tuple[tuple[int, ...], ...]  # each starts at its attachment vertex

    @property
    def branch_edge_count(self) -> int:
        return sum(len(b) - 1 for b in self.branches)


def classify_arc_neighborhood_boundary(surface: Surface, arc: Path) -> DegenerateBoundary:
    """Decompose the boundary object S(X) - X of an arc X.

    The graph considered is every edge of a cell meeting the arc whose two
    endpoints avoid the arc (edges of the arc's star only; chords of cells
    not meeting the arc are not part of the boundary object).  Degree-one
    vertices are stripped iteratively into branches; the 2-core must be one
    simple cycle.
    """
    if arc.closed or not arc.vertices:
        raise NotAnArc("expected a nonempty open arc")
    sub = arc_neighborhood(surface, arc.vertices)
    avoid = set(arc.vertices)
    adj: dict[int, set[int]] = {}
    for cell in sub.cells:
        for u, v in cell_directed_edges(cell):
            if u in avoid or v in avoid:
                continue
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)

    # Strip degree-one vertices one at a time, remembering where each hung.
    work = {u: set(ns) for u, ns in adj.items()}
    parent: dict[int, int] = {}
    while True:
        leaves = sorted(u for u, ns in work.items() if len(ns) == 1)
        if not leaves:
            break
        u = leaves[0]
        p = next(iter(work[u]))
        parent[u] = p
        del work[u]
        work[p].discard(u)

    core = dict(work)
    if not core or any(not ns for ns in core.values()):
        raise NotDegenerateBoundary("boundary does not contain a cycle")
    if any(len(ns) != 2 for ns in core.values()):
        raise NotDegenerateBoundary("2-core is not a single simple cycle")
    start = min(core)
    cycle = [start, min(core[start])]
    while True:
        nxt = [w for w in core[cycle[-1]] if w != cycle[-2]]
        if nxt[0] == start:
            break
        cycle.append(nxt[0])
    if len(cycle) != len(core):
        raise NotDegenerateBoundary("2-core is disconnected")

    # Rebuild the stripped forest as attachment-first chains; chains start at
    # tips and at junctions (stripped vertices carrying several children).
    children: dict[int, int] = {}
    for u, p in parent.items():
        children[p] = children.get(p, 0) + 1
    anchors = set(core) | {u for u in parent if children.get(u, 0) >= 2}
    branch_paths: list[tuple[int, ...]] = []
    starts = sorted(u for u in parent if children.get(u, 0) == 0 or u in anchors)
    for s in starts:
        chain = [s]
        cur = s
        while True:
            p = parent[cur]
            chain.append(p)
            if p in anchors:
                break
            cur = p
        branch_paths.append(tuple(reversed(chain)))
    return DegenerateBoundary(tuple(cycle), tuple(sorted(branch_paths)))
