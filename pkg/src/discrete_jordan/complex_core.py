"""Combinatorial 2-complexes: a vertex set, derived edges, and oriented 2-cells.

A Surface stores each 2-cell as a cyclic vertex sequence; the stored order is
the cell's chosen clockwise orientation.  Edges are derived from consecutive
pairs.  All operations treat Surface values as immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    BoundaryVertex,
    DisconnectedComplex,
    IrregularVertex,
    NonOrientable,
    NotAPath,
    UnknownVertex,
)

Edge = tuple[int, int]
Cell = tuple[int, ...]


def edge_key(u: int, v: int) -> Edge:
    """Unordered edge as a sorted pair."""
    return (u, v) if u < v else (v, u)


def cell_edges(cell: Sequence[int]) -> Iterator[Edge]:
    n = len(cell)
    for i in range(n):
        yield edge_key(cell[i], cell[(i + 1) % n])


def cell_directed_edges(cell: Sequence[int]) -> Iterator[tuple[int, int]]:
    n = len(cell)
    for i in range(n):
        yield cell[i], cell[(i + 1) % n]


def canonical_cell(cell: Sequence[int]) -> Cell:
    """Representative of a cyclic sequence, independent of rotation and
    direction: the lexicographically smallest rotation over both readings."""
    n = len(cell)
    seqs = (tuple(cell), tuple(reversed(cell)))
    best = None
    for seq in seqs:
        for s in range(n):
            cand = seq[s:] + seq[:s]
            if best is None or cand < best:
                best = cand
    return best


class Surface:
    """Immutable complex <V, E, U2>.

    Construction never validates topological invariants; ``validate`` reports
    them so that malformed inputs can still be inspected.
    """

    __slots__ = ("cells", "vertices", "_edge_cells", "_vertex_cells", "_neighbors")

    def __init__(self, cells: Iterable[Sequence[int]], extra_vertices: Iterable[int] = ()):
        self.cells: tuple[Cell, ...] = tuple(tuple(c) for c in cells)
        verts = set(extra_vertices)
        edge_cells: dict[Edge, list[int]] = {}
        vertex_cells: dict[int, list[int]] = {}
        for ci, cell in enumerate(self.cells):
            for v in cell:
                verts.add(v)
                vertex_cells.setdefault(v, []).append(ci)
            for e in cell_edges(cell):
                edge_cells.setdefault(e, []).append(ci)
        self.vertices: frozenset[int] = frozenset(verts)
        self._edge_cells = {e: tuple(cs) for e, cs in edge_cells.items()}
        self._vertex_cells = {v: tuple(cs) for v, cs in vertex_cells.items()}
        nbrs: dict[int, set[int]] = {}
        for u, v in self._edge_cells:
            nbrs.setdefault(u, set()).add(v)
            nbrs.setdefault(v, set()).add(u)
        self._neighbors = {v: tuple(sorted(ns)) for v, ns in nbrs.items()}

    # -- queries ----------------------------------------------------------

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(self._edge_cells)

    def edge_cell_ids(self, e: Edge) -> tuple[int, ...]:
        return self._edge_cells.get(edge_key(*e), ())

    def cell_ids_at(self, v: int) -> tuple[int, ...]:
        return self._vertex_cells.get(v, ())

    def cells_at(self, v: int) -> tuple[Cell, ...]:
        return tuple(self.cells[i] for i in self.cell_ids_at(v))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._neighbors.get(v, ())

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._edge_cells

    def boundary_edges(self) -> frozenset[Edge]:
        return frozenset(e for e, cs in self._edge_cells.items() if len(cs) == 1)

    def boundary_vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for u, v in self.boundary_edges():
            out.add(u)
            out.add(v)
        return frozenset(out)

    def canonical_cells(self) -> tuple[Cell, ...]:
        return tuple(sorted(canonical_cell(c) for c in self.cells))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Surface):
            return NotImplemented
        return self.vertices == other.vertices and self.canonical_cells() == other.canonical_cells()

    def __hash__(self) -> int:
        return hash((self.vertices, self.canonical_cells()))

    def __repr__(self) -> str:
        return f"Surface({len(self.vertices)} vertices, {len(self.cells)} cells)"


@dataclass(frozen=True)
class Subcomplex:
    """Cells meeting a vertex set, with their vertices and edges.

    Cells are the stars of the defining vertices (every cell that contains one
    of them), not the closure of all cells spanned by the vertex set; the
    boundary decomposition in the jordan module depends on this reading.
    """

    vertices: frozenset[int]
    cells: tuple[Cell, ...]
    edges: frozenset[Edge]


@dataclass(frozen=True)
class VertexKind:
    """Provenance of a vertex: original, or a central point of an edge/cell."""

    kind: str  # "original" | "veblen_edge" | "veblen_face"
    parent: tuple[int, ...] | None = None


@dataclass
class Violation:
    message: str
    detail: tuple = ()

    def __str__(self) -> str:
        if self.detail:
            return f"{self.message}: {self.detail}"
        return self.message


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def validate(surface: Surface) -> ValidationReport:
    """Report every violated structural invariant of the complex."""
    report = ValidationReport()
    for cell in surface.cells:
        if len(cell) < 3:
            report.violations.append(Violation("cell shorter than 3 vertices", (cell,)))
        if len(set(cell)) != len(cell):
            report.violations.append(Violation("cell is not a simple cycle", (cell,)))
    # Minimality: no cell's vertex set properly contained in another's.
    sets = [frozenset(c) for c in surface.cells]
    for i, si in enumerate(sets):
        for j, sj in enumerate(sets):
            if i != j and si < sj:
                report.violations.append(
                    Violation("cell contained in another cell", (surface.cells[i], surface.cells[j]))
                )
    for e, cs in sorted(surface._edge_cells.items()):
        if len(cs) > 2:
            report.violations.append(Violation("edge in more than two cells", (e,)))
    # No two cells share more than one edge.
    shared: dict[tuple[int, int], int] = {}
    for e, cs in surface._edge_cells.items():
        if len(cs) == 2:
            pair = (min(cs), max(cs))
            shared[pair] = shared.get(pair, 0) + 1
    for (i, j), count in sorted(shared.items()):
        if count > 1:
            report.violations.append(
                Violation("cells share more than one edge", (surface.cells[i], surface.cells[j]))
            )
    return report


def neighborhood(surface: Surface, p: int) -> Subcomplex:
    """Star of p: p together with every 2-cell containing p."""
    if p not in surface.vertices:
        raise UnknownVertex(f"vertex {p} not in surface")
    cells = surface.cells_at(p)
    verts = {p}
    edges: set[Edge] = set()
    for cell in cells:
        verts.update(cell)
        edges.update(cell_edges(cell))
    return Subcomplex(frozenset(verts), cells, frozenset(edges))


def arc_neighborhood(surface: Surface, arc: Sequence[int]) -> Subcomplex:
    """Union of vertex stars along a simple path."""
    verts_on_arc = list(arc)
    if not verts_on_arc:
        raise NotAPath("empty arc")
    if len(set(verts_on_arc)) != len(verts_on_arc):
        raise NotAPath(f"repeated vertex in {verts_on_arc}")
    for v in verts_on_arc:
        if v not in surface.vertices:
            raise UnknownVertex(f"vertex {v} not in surface")
    for a, b in zip(verts_on_arc, verts_on_arc[1:]):
        if not surface.has_edge(a, b):
            raise NotAPath(f"({a},{b}) is not an edge")
    cell_ids: list[int] = []
    seen: set[int] = set()
    for v in verts_on_arc:
        for ci in surface.cell_ids_at(v):
            if ci not in seen:
                seen.add(ci)
                cell_ids.append(ci)
    cells = tuple(surface.cells[i] for i in sorted(cell_ids))
    verts = set(verts_on_arc)
    edges: set[Edge] = set()
    for cell in cells:
        verts.update(cell)
        edges.update(cell_edges(cell))
    return Subcomplex(frozenset(verts), cells, frozenset(edges))


def _wedge(cell: Cell, p: int) -> tuple[int, ...]:
    """Path around ``cell`` from p's successor to p's predecessor."""
    i = cell.index(p)
    n = len(cell)
    return tuple(cell[(i + j) % n] for j in range(1, n))


def vertex_link(surface: Surface, p: int) -> tuple[tuple[int, ...], bool]:
    """Ordered link of p: (sequence, closed).

    Closed for an inner regular vertex, an open arc for a regular boundary
    vertex.  The order follows the stored orientation of the incident cells.
    Raises IrregularVertex when the umbrella does not chain into a single
    fan or cycle.
    """
    if p not in surface.vertices:
        raise UnknownVertex(f"vertex {p} not in surface")
    cell_ids = surface.cell_ids_at(p)
    if not cell_ids:
        raise IrregularVertex(f"vertex {p} has no incident cell")
    # Spokes: edges at p, each belonging to one or two incident cells.
    spoke_cells: dict[int, list[int]] = {}
    for ci in cell_ids:
        cell = surface.cells[ci]
        if cell.count(p) != 1:
            raise IrregularVertex(f"vertex {p} repeated in cell {cell}")
        i = cell.index(p)
        for q in (cell[i - 1], cell[(i + 1) % len(cell)]):
            spoke_cells.setdefault(q, []).append(ci)
    boundary_spokes = [q for q, cs in spoke_cells.items() if len(cs) == 1]
    if any(len(cs) > 2 for cs in spoke_cells.values()):
        raise IrregularVertex(f"umbrella at {p} branches")
    if len(boundary_spokes) not in (0, 2):
        raise IrregularVertex(f"umbrella at {p} has {len(boundary_spokes)} loose spokes")
    closed = not boundary_spokes

    def wedge_of(ci: int) -> tuple[int, ...]:
        return _wedge(surface.cells[ci], p)

    if closed:
        start = cell_ids[0]
    else:
        # Walk forward: start at the cell whose successor spoke is loose.
        starts = []
        for ci in cell_ids:
            cell = surface.cells[ci]
            i = cell.index(p)
            nxt = cell[(i + 1) % len(cell)]
            if len(spoke_cells[nxt]) == 1:
                starts.append(ci)
        if len(starts) != 1:
            raise IrregularVertex(f"umbrella at {p} has no unique start")
        start = starts[0]

    path = list(wedge_of(start))
    used = {start}
    while len(used) < len(cell_ids):
        tail = path[-1]
        nxt_cells = [ci for ci in spoke_cells.get(tail, ()) if ci not in used]
        if len(nxt_cells) != 1:
            raise IrregularVertex(f"umbrella at {p} does not chain at {tail}")
        ci = nxt_cells[0]
        w = wedge_of(ci)
        if w[0] == tail:
            path.extend(w[1:])
        elif w[-1] == tail:
            path.extend(reversed(w[:-1]))
        else:
            raise IrregularVertex(f"umbrella at {p} misaligned at {tail}")
        used.add(ci)
    if closed:
        if path[0] != path[-1]:
            raise IrregularVertex(f"umbrella at {p} does not close")
        path = path[:-1]
    if len(set(path)) != len(path):
        raise IrregularVertex(f"link of {p} revisits a vertex")
    return tuple(path), closed


def link_cycle(surface: Surface, p: int) -> tuple[int, ...]:
    """Simple cycle through the star of an inner regular vertex.

    The cycle is oriented consistently with the stored orientation of p's
    incident cells.  Regularity is decided by the umbrella walk: incident
    cells must chain into a single closed fan around p.
    """
    seq, closed = vertex_link(surface, p)
    if not closed:
        raise BoundaryVertex(f"vertex {p} lies on the surface boundary")
    return seq


def orient(surface: Surface) -> Surface:
    """Rewrite cell orders so adjacent cells traverse shared edges oppositely.

    The first stored cell keeps its orientation.  Raises NonOrientable when no
    consistent assignment exists and DisconnectedComplex when the cells do not
    form a single edge-connected component.
    """
    if not surface.cells:
        return surface
    n = len(surface.cells)
    flip = [False] * n
    seen = [False] * n
    queue = [0]
    seen[0] = True
    directed: dict[int, set[tuple[int, int]]] = {}

    def dir_edges(ci: int) -> set[tuple[int, int]]:
        if ci not in directed:
            cell = surface.cells[ci]
            if flip[ci]:
                cell = tuple(reversed(cell))
            directed[ci] = set(cell_directed_edges(cell))
        return directed[ci]

    while queue:
        ci = queue.pop()
        for e in cell_edges(surface.cells[ci]):
            for cj in surface._edge_cells[e]:
                if cj == ci:
                    continue
                # Consistent iff cj traverses e opposite to ci.
                u, v = e
                ci_fwd = (u, v) in dir_edges(ci)
                cj_cell = surface.cells[cj]
                cj_fwd = (u, v) in set(cell_directed_edges(cj_cell))
                want_flip = ci_fwd == cj_fwd
                if not seen[cj]:
                    flip[cj] = flip[ci] != want_flip
                    seen[cj] = True
                    queue.append(cj)
                else:
                    if flip[cj] != (flip[ci] != want_flip):
                        raise NonOrientable("orientation conflict at edge %s" % (e,))
    if not all(seen):
        raise DisconnectedComplex("cells are not edge-connected")
    new_cells = [
        tuple(reversed(c)) if flip[i] else c for i, c in enumerate(surface.cells)
    ]
    return Surface(new_cells, surface.vertices)


def is_oriented(surface: Surface) -> bool:
    """True when every interior edge is traversed oppositely by its two cells."""
    for e, cs in surface._edge_cells.items():
        if len(cs) != 2:
            continue
        u, v = e
        a = (u, v) in set(cell_directed_edges(surface.cells[cs[0]]))
        b = (u, v) in set(cell_directed_edges(surface.cells[cs[1]]))
        if a == b:
            return False
    return True


def boundary(surface: Surface) -> tuple[frozenset[Edge], frozenset[int]]:
    """Edges with exactly one incident 2-cell, and their endpoints."""
    edges = surface.boundary_edges()
    verts: set[int] = set()
    for u, v in edges:
        verts.add(u)
        verts.add(v)
    return edges, frozenset(verts)
