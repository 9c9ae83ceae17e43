"""Vertex paths on a surface and curve classification.

A simple path is a pseudo-curve; if its vertex set picks up at most one
2-cell it is a semi-curve; if it contains no 2-cell at all it is a discrete
curve.  The wide-angle hypotheses checked here are the preconditions under
which a closed discrete curve is guaranteed to separate the surface.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complex_core import Edge, Surface, edge_key
from .errors import (
    BoundaryContact,
    CurveNotClosed,
    EdgeMissing,
    EqualEndpoints,
    NoDetour,
    NotSimple,
    VertexNotOnCurve,
)


@dataclass(frozen=True)
class Path:
    """Simple vertex path; closed paths do not repeat the first vertex."""

    vertices: tuple[int, ...]
    closed: bool = False

    @staticmethod
    def make(surface: Surface, vertices: Sequence[int], closed: bool = False) -> "Path":
        """Validated constructor: simplicity plus edge existence."""
        vs = tuple(vertices)
        if not vs:
            raise NotSimple("empty path")
        if len(set(vs)) != len(vs):
            raise NotSimple(f"repeated vertex in {vs}")
        if closed and len(vs) < 3:
            raise NotSimple(f"closed path needs 3 vertices, got {vs}")
        pairs = list(zip(vs, vs[1:]))
        if closed:
            pairs.append((vs[-1], vs[0]))
        for a, b in pairs:
            if not surface.has_edge(a, b):
                raise EdgeMissing(f"({a},{b}) is not an edge of the surface")
        return Path(vs, closed)

    def __len__(self) -> int:
        return len(self.vertices)

    def edge_list(self) -> tuple[Edge, ...]:
        vs = self.vertices
        pairs = list(zip(vs, vs[1:]))
        if self.closed:
            pairs.append((vs[-1], vs[0]))
        return tuple(edge_key(a, b) for a, b in pairs)

    @property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edge_list())

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def index(self, v: int) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise VertexNotOnCurve(f"vertex {v} not on path") from None

    def succ(self, v: int) -> int | None:
        i = self.index(v)
        if i + 1 < len(self.vertices):
            return self.vertices[i + 1]
        return self.vertices[0] if self.closed else None

    def pred(self, v: int) -> int | None:
        i = self.index(v)
        if i > 0:
            return self.vertices[i - 1]
        return self.vertices[-1] if self.closed else None

    def reversed_(self) -> "Path":
        return Path(tuple(reversed(self.vertices)), self.closed)


class CurveClass(enum.IntEnum):
    """Nested classes, strongest last."""

    PSEUDO_CURVE = 0
    SEMI_CURVE = 1
    DISCRETE_CURVE = 2


def classify(surface: Surface, path: Path) -> CurveClass:
    """Strongest class of a simple path.

    Containment of a 2-cell is read on vertex sets: a cell lies inside the
    path when every cell vertex is a path vertex.
    """
    pv = path.vertex_set
    contained = sum(1 for cell in surface.cells if pv.issuperset(cell))
    if contained == 0:
        return CurveClass.DISCRETE_CURVE
    if contained == 1:
        return CurveClass.SEMI_CURVE
    return CurveClass.PSEUDO_CURVE


@dataclass(frozen=True)
class AngleReport:
    """Detour data for one curve angle."""

    vertex: int
    wideness: int
    witness: tuple[int, ...]


def angle_wideness(surface: Surface, curve: Path, x0: int) -> AngleReport:
    """Minimum detour, in edges, between the curve neighbors of x0.

    Detour edges must avoid x0 and lie in some 2-cell containing x0; the
    witness is the shortest such path from the predecessor to the successor.
    """
    before = curve.pred(x0)
    after = curve.succ(x0)
    if before is None or after is None:
        raise VertexNotOnCurve(f"vertex {x0} has no two curve neighbors")
    allowed: dict[int, set[int]] = {}
    for cell in surface.cells_at(x0):
        n = len(cell)
        for i in range(n):
            a, b = cell[i], cell[(i + 1) % n]
            if x0 in (a, b):
                continue
            allowed.setdefault(a, set()).add(b)
            allowed.setdefault(b, set()).add(a)
    dist = {before: 0}
    parent: dict[int, int] = {}
    queue = deque([before])
    while queue:
        u = queue.popleft()
        if u == after:
            break
        for w in sorted(allowed.get(u, ())):
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    if after not in dist:
        raise NoDetour(f"no detour from {before} to {after} around {x0}")
    path = [after]
    while path[-1] != before:
        path.append(parent[path[-1]])
    return AngleReport(x0, dist[after], tuple(reversed(path)))


@dataclass(frozen=True)
class PairIssue:
    """Off-curve short circuit between two non-adjacent curve vertices."""

    p: int
    q: int
    path: tuple[int, ...]
    reason: str


@dataclass
class HypothesesReport:
    """Outcome of the wide-angle hypotheses on a closed curve."""

    curve_class: CurveClass
    angle_issues: tuple[AngleReport, ...] = ()
    pair_issues: tuple[PairIssue, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return (
            self.curve_class == CurveClass.DISCRETE_CURVE
            and not self.angle_issues
            and not self.pair_issues
        )


def _curve_distance(curve: Path, p: int, q: int) -> int:
    i, j = curve.index(p), curve.index(q)
    d = abs(i - j)
    return min(d, len(curve.vertices) - d)


def _three_edges_three_cells(surface: Surface, path: Sequence[int]) -> bool:
    """Can three distinct cells be matched to three edges of the path?"""
    edges = [edge_key(a, b) for a, b in zip(path, path[1:])]
    if len(edges) < 3:
        return False
    from itertools import combinations, product

    for triple in combinations(edges, 3):
        cell_choices = [surface.edge_cell_ids(e) for e in triple]
        for assignment in product(*cell_choices):
            if len(set(assignment)) == 3:
                return True
    return False


def check_wide_angle_hypotheses(
    surface: Surface,
    curve: Path,
    pair_path_radius: int = 4,
) -> HypothesesReport:
    """Check the two separation hypotheses on a closed discrete curve.

    (1) every angle has wideness 3 or more, and (2) non-adjacent curve
    vertices admit no short off-curve connection: every path of length at
    most ``pair_path_radius`` built from non-curve edges must carry three
    edges in three distinct 2-cells.  Pairs two apart along the curve are the
    angle of (1) and are exempt from (2); the radius is a finite-search knob.

    Paths of length 3 or more made of interior edges always satisfy (2) in a
    valid complex (two cells never share two edges), so the expensive search
    only runs when a boundary edge lies within reach of the curve.
    """
    if not curve.closed:
        raise CurveNotClosed("hypotheses apply to closed curves")
    bverts = surface.boundary_vertices()
    if curve.vertex_set & bverts:
        raise BoundaryContact("curve touches the surface boundary")
    angle_issues = []
    cls = classify(surface, curve)
    notes: list[str] = []
    if cls != CurveClass.DISCRETE_CURVE:
        notes.append("curve contains a 2-cell")
    for x0 in curve.vertices:
        try:
            rep = angle_wideness(surface, curve, x0)
        except NoDetour:
            angle_issues.append(AngleReport(x0, 0, ()))
            continue
        if rep.wideness < 3:
            angle_issues.append(rep)

    cv = curve.vertex_set
    pair_issues: list[PairIssue] = []
    seen_pairs: set[tuple[int, int]] = set()

    def pair_applies(p: int, q: int) -> bool:
        return (
            p != q
            and not surface.has_edge(p, q)
            and _curve_distance(curve, p, q) >= 3
        )

    # Two curve strands pinching at one vertex: the curve vertices around any
    # single vertex must form one contiguous stretch of the curve.  A short
    # two-edge connection between far-apart curve vertices shows up as a
    # second stretch; a curve merely wrapping around the vertex does not.
    pos = {v: i for i, v in enumerate(curve.vertices)}
    n = len(curve.vertices)
    for w in sorted(surface.vertices):
        around = {pos[u] for u in surface.neighbors(w) if u in pos}
        if w in pos:
            around.add(pos[w])
        if len(around) < 2 or len(around) == n:
            continue
        ordered = sorted(around)
        breaks = []
        for a, b in zip(ordered, ordered[1:] + [ordered[0] + n]):
            if b - a > 2:
                breaks.append((a % n, b % n))
        if len(breaks) >= 2:
            p = curve.vertices[breaks[0][0]]
            q = curve.vertices[breaks[1][0]]
            key = (min(p, q), max(p, q))
            if key not in seen_pairs:
                seen_pairs.add(key)
                pair_issues.append(
                    PairIssue(p, q, (p, w, q), f"curve strands pinch at vertex {w}")
                )

    # Longer paths can only fail near the surface boundary.
    if bverts and pair_path_radius >= 3:
        reach = set(cv)
        frontier = set(cv)
        for _ in range(pair_path_radius):
            frontier = {w for u in frontier for w in surface.neighbors(u)} - reach
            reach |= frontier
        if reach & bverts:
            pair_issues.extend(
                _search_weak_paths(surface, curve, pair_path_radius, pair_applies, seen_pairs)
            )

    return HypothesesReport(cls, tuple(angle_issues), tuple(sorted(pair_issues, key=lambda i: (i.p, i.q))), tuple(notes))


def _search_weak_paths(surface, curve, radius, pair_applies, seen_pairs) -> list[PairIssue]:
    """Enumerate off-curve paths of length 3..radius that lack three edges in
    three cells.  Only used on small complexes where the curve runs close to
    the boundary."""
    curve_edges = curve.edge_set
    cv = curve.vertex_set
    issues: list[PairIssue] = []

    def extend(path: list[int]) -> None:
        u = path[-1]
        if len(path) > 1 and u in cv and pair_applies(path[0], u):
            if len(path) >= 4 and not _three_edges_three_cells(surface, path):
                key = (min(path[0], u), max(path[0], u))
                if key not in seen_pairs:
                    seen_pairs.add(key)
                    issues.append(PairIssue(path[0], u, tuple(path), "no three edges in three cells"))
        if len(path) > radius:
            return
        for w in sorted(surface.neighbors(u)):
            if w in path or edge_key(u, w) in curve_edges:
                continue
            path.append(w)
            extend(path)
            path.pop()

    for p in sorted(cv):
        extend([p])
    return issues


def split_arcs(curve: Path, p: int, q: int) -> tuple[Path, Path]:
    """Split a closed curve at p and q.

    Returns (arc along the stored orientation from p to q, arc against it),
    both as open paths from p to q.
    """
    if p == q:
        raise EqualEndpoints(f"p and q are both {p}")
    if not curve.closed:
        raise CurveNotClosed("arcs split a closed curve")
    i, j = curve.index(p), curve.index(q)
    vs = curve.vertices
    n = len(vs)
    forward = [vs[(i + k) % n] for k in range(0, (j - i) % n + 1)]
    backward = [vs[(j + k) % n] for k in range(0, (i - j) % n + 1)]
    return Path(tuple(forward)), Path(tuple(reversed(backward)))
