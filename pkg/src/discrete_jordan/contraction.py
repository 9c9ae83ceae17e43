"""Cycle contraction over a triangulated disk region by graph distance.

A closed curve bounding a triangulated disk is contracted to the single
triangle holding a chosen anchor: each step deletes the region triangle at
the vertex farthest from the anchor, so consecutive cycles differ by exactly
one cell and never cross over.  The same peeling, restricted to one arc,
deforms the arc onto its complement; a brute-force meta-graph search over
all simple paths provides the independent oracle for that deformation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .complex_core import Cell, Edge, Surface, canonical_cell, cell_edges, edge_key
from .curves import Path, split_arcs
from .errors import (
    AnchorNotOnCurve,
    BudgetExhausted,
    CurveNotClosed,
    EqualEndpoints,
    InteriorNotDisk,
    InteriorNotTriangulated,
    JordanError,
    TooLarge,
    UnknownVertex,
)
from .gensurf import SplitMix64, random_curve
from .variation import is_side_gradually_varied, xor_sum


@dataclass(frozen=True)
class DeformationSequence:
    """Ordered paths, consecutive ones side-gradually varied.

    ``witnesses[i]`` is the single 2-cell separating entry i from entry i+1.
    For contractions every entry is a closed cycle through the anchor.
    """

    entries: tuple[Path, ...]
    kind: str  # "contraction" | "arc"
    witnesses: tuple[Cell, ...]
    anchor: int | None = None

    @property
    def steps(self) -> int:
        return len(self.entries) - 1

    def validate(self, surface: Surface) -> None:
        """Assert the structural invariants; raises JordanError on failure."""
        if len(self.witnesses) != self.steps:
            raise JordanError("one witness cell per step required")
        gone: set[int] = set()
        prev_vs: frozenset[int] | None = None
        for i, (a, b) in enumerate(zip(self.entries, self.entries[1:])):
            if xor_sum(a, b) != frozenset(cell_edges(self.witnesses[i])):
                raise JordanError(f"step {i} does not differ by its witness cell")
            if not is_side_gradually_varied(surface, a, b):
                raise JordanError(f"step {i} is not side-gradually varied")
        if self.kind == "contraction":
            for i, entry in enumerate(self.entries):
                if self.anchor is not None and self.anchor not in entry.vertex_set:
                    raise JordanError(f"anchor missing from entry {i}")
                if prev_vs is not None:
                    gone |= prev_vs - entry.vertex_set
                    if gone & entry.vertex_set:
                        raise JordanError(f"entry {i} revives a dropped vertex")
                prev_vs = entry.vertex_set


def graph_distances(
    surface: Surface,
    p: int,
    allowed_vertices: frozenset[int] | set[int] | None = None,
    adjacency: dict[int, set[int]] | None = None,
) -> dict[int, int]:
    """Breadth-first edge-count distances from p, optionally restricted."""
    if p not in surface.vertices:
        raise UnknownVertex(f"vertex {p} not in surface")
    if allowed_vertices is not None and p not in allowed_vertices:
        raise UnknownVertex(f"vertex {p} not in the restricted subgraph")
    dist = {p: 0}
    queue = deque([p])
    while queue:
        u = queue.popleft()
        nbrs = adjacency.get(u, set()) if adjacency is not None else surface.neighbors(u)
        for w in sorted(nbrs):
            if allowed_vertices is not None and w not in allowed_vertices:
                continue
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _interior_region(surface: Surface, curve: Path) -> tuple[frozenset[int], tuple[int, ...]]:
    """Marked interior vertices and the region cell ids bounded by the curve.

    The interior is the complement component free of surface-boundary
    vertices; on a closed surface it is the smaller of two components.  A
    cell belongs to the region when its off-curve vertices are all marked.
    """
    curve_vs = curve.vertex_set
    bverts = surface.boundary_vertices()
    comps: list[frozenset[int]] = []
    seen: set[int] = set(curve_vs)
    for start in sorted(surface.vertices):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for w in surface.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    comps.sort(key=lambda c: (len(c), min(c)))

    marked: frozenset[int] | None = None
    if bverts:
        free = [c for c in comps if not (c & bverts)]
        if len(free) == 1:
            marked = free[0]
        elif len(free) > 1:
            raise InteriorNotDisk("several components avoid the boundary")
    elif len(comps) == 2:
        marked = comps[0]  # smaller side of a separating curve on a closed surface
    if marked is None:
        if comps and not any(curve_vs.issuperset(c) for c in surface.cells):
            raise InteriorNotDisk("no component qualifies as the curve interior")
        marked = frozenset()

    inside = marked | curve_vs
    region = tuple(
        ci
        for ci, cell in enumerate(surface.cells)
        if all(v in curve_vs or v in marked for v in cell) and set(cell) <= inside
    )
    if not region:
        raise InteriorNotDisk("curve bounds no region cells")
    return marked, region


def contract_cycle(
    surface: Surface, curve: Path, p: int, check: bool = True
) -> DeformationSequence:
    """Contract a disk-bounding cycle onto the triangle holding the anchor.

    Each step finds the cycle vertex farthest from the anchor in the region
    graph (first such vertex walking the cycle from the anchor) and removes
    one region triangle at it: the whole corner when only one triangle
    remains there, otherwise one cycle edge is pushed across its triangle.
    A region of T triangles contracts in exactly T - 1 steps.

    With ``check`` on, the distances of surviving cycle vertices are verified
    to be unchanged by each deletion.
    """
    if not curve.closed:
        raise CurveNotClosed("contraction starts from a closed curve")
    if p not in curve.vertex_set:
        raise AnchorNotOnCurve(f"anchor {p} not on the curve")
    marked, region = _interior_region(surface, curve)
    for ci in region:
        if len(surface.cells[ci]) != 3:
            raise InteriorNotTriangulated(f"region cell {surface.cells[ci]} is not a triangle")

    remaining = set(region)
    allowed = set(marked | curve.vertex_set)
    adj: dict[int, set[int]] = {v: set() for v in allowed}

    def add_edge(u: int, v: int) -> None:
        adj[u].add(v)
        adj[v].add(u)

    for e in curve.edge_list():
        add_edge(*e)
    for ci in region:
        for u, v in cell_edges(surface.cells[ci]):
            add_edge(u, v)

    cur = curve
    entries = [cur]
    witnesses: list[Cell] = []
    prev_dist: dict[int, int] | None = None
    while len(remaining) > 1:
        dist = graph_distances(surface, p, allowed, adj)
        if check and prev_dist is not None:
            stale = [v for v in cur.vertices if prev_dist.get(v) != dist.get(v)]
            if stale:
                raise JordanError(f"distance stability violated at {stale}")
        vs = cur.vertices
        start = vs.index(p)
        order = [vs[(start + k) % len(vs)] for k in range(1, len(vs))]
        missing = [v for v in order if v not in dist]
        if missing:
            raise InteriorNotDisk(f"cycle vertex {missing[0]} unreachable from anchor")
        far = max(dist[v] for v in order)
        # First farthest vertex from the anchor, in cycle order, that admits a
        # removal; later equally-far vertices are fallbacks (the cycle may run
        # through a vertex whose detours are already on the cycle).
        step = None
        for x in (v for v in order if dist[v] == far):
            step = _contract_step(surface, cur, x, dist, remaining)
            if step is not None:
                break
        if step is None:
            raise InteriorNotDisk(f"contraction stalled; no removable triangle at distance {far}")
        new_vs, owner, t, drop_vertex, drop_edge = step
        remaining.discard(owner)
        if drop_vertex is not None:
            for w in list(adj[drop_vertex]):
                adj[w].discard(drop_vertex)
            del adj[drop_vertex]
            allowed.discard(drop_vertex)
        if drop_edge is not None:
            u, w = drop_edge
            adj[u].discard(w)
            adj[w].discard(u)
        witnesses.append(canonical_cell(t))
        cur = Path(tuple(new_vs), closed=True)
        entries.append(cur)
        prev_dist = dist

    last = surface.cells[next(iter(remaining))]
    if set(cur.vertices) != set(last) or p not in last:
        raise InteriorNotDisk("contraction did not end on the anchor cell")
    return DeformationSequence(tuple(entries), "contraction", tuple(witnesses), anchor=p)


def _contract_step(
    surface: Surface,
    cur: Path,
    x: int,
    dist: dict[int, int],
    remaining: set[int],
) -> tuple[tuple[int, ...], int, Cell, int | None, Edge | None] | None:
    """One removal at cycle vertex x, or None when nothing legal exists there.

    Returns (new cycle, removed cell id, removed cell, vertex to delete,
    edge to delete).  A vertex in a single region triangle loses its whole
    corner; otherwise one of its cycle edges is pushed across the triangle
    behind it, preferring the edge to an equally-far neighbor and then the
    incoming edge.
    """
    vs = cur.vertices
    i = vs.index(x)
    w_prev = vs[i - 1]
    w_next = vs[(i + 1) % len(vs)]
    tris = [ci for ci in remaining if x in surface.cells[ci]]
    if len(tris) == 1:
        t = surface.cells[tris[0]]
        if set(t) != {w_prev, x, w_next} or len(vs) <= 3:
            return None
        return vs[:i] + vs[i + 1 :], tris[0], t, x, None
    ordered = [(w_prev, True), (w_next, False)]
    ordered.sort(key=lambda c: (0 if dist.get(c[0]) == dist.get(x) else 1, 0 if c[1] else 1))
    for w, incoming in ordered:
        e = edge_key(x, w)
        owners = [ci for ci in remaining if e in set(cell_edges(surface.cells[ci]))]
        if len(owners) != 1:
            continue
        t = surface.cells[owners[0]]
        z = next(v for v in t if v not in (x, w))
        if z in cur.vertex_set:
            continue
        if incoming:
            new_vs = vs[:i] + (z,) + vs[i:]
        else:
            new_vs = vs[: i + 1] + (z,) + vs[i + 1 :]
        return new_vs, owners[0], t, None, e
    return None


def _path_from_edges(edges: set[Edge], p: int, q: int) -> tuple[int, ...] | None:
    """Reconstruct a simple p..q path using every edge once, or None."""
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if any(len(ns) > 2 for ns in adj.values()):
        return None
    if len(adj.get(p, ())) != 1 or len(adj.get(q, ())) != 1:
        return None
    path = [p]
    prev = None
    while path[-1] != q:
        nxt = [w for w in adj[path[-1]] if w != prev]
        if len(nxt) != 1:
            return None
        prev = path[-1]
        path.append(nxt[0])
        if len(path) > len(edges) + 1:
            return None
    if len(path) != len(edges) + 1 or len(set(path)) != len(path):
        return None
    return tuple(path)


def deform_arc(surface: Surface, curve: Path, p: int, q: int) -> DeformationSequence:
    """Slide the arc C(p,q) across the enclosed disk onto the opposite arc.

    Peels one region triangle per step, always from the side the moving arc
    currently faces, keeping every intermediate a simple path from p to q.
    """
    if p == q:
        raise EqualEndpoints(f"p and q are both {p}")
    arc_fwd, arc_bwd = split_arcs(curve, p, q)
    marked, region = _interior_region(surface, curve)
    for ci in region:
        if len(surface.cells[ci]) != 3:
            raise InteriorNotTriangulated(f"region cell {surface.cells[ci]} is not a triangle")
    remaining = set(region)
    cur = arc_fwd
    entries = [cur]
    witnesses: list[Cell] = []
    while remaining:
        step = None
        for e in cur.edge_list():
            owners = [ci for ci in remaining if e in set(cell_edges(surface.cells[ci]))]
            if len(owners) != 1:
                continue
            t = surface.cells[owners[0]]
            new_edges = set(cur.edge_set) ^ set(cell_edges(t))
            new_vs = _path_from_edges(new_edges, p, q)
            if new_vs is None:
                continue
            step = (owners[0], t, new_vs)
            break
        if step is None:
            raise InteriorNotDisk("arc deformation stalled")
        owner, t, new_vs = step
        remaining.discard(owner)
        cur = Path(new_vs)
        entries.append(cur)
        witnesses.append(canonical_cell(t))
    if cur.vertices != arc_bwd.vertices:
        raise InteriorNotDisk("arc deformation did not reach the opposite arc")
    return DeformationSequence(tuple(entries), "arc", tuple(witnesses))


def _all_simple_paths(surface: Surface, p: int, q: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    path = [p]
    on_path = {p}

    def walk() -> None:
        u = path[-1]
        if u == q:
            out.append(tuple(path))
            return
        for w in surface.neighbors(u):
            if w not in on_path:
                path.append(w)
                on_path.add(w)
                walk()
                path.pop()
                on_path.discard(w)

    walk()
    return out


def arc_deformable_bruteforce(
    surface: Surface, curve: Path, p: int, q: int, cell_limit: int = 12
) -> bool:
    """Oracle: is C(p,q) connected to its opposite arc in the meta-graph of
    all simple p..q paths under side-gradual variation?  Exhaustive, so the
    surface is capped at ``cell_limit`` cells."""
    if len(surface.cells) > cell_limit:
        raise TooLarge(f"{len(surface.cells)} cells exceeds the oracle limit {cell_limit}")
    arc_fwd, arc_bwd = split_arcs(curve, p, q)
    nodes = _all_simple_paths(surface, p, q)
    index = {vs: i for i, vs in enumerate(nodes)}
    start = index[arc_fwd.vertices]
    goal = index[arc_bwd.vertices]
    seen = {start}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        if i == goal:
            return True
        a = Path(nodes[i])
        for j, vs in enumerate(nodes):
            if j in seen:
                continue
            if is_side_gradually_varied(surface, a, Path(vs)):
                seen.add(j)
                queue.append(j)
    return False


@dataclass(frozen=True)
class SampleSpec:
    """How many curves to sample, and how."""

    curves: int
    seed: int = 0
    pairs: int = 2
    min_len: int = 3
    max_len: int = 12


@dataclass
class CertificationSample:
    curve: Path
    p: int
    q: int
    ok: bool
    note: str = ""


@dataclass
class CertificationReport:
    samples: list[CertificationSample] = field(default_factory=list)
    skipped: int = 0
    warnings: tuple[str, ...] = ()

    @property
    def certified(self) -> bool:
        return bool(self.samples) and all(s.ok for s in self.samples)


def certify_simply_connected(surface: Surface, spec: SampleSpec) -> CertificationReport:
    """Sample closed discrete curves and try to deform each sampled arc onto
    its complement; any failure leaves the surface uncertified."""
    report = CertificationReport()
    if spec.curves <= 0:
        report.warnings = ("empty sample: certification is vacuous",)
        return report
    rng = SplitMix64(spec.seed ^ 0xC0FFEE)
    for i in range(spec.curves):
        try:
            curve = random_curve(surface, spec.seed + i, spec.min_len, spec.max_len)
        except BudgetExhausted:
            report.skipped += 1
            continue
        vs = curve.vertices
        for _ in range(max(1, spec.pairs)):
            p = vs[rng.below(len(vs))]
            q = vs[rng.below(len(vs))]
            if p == q:
                q = vs[(vs.index(p) + 1 + rng.below(len(vs) - 1)) % len(vs)]
            try:
                deform_arc(surface, curve, p, q)
                report.samples.append(CertificationSample(curve, p, q, True))
            except JordanError as exc:
                report.samples.append(CertificationSample(curve, p, q, False, str(exc)))
    if not report.samples:
        report.warnings = ("no usable samples: certification is vacuous",)
    return report
