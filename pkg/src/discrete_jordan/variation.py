"""Gradual variation, cross-over, and side-gradual variation of simple paths.

Two paths are gradually varied when the symmetric difference of their edge
sets is exactly a union of 2-cell boundaries.  They cross over when they pass
through a shared segment and exit on opposite sides of it.  Side-gradually
varied means gradually varied without crossing over.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .complex_core import Cell, Edge, Surface, canonical_cell, cell_edges, edge_key, vertex_link
from .curves import Path
from .errors import IrregularSharedVertex, IrregularVertex, TooLarge


def xor_sum(path_a: Path, path_b: Path) -> frozenset[Edge]:
    """Symmetric difference of the two edge sets (sum modulo 2)."""
    return path_a.edge_set ^ path_b.edge_set


def _candidate_cells(surface: Surface, path_a: Path, path_b: Path) -> list[int]:
    """Cells whose vertices all lie on the two paths.

    A witness cell of a direct deformation cannot use outside vertices, so
    the decomposition search is restricted to these.
    """
    span = path_a.vertex_set | path_b.vertex_set
    return [ci for ci, cell in enumerate(surface.cells) if span.issuperset(cell)]


def _cell_mask(cell: Cell, edge_index: dict[Edge, int]) -> int | None:
    mask = 0
    for e in cell_edges(cell):
        bit = edge_index.get(e)
        if bit is None:
            return None
        mask |= 1 << bit
    return mask


def _solve_gf2(masks: Sequence[int], target: int) -> int | None:
    """Subset of rows XOR-ing to target, as a bitmask over row indices."""
    pivots: dict[int, tuple[int, int]] = {}
    for idx, mask in enumerate(masks):
        cur, combo = mask, 1 << idx
        while cur:
            low = cur & -cur
            if low in pivots:
                pmask, pcombo = pivots[low]
                cur ^= pmask
                combo ^= pcombo
            else:
                pivots[low] = (cur, combo)
                break
    cur, combo = target, 0
    while cur:
        low = cur & -cur
        if low not in pivots:
            return None
        pmask, pcombo = pivots[low]
        cur ^= pmask
        combo ^= pcombo
    return combo


def decompose_into_cells(
    surface: Surface, target: frozenset[Edge], candidate_ids: Iterable[int]
) -> tuple[Cell, ...] | None:
    """Cells of the surface whose boundaries XOR to the target edge set.

    Greedy peeling handles the common case of disjoint cells; the general
    case is solved exactly over GF(2).  Returns None when no subset works.
    """
    if not target:
        return ()
    cands = sorted(set(candidate_ids))
    # Greedy: repeatedly absorb a cell fully contained in the residue.
    residue = set(target)
    chosen: list[int] = []
    used: set[int] = set()
    progress = True
    while residue and progress:
        progress = False
        e = min(residue)
        for ci in cands:
            if ci in used or ci not in set(surface.edge_cell_ids(e)):
                continue
            cedges = set(cell_edges(surface.cells[ci]))
            if cedges <= residue:
                residue ^= cedges
                chosen.append(ci)
                used.add(ci)
                progress = True
                break
    if not residue:
        return tuple(sorted(canonical_cell(surface.cells[ci]) for ci in chosen))

    edge_index: dict[Edge, int] = {}
    for ci in cands:
        for e in cell_edges(surface.cells[ci]):
            edge_index.setdefault(e, len(edge_index))
    target_mask = 0
    for e in target:
        if e not in edge_index:
            return None
        target_mask |= 1 << edge_index[e]
    masks = []
    for ci in cands:
        m = _cell_mask(surface.cells[ci], edge_index)
        masks.append(m if m is not None else 0)
    combo = _solve_gf2(masks, target_mask)
    if combo is None:
        return None
    picked = [cands[i] for i in range(len(cands)) if combo >> i & 1]
    return tuple(sorted(canonical_cell(surface.cells[ci]) for ci in picked))


def decompose_exhaustive(
    surface: Surface, target: frozenset[Edge], candidate_ids: Iterable[int]
) -> tuple[Cell, ...] | None:
    """Subset-search oracle for the decomposition; desk scale only."""
    cands = sorted(set(candidate_ids))
    if len(cands) > 20:
        raise TooLarge(f"{len(cands)} candidate cells, oracle limit is 20")
    for size in range(len(cands) + 1):
        for subset in combinations(cands, size):
            acc: set[Edge] = set()
            for ci in subset:
                acc ^= set(cell_edges(surface.cells[ci]))
            if acc == set(target):
                return tuple(sorted(canonical_cell(surface.cells[ci]) for ci in subset))
    return None


def is_gradually_varied(
    surface: Surface, path_a: Path, path_b: Path
) -> tuple[bool, tuple[Cell, ...]]:
    """Decide gradual variation; on success also return the witness cells."""
    target = xor_sum(path_a, path_b)
    if not target:
        return True, ()
    witness = decompose_into_cells(surface, target, _candidate_cells(surface, path_a, path_b))
    if witness is None:
        return False, ()
    return True, witness


def _rotationally_between(seq: tuple[int, ...], before: int, after: int, x: int) -> bool:
    """True when x sits strictly between before and after walking the link
    forward; open links wrap through the boundary gap."""
    n = len(seq)
    i = seq.index(before)
    j = seq.index(after)
    k = (i + 1) % n
    while k != j:
        if seq[k] == x:
            return True
        k = (k + 1) % n
    return False


def _side(surface: Surface, w: int, before: int, after: int, x: int) -> int:
    try:
        seq, _closed = vertex_link(surface, w)
    except IrregularVertex as exc:
        raise IrregularSharedVertex(str(exc)) from exc
    for v in (before, after, x):
        if v not in seq:
            raise IrregularSharedVertex(f"vertex {v} missing from the link of {w}")
    return 0 if _rotationally_between(seq, before, after, x) else 1


def _shared_runs(path_a: Path, path_b: Path) -> list[tuple[list[int], int | None, int | None]]:
    """Maximal segments of B that follow A edge by edge.

    Each run is reported as (B-indices, B-neighbor before, B-neighbor after);
    neighbors are vertices of B just outside the run, None at an open end.
    """
    pos = {v: i for i, v in enumerate(path_a.vertices)}
    bv = path_b.vertices
    nb = len(bv)
    na = len(path_a.vertices)

    def a_adjacent(u: int, v: int) -> bool:
        d = abs(pos[u] - pos[v])
        if path_a.closed:
            return d == 1 or d == na - 1
        return d == 1

    def linked(i: int, j: int) -> bool:
        return bv[i] in pos and bv[j] in pos and a_adjacent(bv[i], bv[j])

    runs: list[tuple[list[int], int | None, int | None]] = []
    in_a = [v in pos for v in bv]
    if path_b.closed:
        continues = [linked(i, (i + 1) % nb) for i in range(nb)]
        if all(in_a) and all(continues):
            return []  # B retraces A entirely; no segment ends to compare
        starts = [
            i
            for i in range(nb)
            if in_a[i] and not (in_a[i - 1] and continues[(i - 1) % nb])
        ]
        for s in starts:
            idx = [s]
            while continues[idx[-1] % nb] and in_a[(idx[-1] + 1) % nb]:
                idx.append((idx[-1] + 1) % nb)
            runs.append((idx, bv[(s - 1) % nb], bv[(idx[-1] + 1) % nb]))
    else:
        i = 0
        while i < nb:
            if not in_a[i]:
                i += 1
                continue
            idx = [i]
            while i + 1 < nb and in_a[i + 1] and linked(i, i + 1):
                i += 1
                idx.append(i)
            before = bv[idx[0] - 1] if idx[0] > 0 else None
            after = bv[idx[-1] + 1] if idx[-1] + 1 < nb else None
            runs.append((idx, before, after))
            i += 1
    return runs


def crosses_over(
    surface: Surface, path_a: Path, path_b: Path
) -> tuple[bool, tuple[tuple[int, int], ...]]:
    """Detect segments where B enters and leaves on opposite sides of A.

    Sides are read off the ordered vertex links at the segment ends, so the
    incident cells must form a regular (possibly boundary) umbrella there.
    Returns the crossing flag and the witnessing segment endpoints.
    """
    pos = {v: i for i, v in enumerate(path_a.vertices)}
    bv = path_b.vertices
    witnesses: list[tuple[int, int]] = []
    for idx, beta_before, beta_after in _shared_runs(path_a, path_b):
        if beta_before is None or beta_after is None:
            continue
        first, last = bv[idx[0] % len(bv)], bv[idx[-1] % len(bv)]
        if len(idx) == 1:
            w0 = wm = first
            beta0, betam = beta_before, beta_after
        else:
            # Orient the run along A's stored direction.
            d = pos[bv[idx[1] % len(bv)]] - pos[first]
            if path_a.closed:
                forward = d == 1 or d == -(len(path_a.vertices) - 1)
            else:
                forward = d == 1
            if forward:
                w0, wm, beta0, betam = first, last, beta_before, beta_after
            else:
                w0, wm, beta0, betam = last, first, beta_after, beta_before
        a_before = path_a.pred(w0)
        a_after = path_a.succ(wm)
        if a_before is None or a_after is None:
            continue
        w0_after = path_a.succ(w0)
        wm_before = path_a.pred(wm)
        if beta0 in (a_before, w0_after) or betam in (wm_before, a_after):
            continue  # tangent contact along an existing curve edge
        side_in = _side(surface, w0, a_before, w0_after, beta0)
        side_out = _side(surface, wm, wm_before, a_after, betam)
        if side_in != side_out:
            witnesses.append((w0, wm))
    return bool(witnesses), tuple(witnesses)


def is_side_gradually_varied(surface: Surface, path_a: Path, path_b: Path) -> bool:
    """Gradually varied and not crossing over."""
    varied, _cells = is_gradually_varied(surface, path_a, path_b)
    if not varied:
        return False
    crossed, _sites = crosses_over(surface, path_a, path_b)
    return not crossed
