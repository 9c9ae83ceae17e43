"""Acceptance suite: ten pinned checks, shared by `djc accept` and the tests.

Each criterion builds its own corpus deterministically, runs at fixed
tolerances (exact equality unless stated), and reports one pass/fail line.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from fractions import Fraction

from . import fileio
from .complex_core import Surface, boundary, link_cycle, neighborhood, orient, validate
from .contraction import (
    arc_deformable_bruteforce,
    contract_cycle,
    deform_arc,
)
from .curves import Path, split_arcs
from .errors import InteriorNotDisk, JordanError
from .gensurf import GenSpec, SplitMix64, generate
from .jordan import (
    check_separation,
    check_veblen_separation,
    classify_arc_neighborhood_boundary,
    components,
)
from .planar import (
    EmbedConfig,
    PolylineCurve,
    circle_direction,
    dist2,
    embed_polygon,
    inside_outside,
    lattice,
    lattice_point,
    midpoint_subdivide,
    on_segment,
    widen_angles,
)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        state = "pass" if self.passed else "FAIL"
        return f"criterion {self.number} {self.name}: {state} ({self.detail}, {self.seconds:.1f}s)"


def _timed(number: int, name: str, fn) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except JordanError as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(number, name, passed, detail, time.perf_counter() - t0)


# -- corpora ----------------------------------------------------------------

def corpus_surface(seed: int) -> tuple[Surface, dict[str, Path]]:
    """Disk/sphere mix used by the link and arc-boundary criteria."""
    k = seed % 5
    if k == 0:
        return generate(GenSpec("octahedron", seed=seed))
    if k == 1:
        return generate(GenSpec("icosahedron", seed=seed))
    return generate(GenSpec("disk", a=1 + seed % 5, seed=seed))


def star_polygon(seed: int) -> PolylineCurve:
    """Fat star polygon whose corners sit on the unit lattice.

    Corners on lattice vertices keep the snapped curve's strands a full
    lattice step apart near every corner, which the separation hypotheses
    need; the vertex spacing is kept at three lattice steps or more.
    """
    rng = SplitMix64(seed * 2654435761 + 17)
    n = 5 + seed % 2
    base_r = 4 if n == 5 else 5
    for attempt in range(8):
        pts = []
        for k in range(n):
            jitter = 35 + 10 * rng.below(4)  # hundredths of a sector
            u = Fraction(100 * k + jitter, 100 * n)
            r = base_r + attempt + Fraction(rng.below(3), 4)
            dx, dy = circle_direction(u)
            x, y = r * dx, r * dy
            j = round(y)
            i = round(x - Fraction(j, 2))
            pts.append(lattice_point(i, j, Fraction(1)))
        try:
            poly = PolylineCurve.make(pts, closed=True)
        except JordanError:
            continue
        if poly.vertex_pairwise_min_dist2() >= 9:
            return poly
    raise JordanError(f"no lattice-aligned star polygon for seed {seed}")


def embedded_polygon(seed: int, widen: bool):
    polygon = star_polygon(seed)
    diam = polygon.diameter2()
    margin = Fraction(1)
    while margin * margin <= diam:
        margin += 1
    config = EmbedConfig(Fraction(1), margin, Fraction(0), 2)
    config.validate_for(polygon)
    x0, y0, x1, y1 = polygon.bbox()
    base = lattice(config, (x0 - margin, y0 - margin, x1 + margin, y1 + margin))
    ec, curve = embed_polygon(base, polygon)
    if widen:
        ec = widen_angles(ec, curve, config.widen_rounds)
    return polygon, ec, curve


def pinch_surface() -> tuple[Surface, Path]:
    """Disk whose arc (0,1) has a folded boundary: vertex 5 hangs off it."""
    cells = (
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5),
        (0, 5, 1), (1, 5, 4), (1, 4, 6), (1, 6, 2),
    )
    s = Surface(cells)
    return s, Path.make(s, (0, 1))


# -- criteria ---------------------------------------------------------------

def criterion_link_cycles() -> CriterionResult:
    def run():
        checked = 0
        for seed in range(100):
            surface, _curves = corpus_surface(seed)
            _edges, bverts = boundary(surface)
            for p in sorted(surface.vertices - bverts):
                cyc = link_cycle(surface, p)
                star = neighborhood(surface, p)
                if set(cyc) != set(star.vertices) - {p}:
                    return False, f"seed {seed} vertex {p}: link misses star"
                if len(set(cyc)) != len(cyc):
                    return False, f"seed {seed} vertex {p}: link repeats"
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    if not surface.has_edge(a, b):
                        return False, f"seed {seed} vertex {p}: link pair not an edge"
                checked += 1
        return True, f"{checked} links over 100 surfaces"

    return _timed(1, "link-cycles", run)


def criterion_arc_boundaries() -> CriterionResult:
    def run():
        checked = 0
        for seed in range(100):
            surface, _curves = corpus_surface(seed)
            _edges, bverts = boundary(surface)
            inner = surface.vertices - bverts
            for u, v in sorted(surface.edges):
                if u not in inner or v not in inner:
                    continue
                db = classify_arc_neighborhood_boundary(surface, Path.make(surface, (u, v)))
                if db.branches:
                    return False, f"seed {seed} edge ({u},{v}): unexpected branch"
                checked += 1
        # Longer arcs on a widened lattice curve.
        _poly, ec, curve = embedded_polygon(0, widen=True)
        vs = curve.vertices
        for ln in (3, 4, 5):
            arc = Path.make(ec.surface, vs[:ln])
            db = classify_arc_neighborhood_boundary(ec.surface, arc)
            if db.branches:
                return False, f"widened arc of {ln} vertices grew a branch"
            checked += 1
        # Positive control: the pinch fixture must branch.
        s, arc = pinch_surface()
        db = classify_arc_neighborhood_boundary(s, arc)
        if not db.branches or db.branch_edge_count < 1:
            return False, "pinch fixture produced no branch"
        return True, f"{checked} arcs clean, pinch fixture branches"

    return _timed(2, "arc-boundaries", run)


def criterion_polygon_separation() -> CriterionResult:
    def run():
        for seed in range(100):
            _poly, ec, curve = embedded_polygon(seed, widen=True)
            check = check_separation(ec.surface, curve)
            if not check.hypotheses_ok:
                return False, f"seed {seed}: hypotheses fail"
            if not check.verdict or len(check.separation.components) < 2:
                return False, f"seed {seed}: no separation"
        return True, "100/100 embedded polygons separate"

    return _timed(3, "polygon-separation", run)


def criterion_veblen_components() -> CriterionResult:
    def run():
        for seed in range(100):
            _poly, ec, curve = embedded_polygon(seed, widen=False)
            check = check_veblen_separation(ec.surface, curve)
            if not check.verdict:
                return False, f"seed {seed}: component count != 2"
            if (
                check.component_of_side_a is None
                or check.component_of_side_b is None
                or check.component_of_side_a == check.component_of_side_b
            ):
                return False, f"seed {seed}: face points not split by side"
        case1 = 0
        for seed in range(20):
            kind = "octahedron" if seed % 2 == 0 else "icosahedron"
            surface, _curves = generate(GenSpec(kind, seed=seed))
            cell = surface.cells[seed % len(surface.cells)]
            curve = Path.make(surface, cell, closed=True)
            check = check_veblen_separation(surface, curve)
            if not check.verdict:
                return False, f"sphere fixture {seed}: component count != 2"
            if (
                check.component_of_side_a is None
                or check.component_of_side_b is None
                or check.component_of_side_a == check.component_of_side_b
            ):
                return False, f"sphere fixture {seed}: face points not split"
            sizes = sorted(len(c) for c in check.separation.components)
            if sizes[0] == 1:
                case1 += 1
            if sizes[0] != 1:
                return False, f"sphere fixture {seed}: inside component size {sizes[0]}"
        return True, f"120 cases, {case1} single-cell insides of size 1"

    return _timed(4, "veblen-components", run)


def criterion_torus_negative() -> CriterionResult:
    def run():
        cases = 0
        for m in (3, 4, 6, 8):
            for n in (3, 4, 6, 8):
                surface, curves = generate(GenSpec("torus", a=m, b=n))
                for name in ("meridian", "longitude"):
                    rep = components(surface, curves[name])
                    if len(rep.components) != 1:
                        return False, f"torus {m}x{n} {name}: {len(rep.components)} components"
                    cases += 1
        return True, f"{cases}/32 torus curves leave one component"

    return _timed(5, "torus-negative", run)


def criterion_contraction_steps() -> CriterionResult:
    def run():
        sizes = []
        fixtures = [GenSpec("fan", a=n) for n in (1, 2, 3, 5, 8, 13, 21)]
        fixtures += [GenSpec("disk", a=r) for r in range(1, 10)]
        for spec in fixtures:
            surface, curves = generate(spec)
            curve = curves["rim"]
            p = curve.vertices[1] if spec.kind == "fan" else curve.vertices[0]
            t0 = len(surface.cells)
            seq = contract_cycle(surface, curve, p, check=True)
            if seq.steps != t0 - 1:
                return False, f"{spec.kind}({spec.a}): {seq.steps} steps for {t0} cells"
            seq.validate(surface)
            sizes.append(t0)
        return True, f"T in {min(sizes)}..{max(sizes)}, all T-1 steps, all steps valid"

    return _timed(6, "contraction-steps", run)


def criterion_arc_oracle() -> CriterionResult:
    def run():
        agreements = 0
        fixtures = [GenSpec("fan", a=n) for n in (1, 2, 3, 4, 6)]
        fixtures.append(GenSpec("disk", a=1))
        fixtures.append(GenSpec("annulus", a=8))
        for spec in fixtures:
            surface, curves = generate(spec)
            curve = curves["rim"]
            vs = curve.vertices
            pairs = {(vs[0], vs[len(vs) // 2]), (vs[1], vs[-1])}
            for p, q in sorted(pairs):
                if p == q:
                    continue
                oracle = arc_deformable_bruteforce(surface, curve, p, q)
                try:
                    deform_arc(surface, curve, p, q)
                    direct = True
                except InteriorNotDisk:
                    direct = False
                if direct != oracle:
                    return False, f"{spec.kind}({spec.a}) p={p} q={q}: direct {direct} oracle {oracle}"
                if spec.kind == "annulus" and oracle:
                    return False, f"annulus p={p} q={q}: oracle not separated by the hole"
                agreements += 1
        return True, f"{agreements} pairs agree, annulus pairs all false"

    return _timed(7, "arc-oracle", run)


def criterion_inside_outside() -> CriterionResult:
    def run():
        for seed in range(100):
            _poly, ec, curve = embedded_polygon(seed, widen=True)
            rep = components(ec.surface, curve)
            if len(rep.components) != 2:
                return False, f"seed {seed}: {len(rep.components)} components"
            bverts = ec.surface.boundary_vertices()
            outside_idx = next(
                i for i, comp in enumerate(rep.components) if comp & bverts
            )
            inside_idx = 1 - outside_idx
            all_vs = sorted(ec.surface.vertices)
            rng = SplitMix64(seed)
            for _ in range(1000):
                v = all_vs[rng.below(len(all_vs))]
                label = inside_outside(ec, curve, v)
                comp = rep.component_of(v)
                want = (
                    "on_curve"
                    if comp is None and v in curve.vertex_set
                    else ("inside" if comp == inside_idx else "outside")
                )
                if label != want:
                    return False, f"seed {seed} vertex {v}: {label} vs {want}"
        return True, "100 polygons x 1000 vertices agree exactly"

    return _timed(8, "inside-outside", run)


def circle_polyline(sides: int = 64) -> PolylineCurve:
    center = (Fraction(1, 97), Fraction(1, 89))
    pts = []
    for k in range(sides):
        dx, dy = circle_direction(Fraction(k, sides))
        pts.append((center[0] + dx, center[1] + dy))
    return PolylineCurve.make(pts, closed=True)


def criterion_midpoint_refinement() -> CriterionResult:
    def run():
        curve = circle_polyline(64)
        config = EmbedConfig(Fraction(1, 8), Fraction(3), Fraction(0), 2)
        base = lattice(config, (Fraction(-3, 2), Fraction(-3, 2), Fraction(3, 2), Fraction(3, 2)))
        init_max = max(
            dist2(base.coords[a], base.coords[b]) for a, b in base.surface.edges
        )
        refined, bc = midpoint_subdivide(base, curve, levels=3)
        segs = curve.segments()
        for v in bc.vertices:
            pt = refined.coords[v]
            if not any(on_segment(p, q, pt, strict=False) for p, q in segs):
                return False, f"boundary vertex {v} is off the polyline"
        vs = bc.vertices
        worst = max(
            dist2(refined.coords[vs[i]], refined.coords[vs[(i + 1) % len(vs)]])
            for i in range(len(vs))
        )
        if worst * 64 > init_max:
            return False, f"max edge^2 {worst} exceeds initial/64 {init_max / 64}"
        return True, f"{len(vs)} on-curve vertices, max edge <= initial/8"

    return _timed(9, "midpoint-refinement", run)


def criterion_determinism() -> CriterionResult:
    def run():
        digests = set()
        for _ in range(10):
            parts = []
            surface, curves = generate(GenSpec("octahedron"))
            parts.append(fileio.write_bundle(surface, tuple(curves.values())))
            parts.append(fileio.write_bundle(*_roundtrip(parts[-1])))
            _poly, ec, curve = embedded_polygon(3, widen=False)
            parts.append(fileio.write_embedded(ec, (curve,)))
            fan, fcurves = generate(GenSpec("fan", a=8))
            seq = contract_cycle(fan, fcurves["rim"], 1)
            parts.append(fileio.write_sequence(seq))
            digests.add(hashlib.sha256("".join(parts).encode()).hexdigest())
        if len(digests) != 1:
            return False, f"{len(digests)} distinct digests over 10 runs"
        # Byte-exact round trips for each format.
        surface, curves = generate(GenSpec("annulus", a=8))
        text = fileio.write_bundle(surface, tuple(curves.values()))
        if fileio.write_bundle(*_roundtrip(text)) != text:
            return False, "surface format does not round-trip"
        _poly, ec, curve = embedded_polygon(3, widen=False)
        text = fileio.write_embedded(ec, (curve,))
        bundle = fileio.parse_bundle(text)
        if fileio.write_bundle(bundle.surface, tuple(bundle.curves), bundle.coords) != text:
            return False, "embedded format does not round-trip"
        fan, fcurves = generate(GenSpec("fan", a=8))
        seq = contract_cycle(fan, fcurves["rim"], 1)
        stext = fileio.write_sequence(seq)
        if fileio.write_sequence(fileio.parse_sequence(stext)) != stext:
            return False, "sequence format does not round-trip"
        return True, "10/10 identical digests, all formats round-trip"

    return _timed(10, "determinism", run)


def _roundtrip(text: str):
    bundle = fileio.parse_bundle(text)
    return bundle.surface, tuple(bundle.curves)


def run_all() -> list[CriterionResult]:
    return [
        criterion_link_cycles(),
        criterion_arc_boundaries(),
        criterion_polygon_separation(),
        criterion_veblen_components(),
        criterion_torus_negative(),
        criterion_contraction_steps(),
        criterion_arc_oracle(),
        criterion_inside_outside(),
        criterion_midpoint_refinement(),
        criterion_determinism(),
    ]
