"""Deterministic generators of test surfaces and curves.

Every generated surface is valid and oriented, except the Moebius band which
exists to exercise the orientation failure path.  Randomness goes through
SplitMix64 so fixtures are reproducible bit for bit from (kind, seed) in any
implementation of the same generator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex_core import Surface, orient
from .curves import CurveClass, Path, classify
from .errors import BadParameters, BudgetExhausted

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 PRNG (Steele, Lea, Flood 2014); 64-bit state and output."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish draw in [0, n) via multiply-shift."""
        return (self.next() * n) >> 64


@dataclass(frozen=True)
class GenSpec:
    """Surface request: kind plus up to two size parameters.

    kinds: octahedron, icosahedron, disk (a=rings), fan (a=sectors),
    torus (a, b = grid), annulus (a=cells), moebius.
    """

    kind: str
    a: int = 0
    b: int = 0
    seed: int = 0


_OCTA_CELLS = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
    (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4),
)

_ICOSA_CELLS = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 6, 2), (2, 6, 7), (2, 7, 3), (3, 7, 8), (3, 8, 4),
    (4, 8, 9), (4, 9, 5), (5, 9, 10), (5, 10, 1), (1, 10, 6),
    (11, 7, 6), (11, 8, 7), (11, 9, 8), (11, 10, 9), (11, 6, 10),
)

_MOEBIUS_CELLS = ((0, 1, 2), (1, 2, 3), (2, 3, 4), (3, 4, 0), (4, 0, 1))


def _hex_dist(i: int, j: int) -> int:
    return (abs(i) + abs(j) + abs(i + j)) // 2


def hex_disk(rings: int) -> tuple[Surface, dict[tuple[int, int], int]]:
    """Triangulated hexagonal disk of the given ring count, with the axial
    coordinate of every vertex."""
    coords = [
        (i, j)
        for j in range(-rings, rings + 1)
        for i in range(-rings, rings + 1)
        if _hex_dist(i, j) <= rings
    ]
    coords.sort(key=lambda c: (c[1], c[0]))
    vid = {c: k for k, c in enumerate(coords)}
    cells = []
    for j in range(-rings - 1, rings + 1):
        for i in range(-rings - 1, rings + 1):
            up = ((i, j), (i + 1, j), (i, j + 1))
            down = ((i + 1, j), (i + 1, j + 1), (i, j + 1))
            for tri in (up, down):
                if all(c in vid for c in tri):
                    cells.append(tuple(vid[c] for c in tri))
    return Surface(cells), vid


def _hex_ring(vid: dict[tuple[int, int], int], k: int) -> tuple[int, ...]:
    """The hexagon of axial distance k, walked once around."""
    ring: list[tuple[int, int]] = []
    c = (k, 0)
    for di, dj in ((-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0), (0, 1)):
        for _ in range(k):
            ring.append(c)
            c = (c[0] + di, c[1] + dj)
    return tuple(vid[c] for c in ring)


def generate(spec: GenSpec) -> tuple[Surface, dict[str, Path]]:
    """Build the requested surface and its named curves."""
    kind = spec.kind
    if kind == "octahedron":
        s = orient(Surface(_OCTA_CELLS))
        return s, {"equator": Path.make(s, (1, 2, 3, 4), closed=True)}
    if kind == "icosahedron":
        s = orient(Surface(_ICOSA_CELLS))
        return s, {"equator": Path.make(s, (1, 2, 3, 4, 5), closed=True)}
    if kind == "moebius":
        return Surface(_MOEBIUS_CELLS), {}
    if kind == "disk":
        rings = spec.a
        if not 1 <= rings <= 50:
            raise BadParameters(f"disk rings must be 1..50, got {rings}")
        s, vid = hex_disk(rings)
        s = orient(s)
        curves = {"rim": Path.make(s, _hex_ring(vid, rings), closed=True)}
        if rings >= 2:
            curves["equator"] = Path.make(s, _hex_ring(vid, max(1, rings // 2)), closed=True)
        return s, curves
    if kind == "fan":
        n = spec.a
        if n < 1:
            raise BadParameters(f"fan needs at least one sector, got {n}")
        cells = [(0, i, i + 1) for i in range(1, n + 1)]
        s = orient(Surface(cells))
        return s, {"rim": Path.make(s, tuple(range(n + 2)), closed=True)}
    if kind == "torus":
        m, n = spec.a, spec.b
        if not (3 <= m <= 64 and 3 <= n <= 64):
            raise BadParameters(f"torus grid must be 3..64 per side, got {m}x{n}")

        def v(i: int, j: int) -> int:
            return (i % m) * n + (j % n)

        cells = []
        for i in range(m):
            for j in range(n):
                cells.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
                cells.append((v(i, j), v(i + 1, j + 1), v(i, j + 1)))
        s = orient(Surface(cells))
        return s, {
            "meridian": Path.make(s, tuple(v(0, j) for j in range(n)), closed=True),
            "longitude": Path.make(s, tuple(v(i, 0) for i in range(m)), closed=True),
        }
    if kind == "annulus":
        ncells = spec.a
        if ncells < 6 or ncells % 2:
            raise BadParameters(f"annulus needs an even cell count >= 6, got {ncells}")
        k = ncells // 2
        cells = []
        for i in range(k):
            j = (i + 1) % k
            cells.append((i, j, k + j))
            cells.append((i, k + j, k + i))
        s = orient(Surface(cells))
        return s, {
            "rim": Path.make(s, tuple(range(k, 2 * k)), closed=True),
            "inner": Path.make(s, tuple(range(k)), closed=True),
        }
    raise BadParameters(f"unknown kind {kind!r}")


def random_curve(
    surface: Surface,
    seed: int,
    min_len: int = 3,
    max_len: int = 12,
    budget: int = 400,
) -> Path:
    """Seeded rejection sampling of a closed discrete curve off the boundary."""
    if min_len < 3 or max_len < min_len:
        raise BadParameters(f"bad length bounds {min_len}..{max_len}")
    rng = SplitMix64(seed)
    bverts = surface.boundary_vertices()
    inner = sorted(v for v in surface.vertices if v not in bverts)
    if not inner:
        raise BudgetExhausted("no inner vertices to walk on")
    for _ in range(budget):
        walk = [inner[rng.below(len(inner))]]
        visited = {walk[0]}
        while len(walk) <= max_len:
            tail = walk[-1]
            options: list[int | None] = [
                w for w in surface.neighbors(tail) if w not in visited and w not in bverts
            ]
            if len(walk) >= min_len and surface.has_edge(tail, walk[0]):
                options.append(None)  # close the cycle
            if not options:
                break
            pick = options[rng.below(len(options))]
            if pick is None:
                path = Path(tuple(walk), closed=True)
                if classify(surface, path) == CurveClass.DISCRETE_CURVE:
                    return path
                break
            walk.append(pick)
            visited.add(pick)
    raise BudgetExhausted(f"no discrete curve found within {budget} attempts")
