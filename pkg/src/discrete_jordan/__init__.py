"""Discrete Jordan curve machinery on combinatorial surfaces.

Surfaces are complexes of oriented 2-cells over a simple graph; the library
classifies curves on them, decides gradual variation of paths, separates a
surface along a closed curve (directly, or after Veblen-point insertion),
contracts disk-bounding cycles, and embeds polygons into exact-rational
planar triangulations fine enough for the separation hypotheses to hold.
"""

from .complex_core import (
    Subcomplex,
    Surface,
    VertexKind,
    arc_neighborhood,
    boundary,
    canonical_cell,
    link_cycle,
    neighborhood,
    orient,
    validate,
)
from .curves import (
    AngleReport,
    CurveClass,
    Path,
    angle_wideness,
    check_wide_angle_hypotheses,
    classify,
    split_arcs,
)
from .variation import (
    crosses_over,
    is_gradually_varied,
    is_side_gradually_varied,
    xor_sum,
)
from .jordan import (
    DegenerateBoundary,
    SeparationReport,
    check_separation,
    check_veblen_separation,
    classify_arc_neighborhood_boundary,
    components,
    insert_veblen_points,
)
from .contraction import (
    DeformationSequence,
    SampleSpec,
    arc_deformable_bruteforce,
    certify_simply_connected,
    contract_cycle,
    deform_arc,
    graph_distances,
)
from .planar import (
    EmbedConfig,
    EmbeddedComplex,
    PolylineCurve,
    default_config,
    embed_polygon,
    inside_outside,
    lattice,
    midpoint_subdivide,
    widen_angles,
)
from .gensurf import GenSpec, SplitMix64, generate, random_curve

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
