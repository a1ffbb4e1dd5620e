"""Cross-section analysis of convex polyhedra for the universal-tiler property."""

from .combinatorics import (
    Admissibility,
    CountProfile,
    ScreenFailure,
    ScreenVerdict,
    Shape,
    combinatorial_screen,
    euler_counts,
    facet_admissible,
    shave_edge_count,
    valence_set,
)
from .geometry import (
    ConvexPolyhedron,
    Empty,
    OnEdge,
    OnVertex,
    Plane,
    SectionPolygon,
    Segment,
    SinglePoint,
    ToleranceConfig,
    cross_section,
    is_proper,
    proper_nudge,
    validate_polyhedron,
    vertex_valence,
)
from .meshio import dump_mesh, parse_mesh
from .report import ReportDocument, build_report, emit_report
from .search import (
    Certificate,
    Failure,
    SearchParams,
    UniversalStatus,
    UniversalVerdict,
    Witness,
    chord_rotation_sample,
    construct_shave_plane,
    corner_hexagon_plane,
    falsify_universal,
    search_witness,
    verify_universal,
)
from .svg import render_witness_svg
from .tiling import (
    PolygonMetrics,
    ReinhardtClass,
    TilerReason,
    TilerVerdict,
    VerdictKind,
    classify_hexagon,
    count_angles,
    has_equal_opposite_edges,
    has_parallel_edge_pair,
    polygon_metrics,
    tiler_verdict,
)

__version__ = "0.1.0"
