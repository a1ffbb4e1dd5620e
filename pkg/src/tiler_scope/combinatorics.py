"""
combinatorics.py
----------------

Integer screens on the face lattice: valence-sets of facets, the edge
count of the facet-shaving section, facet admissibility and the counting
identities that pin down which shapes can survive.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from .errors import IndexOutOfRange
from .geometry import ConvexPolyhedron, vertex_valence

ValenceSet = tuple[int, ...]

ADMISSIBLE_SETS = frozenset({(3, 3, 3), (4, 3, 3), (3, 3, 3, 3)})
# survive the shaving inequality but are ruled out by perturbing a hexagon
EXCLUDED_SETS = frozenset({(4, 4, 3), (4, 4, 4), (5, 3, 3), (4, 3, 3, 3), (3, 3, 3, 3, 3)})


def make_valence_set(values) -> ValenceSet:
    return tuple(sorted((int(d) for d in values), reverse=True))


def valence_set(P: ConvexPolyhedron, facet: int) -> ValenceSet:
    """Valences of the facet's vertices, sorted in descending order."""
    if not 0 <= facet < P.n_facets:
        raise IndexOutOfRange(f"facet {facet} out of range 0..{P.n_facets - 1}")
    return make_valence_set(vertex_valence(P, v) for v in P.facets[facet])


def shave_edge_count(vs, h: int) -> int:
    """Edge count of the section that shaves the facet next to every vertex but ``h``."""
    if not 0 <= h < len(vs):
        raise IndexOutOfRange(f"position {h} out of range 0..{len(vs) - 1}")
    return sum(vs) - vs[h] - 2 * len(vs) + 4


class Admissibility(enum.Enum):
    ADMISSIBLE = "admissible"
    INVALID = "invalid"  # fewer than 3 entries or a valence below 3
    SHAVE_INEQUALITY = "shave_inequality"
    EXCLUDED_SET = "excluded_set"
    TOO_MANY_EDGES = "too_many_edges"


def facet_admissible(vs) -> tuple[bool, Admissibility]:
    """
    Whether a facet with valence-set ``vs`` may occur on a universal tiler.

    Returns ``(ok, reason)``; the reason names the first rule that rejects:
    the shaving inequality ``sum(d) - d_h <= 2n + 2`` for every ``h``, then
    the explicit exclusions, then a size guard.
    """
    vs = make_valence_set(vs)
    n = len(vs)
    if n < 3 or min(vs) < 3:
        return False, Admissibility.INVALID
    if sum(vs) - min(vs) > 2 * n + 2:
        return False, Admissibility.SHAVE_INEQUALITY
    if vs in EXCLUDED_SETS:
        return False, Admissibility.EXCLUDED_SET
    if n > 4:
        return False, Admissibility.TOO_MANY_EDGES
    if vs in ADMISSIBLE_SETS:
        return True, Admissibility.ADMISSIBLE
    # every multiset passing the inequality is listed above
    raise AssertionError(f"unclassified valence-set {vs}")


@dataclass(frozen=True)
class CountProfile:
    v: int
    e: int
    f: int
    f3: int
    f4: int
    v3: int
    v4: int
    admissible: bool

    def identities(self) -> dict[str, bool]:
        """Counting identities; the last four only mean something when admissible."""
        checks = {"euler": self.f + self.v == self.e + 2}
        if self.admissible:
            checks.update({
                "facet_split": self.f == self.f3 + self.f4,
                "vertex_split": self.v == self.v3 + self.v4,
                "facet_edge_pairs": 3 * self.f3 + 4 * self.f4 == 2 * self.e,
                "vertex_edge_pairs": 3 * self.v3 + 4 * self.v4 == 2 * self.e,
                "f3_plus_v3": self.f3 + self.v3 == 8,
                "difference": 4 * (self.f4 - self.v4) == 3 * (self.v3 - self.f3),
            })
        return checks


def euler_counts(P: ConvexPolyhedron) -> CountProfile:
    sizes = Counter(len(c) for c in P.facets)
    valences = Counter(len(nb) for nb in P.adjacency)
    admissible = max(sizes) <= 4 and max(valences) <= 4
    return CountProfile(
        v=P.n_vertices, e=P.n_edges, f=P.n_facets,
        f3=sizes[3], f4=sizes[4], v3=valences[3], v4=valences[4],
        admissible=admissible,
    )


class Shape(enum.Enum):
    TETRAHEDRON = "tetrahedron"
    QUAD_PYRAMID = "quad_pyramid"
    TRIANGULAR_BASE_PENTAHEDRON = "triangular_base_pentahedron"


class ScreenFailure(enum.Enum):
    FACET_TOO_MANY_EDGES = "facet_too_many_edges"
    INADMISSIBLE_VALENCE_SET = "inadmissible_valence_set"
    COUNTING_CUBE_TYPE = "counting_violation_cube_type"
    COUNTING_OTHER = "counting_violation_other"


@dataclass(frozen=True)
class ScreenVerdict:
    """``Pass(shape)`` when ``shape`` is set, ``Fail(failure)`` otherwise.

    ``facet`` and ``valence_set`` point at the offending facet when the
    failure concerns one.
    """

    shape: Shape | None = None
    failure: ScreenFailure | None = None
    facet: int | None = None
    valence_set: ValenceSet | None = None
    profile: CountProfile | None = None

    def __post_init__(self):
        if (self.shape is None) == (self.failure is None):
            raise ValueError("a screen verdict is either a pass with a shape or a failure")

    @property
    def passed(self) -> bool:
        return self.shape is not None

    def label(self) -> str:
        if self.passed:
            return f"pass({self.shape.value})"
        extra = f":{list(self.valence_set)}" if self.valence_set else ""
        return f"fail({self.failure.value}{extra})"


def combinatorial_screen(P: ConvexPolyhedron) -> ScreenVerdict:
    for k, cycle in enumerate(P.facets):
        if len(cycle) >= 5:
            return ScreenVerdict(failure=ScreenFailure.FACET_TOO_MANY_EDGES, facet=k)
    for k in range(P.n_facets):
        vs = valence_set(P, k)
        ok, _ = facet_admissible(vs)
        if not ok:
            return ScreenVerdict(failure=ScreenFailure.INADMISSIBLE_VALENCE_SET, facet=k, valence_set=vs)

    p = euler_counts(P)
    if p.f3 == 4 and p.f4 == 0:
        return ScreenVerdict(shape=Shape.TETRAHEDRON, profile=p)
    if p.f3 == 4 and p.f4 == 1:
        return ScreenVerdict(shape=Shape.QUAD_PYRAMID, profile=p)
    if p.f3 == 2 and p.f4 == 3:
        return ScreenVerdict(shape=Shape.TRIANGULAR_BASE_PENTAHEDRON, profile=p)
    if p.f3 == 0:
        return ScreenVerdict(failure=ScreenFailure.COUNTING_CUBE_TYPE, profile=p)
    return ScreenVerdict(failure=ScreenFailure.COUNTING_OTHER, profile=p)
