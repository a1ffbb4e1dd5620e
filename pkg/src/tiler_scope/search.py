"""
search.py
---------

Constructive cutting planes and the universal-tiler verdict.

Three constructions produce sections with a predictable shape:

* ``construct_shave_plane`` tilts a plane off a facet so that it keeps
  every facet vertex but one on the body side;
* ``corner_hexagon_plane`` slices just past the triangle spanned by the
  neighbors of a trivalent vertex;
* ``chord_rotation_sample`` rotates a section's plane about a chord.

``search_witness`` runs them (plus seeded random planes) in a fixed
priority order looking for a section that cannot tile, or a proper
hexagonal section with no pair of equal opposite edges, which no universal
tiler has. ``verify_universal`` combines that search with the
combinatorial screen and the two certified families.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .combinatorics import ScreenVerdict, Shape, combinatorial_screen, shave_edge_count
from .errors import (
    BothTrivial,
    ConstructionFailed,
    DegeneratePolygon,
    EpsilonTooLarge,
    IndexOutOfRange,
    WrongValence,
)
from .geometry import (
    DEFAULT_TOLERANCE,
    ConvexPolyhedron,
    OnEdge,
    Plane,
    SectionPolygon,
    ToleranceConfig,
    cross_section,
    is_proper,
    validate_polyhedron,
    vertex_valence,
)
from .tiling import (
    TilerVerdict,
    VerdictKind,
    classify_hexagon,
    has_equal_opposite_edges,
    polygon_metrics,
    tiler_verdict,
)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
DEFAULT_EPSILON_STEPS = tuple(2.0 ** -k for k in range(2, 13))


@dataclass(frozen=True)
class SearchParams:
    """
    Search budget and step schedule.

    ``epsilon_steps`` are dimensionless: a fraction of the apex height for
    corner planes, a fraction of the body depth above a facet for shave
    planes, and a rotation angle in radians for chord rotations.
    """

    budget: int = 3000
    seed: int = 0
    epsilon_steps: tuple[float, ...] = DEFAULT_EPSILON_STEPS
    tolerance: ToleranceConfig = DEFAULT_TOLERANCE

    def __post_init__(self):
        steps = tuple(float(s) for s in self.epsilon_steps)
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if not steps or min(steps) <= 0 or any(a <= b for a, b in zip(steps, steps[1:])):
            raise ValueError("epsilon_steps must be positive and strictly decreasing")
        object.__setattr__(self, "epsilon_steps", steps)


class Failure(enum.Enum):
    SEVEN_PLUS_EDGES = "seven_plus_edges"
    NO_EQUAL_OPPOSITE_EDGES = "no_equal_opposite_edges"
    HEXAGON_NO_CLASS = "hexagon_no_class"


def section_failure(section: SectionPolygon, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> Failure | None:
    """The reason ``section`` rules out universality, or None."""
    if section.n_vertices >= 7:
        return Failure.SEVEN_PLUS_EDGES
    if section.n_vertices != 6:
        return None
    try:
        m = polygon_metrics(section, tol)
    except DegeneratePolygon:
        return None
    if is_proper(section) and not has_equal_opposite_edges(m, tol):
        return Failure.NO_EQUAL_OPPOSITE_EDGES
    if not classify_hexagon(m, tol):
        return Failure.HEXAGON_NO_CLASS
    return None


@dataclass(frozen=True, eq=False)
class Witness:
    plane: Plane
    section: SectionPolygon
    verdict: TilerVerdict
    failure: Failure
    sampler: str
    detail: dict = field(default_factory=dict)

    def replay(self, P: ConvexPolyhedron, plane: Plane | None = None) -> bool:
        """Recompute the section from scratch and re-run the failure predicate."""
        tol = P.tolerance
        section = cross_section(P, plane or self.plane)
        if not isinstance(section, SectionPolygon) or section.n_vertices != self.section.n_vertices:
            return False
        # same vertex set up to cyclic relabeling
        gaps = np.linalg.norm(section.vertices[:, None, :] - self.section.vertices[None, :, :], axis=-1)
        if gaps.min(axis=1).max() > 10 * tol.eps_geom:
            return False
        return section_failure(section, tol) is self.failure


def _local_frame(P: ConvexPolyhedron, facet: int, h: int):
    cycle = P.facets[facet]
    n = len(cycle)
    v1 = P.vertices[cycle[h]]
    vn = P.vertices[cycle[h - 1]]
    v2 = P.vertices[cycle[(h + 1) % n]]
    u1 = 0.5 * (vn + v1)
    u2 = 0.5 * (v1 + v2)
    ez = -P.normals[facet]
    ex = (u2 - u1) / np.linalg.norm(u2 - u1)
    ey = np.cross(ez, ex)
    if (v1 - u1) @ ey > 0:
        ey = -ey
    return u1, ex, ey, ez


def construct_shave_plane(P: ConvexPolyhedron, facet: int, h: int,
                          eps_schedule=DEFAULT_EPSILON_STEPS) -> Plane:
    """
    Plane through the midpoints of the two facet edges at vertex ``h``,
    tilted into the body so it cuts every edge leaving the other facet
    vertices.

    The section has ``shave_edge_count(valence_set, h)`` edges. In a frame
    with the facet in ``z = 0``, ``P`` in ``z >= 0`` and the shaved vertex
    at negative ``y``, a trial slice ``z = z0`` locates the edge points
    ``C_k`` and the plane is ``z = e0 * y`` with
    ``e0 = min(z0, z0 / y_k) / 2`` over the ``C_k`` not on edges of the
    shaved vertex. ``z0`` runs over ``eps_schedule`` (as fractions of the
    body depth) until the predicted count appears.
    """
    if not 0 <= facet < P.n_facets:
        raise IndexOutOfRange(f"facet {facet} out of range")
    cycle = P.facets[facet]
    if not 0 <= h < len(cycle):
        raise IndexOutOfRange(f"facet position {h} out of range")

    valences = [vertex_valence(P, v) for v in cycle]
    s = sum(valences) - 2 * len(cycle)
    expected = shave_edge_count(valences, h)
    shaved = cycle[h]
    on_facet = set(cycle)
    facet_edges = {P.edge_index(a, b) for a, b in zip(cycle, cycle[1:] + cycle[:1])}

    u1, ex, ey, ez = _local_frame(P, facet, h)
    depth = float(((P.vertices - u1) @ ez).max())
    eps = P.tolerance.eps_geom
    tried = []
    for step in eps_schedule:
        z0 = step * depth
        trial = cross_section(P, Plane.through_point(ez, u1 + z0 * ez))
        if not isinstance(trial, SectionPolygon) or trial.n_vertices != s:
            tried.append((step, "trial slice has wrong vertex count"))
            continue
        ys = []
        clean = True
        for point, inc in zip(trial.vertices, trial.incidences):
            if not isinstance(inc, OnEdge) or inc.edge in facet_edges:
                clean = False
                break
            a, b = P.edges[inc.edge]
            root = a if a in on_facet else b
            if (a in on_facet) == (b in on_facet):
                clean = False
                break
            if root != shaved:
                ys.append(float((point - u1) @ ey))
        if not clean or min(ys, default=1.0) <= eps:
            tried.append((step, "trial slice not in general position"))
            continue
        e0 = 0.5 * min([z0] + [z0 / y for y in ys])
        plane = Plane.through_point(e0 * ey - ez, u1)
        section = cross_section(P, plane)
        if isinstance(section, SectionPolygon) and section.n_vertices == expected:
            return plane
        got = section.n_vertices if isinstance(section, SectionPolygon) else type(section).__name__
        tried.append((step, f"section has {got} vertices, expected {expected}"))
    raise ConstructionFailed(f"shave plane for facet {facet}, position {h}: {tried}")


def _corner_geometry(P: ConvexPolyhedron, w: int):
    if vertex_valence(P, w) != 3:
        raise WrongValence(f"vertex {w} has valence {vertex_valence(P, w)}, not 3")
    nbrs = P.adjacency[w]
    a, b, c = (P.vertices[i] for i in nbrs)
    normal = np.cross(b - a, c - a)
    if np.linalg.norm(normal) <= P.tolerance.eps_geom:
        raise ConstructionFailed(f"neighbors of vertex {w} are collinear")
    normal /= np.linalg.norm(normal)
    if (a - P.vertices[w]) @ normal < 0:
        normal = -normal
    height = float((a - P.vertices[w]) @ normal)
    others = [i for i in range(P.n_vertices) if i != w and i not in nbrs]
    beyond = [float((P.vertices[i] - a) @ normal) / height for i in others]
    delta = 0.5 * min(beyond) if beyond else 0.0
    return normal, float(normal @ a), height, delta


def corner_hexagon_plane(P: ConvexPolyhedron, w: int, epsilon: float) -> Plane:
    """
    Plane parallel to the triangle of ``w``'s three neighbors, pushed past
    it (away from ``w``) by ``epsilon`` times the height of ``w`` above
    that triangle.

    Below the safe bound (half the smallest relative distance of any other
    vertex beyond the triangle) the section is a hexagon whose edges near
    the neighbors shrink linearly with ``epsilon``.

    Raises
    ------
    WrongValence
      ``w`` is not trivalent.
    EpsilonTooLarge
      ``epsilon`` is not positive or not below the safe bound.
    """
    if not 0 <= w < P.n_vertices:
        raise IndexOutOfRange(f"vertex {w} out of range")
    normal, offset, height, delta = _corner_geometry(P, w)
    if not 0 < epsilon < delta:
        raise EpsilonTooLarge(f"epsilon {epsilon} outside (0, {delta}) for vertex {w}")
    return Plane(tuple(normal), offset + epsilon * height)


def _is_nontrivial(P: ConvexPolyhedron, plane: Plane) -> bool:
    return isinstance(cross_section(P, plane), SectionPolygon)


def rotate_about_line(plane: Plane, a, b, angle: float) -> Plane:
    """Rotate ``plane`` by ``angle`` about the line through ``a`` and ``b`` lying in it."""
    a = np.asarray(a, dtype=float)
    axis = np.asarray(b, dtype=float) - a
    axis /= np.linalg.norm(axis)
    n = plane.normal_array
    n = n - (n @ axis) * axis  # the line lies in the plane; remove round-off
    n /= np.linalg.norm(n)
    rotated = math.cos(angle) * n + math.sin(angle) * np.cross(axis, n)
    return Plane.through_point(rotated, a)


def rotate_about_chord(P: ConvexPolyhedron, plane: Plane, a, b, epsilon: float, direction: int = 1) -> Plane:
    """Rotation by ``direction * epsilon``, falling back to the opposite sense when trivial."""
    forward = rotate_about_line(plane, a, b, direction * epsilon)
    if _is_nontrivial(P, forward):
        return forward
    backward = rotate_about_line(plane, a, b, -direction * epsilon)
    if _is_nontrivial(P, backward):
        return backward
    raise BothTrivial(f"both rotations by +/-{epsilon} miss the interior; shrink epsilon")


def chord_rotation_sample(P: ConvexPolyhedron, section: SectionPolygon, i: int, j: int,
                          epsilon: float, direction: int = 1) -> Plane:
    """Rotate the section's carrier about the chord through its vertices ``i`` and ``j``."""
    k = section.n_vertices
    if not (0 <= i < k and 0 <= j < k):
        raise IndexOutOfRange(f"chord ({i}, {j}) outside a {k}-gon")
    if i == j:
        raise ValueError("a chord needs two distinct vertices")
    return rotate_about_chord(P, section.carrier, section.vertices[i], section.vertices[j], epsilon, direction)


def random_interior_point(P: ConvexPolyhedron, rng: np.random.Generator, batch: int = 64) -> np.ndarray:
    """Uniform point of the interior by rejection from the bounding box."""
    lo, hi = P.vertices.min(axis=0), P.vertices.max(axis=0)
    while True:
        candidates = rng.uniform(lo, hi, size=(batch, 3))
        inside = np.flatnonzero(P.contains(candidates, margin=-P.tolerance.eps_geom))
        if inside.size:
            return candidates[inside[0]]


def random_plane(P: ConvexPolyhedron, rng: np.random.Generator) -> Plane:
    """Plane through a uniform interior point with a normal uniform on the sphere."""
    point = random_interior_point(P, rng)
    while True:
        normal = rng.normal(size=3)
        if np.linalg.norm(normal) > 1e-6:
            return Plane.through_point(normal, point)


def _chord_parameters(count: int = 4) -> list[tuple[float, float]]:
    """Deterministic interior parameters: 1/3, then golden-ratio offsets."""
    ts = [(1.0 / 3.0 + k * GOLDEN) % 1.0 for k in range(count + 1)]
    ts = [min(max(t, 0.05), 0.95) for t in ts]
    return [(ts[k], ts[k + 1]) for k in range(count)]


@dataclass
class Coverage:
    planes_per_sampler: dict = field(default_factory=dict)
    max_edges: int = 0
    sections_by_edges: dict = field(default_factory=dict)
    unknown_pentagons: int = 0
    construction_failures: int = 0
    budget_exhausted: bool = False

    def to_dict(self) -> dict:
        return {
            "planes_per_sampler": dict(self.planes_per_sampler),
            "max_edges": self.max_edges,
            "sections_by_edges": {str(k): v for k, v in sorted(self.sections_by_edges.items())},
            "unknown_pentagons": self.unknown_pentagons,
            "construction_failures": self.construction_failures,
            "budget_exhausted": self.budget_exhausted,
        }


@dataclass(frozen=True, eq=False)
class SearchOutcome:
    witness: Witness | None
    coverage: Coverage


SAMPLERS = ("corner_hexagon", "shave", "facet_chord", "hexagon_chord", "random")


def _candidates(P: ConvexPolyhedron, params: SearchParams, hexagons: list,
                coverage: Coverage) -> Iterator[tuple[str, Plane, dict]]:
    steps = params.epsilon_steps

    for w in range(P.n_vertices):
        if vertex_valence(P, w) != 3:
            continue
        for eps in steps:
            try:
                plane = corner_hexagon_plane(P, w, eps)
            except EpsilonTooLarge:
                continue
            except ConstructionFailed:
                coverage.construction_failures += 1
                break
            yield "corner_hexagon", plane, {"vertex": w, "epsilon": eps}

    for k, cycle in enumerate(P.facets):
        for h in range(len(cycle)):
            try:
                plane = construct_shave_plane(P, k, h, steps)
            except ConstructionFailed:
                coverage.construction_failures += 1
                continue
            yield "shave", plane, {"facet": k, "position": h}

    # rotate a facet's plane about a chord cutting off one corner
    for k, cycle in enumerate(P.facets):
        facet_plane = P.facet_plane(k)
        n = len(cycle)
        for c in range(n):
            corner = P.vertices[cycle[c]]
            before = P.vertices[cycle[c - 1]]
            after = P.vertices[cycle[(c + 1) % n]]
            for ta, tb in _chord_parameters():
                a = corner + ta * (before - corner)
                b = corner + tb * (after - corner)
                for eps in steps:
                    for direction in (1, -1):
                        try:
                            plane = rotate_about_chord(P, facet_plane, a, b, eps, direction)
                        except BothTrivial:
                            continue
                        yield "facet_chord", plane, {"facet": k, "corner": c, "t": [ta, tb],
                                                     "epsilon": eps, "direction": direction}

    # rotate proper hexagons met so far about the chords V_i V_{i+2}
    done = 0
    while done < len(hexagons):
        section = hexagons[done]
        done += 1
        for i in range(6):
            for eps in steps:
                for direction in (1, -1):
                    try:
                        plane = chord_rotation_sample(P, section, i, (i + 2) % 6, eps, direction)
                    except BothTrivial:
                        continue
                    yield "hexagon_chord", plane, {"chord": [i, (i + 2) % 6], "epsilon": eps,
                                                   "direction": direction}

    rng = np.random.default_rng(params.seed)
    while True:
        yield "random", random_plane(P, rng), {}


MAX_TRACKED_HEXAGONS = 16


def search_witness(P: ConvexPolyhedron, params: SearchParams | None = None) -> SearchOutcome:
    """
    Examine up to ``params.budget`` planes in priority order and return the
    first witness found together with coverage statistics. Deterministic
    for a given ``(P, params)``.
    """
    params = params or SearchParams()
    tol = params.tolerance
    P = P if P.tolerance == tol else _with_tolerance(P, tol)
    coverage = Coverage(planes_per_sampler={name: 0 for name in SAMPLERS})
    hexagons: list[SectionPolygon] = []
    examined = 0
    for sampler, plane, detail in _candidates(P, params, hexagons, coverage):
        if examined >= params.budget:
            coverage.budget_exhausted = True
            break
        examined += 1
        coverage.planes_per_sampler[sampler] += 1
        section = cross_section(P, plane)
        if not isinstance(section, SectionPolygon):
            continue
        k = section.n_vertices
        coverage.max_edges = max(coverage.max_edges, k)
        coverage.sections_by_edges[k] = coverage.sections_by_edges.get(k, 0) + 1
        failure = section_failure(section, tol)
        if failure is not None:
            return SearchOutcome(
                Witness(plane, section, tiler_verdict(section, tol), failure, sampler, detail),
                coverage,
            )
        if k == 5:
            try:
                if tiler_verdict(section, tol).kind is VerdictKind.UNKNOWN:
                    coverage.unknown_pentagons += 1
            except DegeneratePolygon:
                pass
        if k == 6 and is_proper(section) and len(hexagons) < MAX_TRACKED_HEXAGONS:
            hexagons.append(section)
    return SearchOutcome(None, coverage)


def falsify_universal(P: ConvexPolyhedron, params: SearchParams | None = None) -> Witness | None:
    return search_witness(P, params).witness


def _with_tolerance(P: ConvexPolyhedron, tol: ToleranceConfig) -> ConvexPolyhedron:
    return validate_polyhedron(P.vertices, P.facets, tol)


class UniversalStatus(enum.Enum):
    CERTIFIED_UNIVERSAL = "certified_universal"
    NOT_UNIVERSAL = "not_universal"
    UNRESOLVED = "unresolved"


class Certificate(enum.Enum):
    TETRAHEDRON_ALL_SECTIONS = "tetrahedron_all_sections"
    PENTAHEDRON_PARALLEL_FACETS = "pentahedron_parallel_facets"


@dataclass(frozen=True, eq=False)
class UniversalVerdict:
    status: UniversalStatus
    screen: ScreenVerdict
    certificate: Certificate | None = None
    witness: Witness | None = None
    coverage: Coverage | None = None
    parallel_facets: tuple[int, int] | None = None

    def __post_init__(self):
        if (self.status is UniversalStatus.CERTIFIED_UNIVERSAL) != (self.certificate is not None):
            raise ValueError("a certificate accompanies exactly the certified verdicts")
        if self.status is UniversalStatus.NOT_UNIVERSAL and self.witness is None and self.screen.passed:
            raise ValueError("not_universal needs a witness or a failed screen")

    @property
    def combinatorial_reason(self):
        return None if self.screen.passed else self.screen.failure


def parallel_facet_pair(P: ConvexPolyhedron, tol: ToleranceConfig | None = None) -> tuple[int, int] | None:
    """First pair of facets whose outward normals are antiparallel."""
    tol = tol or P.tolerance
    for i in range(P.n_facets):
        for j in range(i + 1, P.n_facets):
            ni, nj = P.normals[i], P.normals[j]
            angle = math.atan2(float(np.linalg.norm(np.cross(ni, nj))), -float(ni @ nj))
            if angle <= tol.eps_angle:
                return i, j
    return None


def verify_universal(P: ConvexPolyhedron, params: SearchParams | None = None) -> UniversalVerdict:
    params = params or SearchParams()
    if P.tolerance != params.tolerance:
        P = _with_tolerance(P, params.tolerance)
    screen = combinatorial_screen(P)
    if not screen.passed:
        outcome = search_witness(P, params)
        return UniversalVerdict(UniversalStatus.NOT_UNIVERSAL, screen,
                                witness=outcome.witness, coverage=outcome.coverage)
    if screen.shape is Shape.TETRAHEDRON:
        return UniversalVerdict(UniversalStatus.CERTIFIED_UNIVERSAL, screen,
                                certificate=Certificate.TETRAHEDRON_ALL_SECTIONS)
    pair = parallel_facet_pair(P, params.tolerance)
    if pair is not None:
        return UniversalVerdict(UniversalStatus.CERTIFIED_UNIVERSAL, screen,
                                certificate=Certificate.PENTAHEDRON_PARALLEL_FACETS,
                                parallel_facets=pair)
    outcome = search_witness(P, params)
    if outcome.witness is not None:
        return UniversalVerdict(UniversalStatus.NOT_UNIVERSAL, screen,
                                witness=outcome.witness, coverage=outcome.coverage)
    return UniversalVerdict(UniversalStatus.UNRESOLVED, screen, coverage=outcome.coverage)
