"""
geometry.py
-----------

Convex polyhedra, oriented planes and plane cross-sections.

A cross-section is computed by intersecting the plane with every edge of
the polyhedron, merging coincident hits and sorting the survivors by angle
about their centroid. Each section vertex remembers whether it sits in the
interior of a polyhedron edge or on a polyhedron vertex, which is what
``is_proper`` and the witness search key off.
"""

from __future__ import annotations

import math
from functools import cached_property
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import (
    BadIncidence,
    EulerViolation,
    IndexOutOfRange,
    NoRoom,
    NonConvex,
    NonPlanarFacet,
    ValidationError,
)

# unit-normal check for Plane, independent of any ToleranceConfig
_UNIT_TOL = 1e-9


@dataclass(frozen=True)
class ToleranceConfig:
    """Comparison thresholds for unit-scale inputs.

    eps_geom governs incidence and coplanarity, eps_len edge-length
    equality and eps_angle angle equality (radians).
    """

    eps_geom: float = 1e-9
    eps_len: float = 1e-7
    eps_angle: float = 1e-7

    def __post_init__(self):
        for name in ("eps_geom", "eps_len", "eps_angle"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive, got {value!r}")
        if self.eps_geom > self.eps_len:
            raise ValueError("eps_geom must not exceed eps_len")


DEFAULT_TOLERANCE = ToleranceConfig()


@dataclass(frozen=True)
class Plane:
    """The plane ``{p : normal . p = offset}`` with a unit normal."""

    normal: tuple[float, float, float]
    offset: float

    def __post_init__(self):
        normal = tuple(float(c) for c in self.normal)
        if len(normal) != 3 or not all(math.isfinite(c) for c in normal):
            raise ValueError(f"plane normal must be 3 finite numbers, got {self.normal!r}")
        if abs(math.sqrt(sum(c * c for c in normal)) - 1.0) > _UNIT_TOL:
            raise ValueError("plane normal must have unit length; use Plane.from_coefficients")
        if not math.isfinite(self.offset):
            raise ValueError("plane offset must be finite")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def from_coefficients(cls, a: float, b: float, c: float, d: float) -> "Plane":
        """Plane ``a*x + b*y + c*z = d``, normalized."""
        norm = math.sqrt(a * a + b * b + c * c)
        if not norm > 0:
            raise ValueError("plane coefficients (a, b, c) must not all be zero")
        return cls((a / norm, b / norm, c / norm), d / norm)

    @classmethod
    def through_point(cls, normal, point) -> "Plane":
        n = np.asarray(normal, dtype=float)
        norm = float(np.linalg.norm(n))
        if not norm > 0:
            raise ValueError("plane normal must be nonzero")
        n = n / norm
        return cls(tuple(n), float(n @ np.asarray(point, dtype=float)))

    @property
    def normal_array(self) -> np.ndarray:
        return np.array(self.normal)

    @property
    def origin(self) -> np.ndarray:
        """The point of the plane closest to the coordinate origin."""
        return self.normal_array * self.offset

    def signed_distance(self, points) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.normal_array - self.offset

    def basis(self) -> tuple[np.ndarray, np.ndarray]:
        """Orthonormal in-plane axes ``(u, w)`` with ``u x w == normal``."""
        return self._basis

    @cached_property
    def _basis(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.normal
        k = min(range(3), key=lambda i: abs(n[i]))
        u = [-n[k] * c for c in n]
        u[k] += 1.0
        norm = math.sqrt(sum(c * c for c in u))
        u = [c / norm for c in u]
        w = [n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]]
        return np.array(u), np.array(w)

    def to_plane_coords(self, points) -> np.ndarray:
        u, w = self._basis
        rel = np.asarray(points, dtype=float) - self.origin
        return rel @ np.column_stack([u, w])

    def coefficients(self) -> tuple[float, float, float, float]:
        return (*self.normal, self.offset)


@dataclass(frozen=True)
class OnEdge:
    edge: int


@dataclass(frozen=True)
class OnVertex:
    vertex: int


Incidence = Union[OnEdge, OnVertex]


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True, eq=False)
class SinglePoint:
    point: np.ndarray
    incidence: Incidence


@dataclass(frozen=True, eq=False)
class Segment:
    start: np.ndarray
    end: np.ndarray
    incidences: tuple[Incidence, Incidence]


@dataclass(frozen=True, eq=False)
class SectionPolygon:
    """A nontrivial cross-section.

    Vertices run counter-clockwise when viewed from the tip of
    ``carrier.normal``; ``incidences[i]`` locates ``vertices[i]`` on the
    polyhedron boundary.
    """

    carrier: Plane
    vertices: np.ndarray
    incidences: tuple[Incidence, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def plane_coords(self) -> np.ndarray:
        return self.carrier.to_plane_coords(self.vertices)

    @property
    def area(self) -> float:
        xy = self.plane_coords()
        x, y = xy[:, 0], xy[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))

    def edge_lengths(self) -> np.ndarray:
        return np.linalg.norm(np.roll(self.vertices, -1, axis=0) - self.vertices, axis=1)


SectionResult = Union[Empty, SinglePoint, Segment, SectionPolygon]


@dataclass(frozen=True, eq=False)
class ConvexPolyhedron:
    """A validated convex polyhedron. Build it with ``validate_polyhedron``.

    ``facets`` are vertex-index cycles oriented so that ``normals`` point
    outward; ``offsets[k]`` is the support value of facet ``k``.
    """

    vertices: np.ndarray
    facets: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    normals: np.ndarray
    offsets: np.ndarray
    tolerance: ToleranceConfig = DEFAULT_TOLERANCE
    adjacency: tuple[tuple[int, ...], ...] = field(default=(), repr=False)
    _edge_lookup: dict = field(default_factory=dict, repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @cached_property
    def edge_array(self) -> np.ndarray:
        return np.array(self.edges, dtype=int).reshape(-1, 2)

    def edge_index(self, i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        try:
            return self._edge_lookup[key]
        except KeyError:
            raise IndexOutOfRange(f"no edge between vertices {i} and {j}") from None

    def facet_plane(self, k: int) -> Plane:
        return Plane(tuple(self.normals[k]), float(self.offsets[k]))

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    @property
    def scale(self) -> float:
        """Length of the bounding-box diagonal."""
        return float(np.linalg.norm(self.vertices.max(axis=0) - self.vertices.min(axis=0)))

    def contains(self, points, margin: float = 0.0) -> np.ndarray:
        """Boolean mask of points within ``margin`` of the closed body."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return np.all(pts @ self.normals.T - self.offsets <= margin, axis=1)

    def transformed(self, rotation, translation) -> "ConvexPolyhedron":
        """Image under ``p -> rotation @ p + translation``."""
        rotation = np.asarray(rotation, dtype=float)
        moved = self.vertices @ rotation.T + np.asarray(translation, dtype=float)
        return validate_polyhedron(moved, self.facets, self.tolerance)


def _newell_normal(points: np.ndarray) -> np.ndarray:
    nxt = np.roll(points, -1, axis=0)
    return np.array([
        np.sum((points[:, 1] - nxt[:, 1]) * (points[:, 2] + nxt[:, 2])),
        np.sum((points[:, 2] - nxt[:, 2]) * (points[:, 0] + nxt[:, 0])),
        np.sum((points[:, 0] - nxt[:, 0]) * (points[:, 1] + nxt[:, 1])),
    ])


def orient_facets(vertices, facets) -> tuple[tuple[int, ...], ...]:
    """Reverse facet cycles whose normal points toward the vertex centroid."""
    verts = np.asarray(vertices, dtype=float)
    center = verts.mean(axis=0)
    oriented = []
    for cycle in facets:
        cycle = tuple(int(i) for i in cycle)
        pts = verts[list(cycle)]
        if _newell_normal(pts) @ (pts.mean(axis=0) - center) < 0:
            cycle = (cycle[0],) + tuple(reversed(cycle[1:]))
        oriented.append(cycle)
    return tuple(oriented)


def validate_polyhedron(vertices, facets, tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    """
    Check vertex/facet data and build a ``ConvexPolyhedron``.

    Facet cycles may be given in either orientation; they are reoriented
    outward. Edges are derived from consecutive facet indices.

    Raises
    ------
    ValidationError
      Too few vertices or facets, non-finite coordinates, short cycles.
    IndexOutOfRange
      A facet refers to a missing vertex.
    NonPlanarFacet, NonConvex, BadIncidence, EulerViolation
      The corresponding polyhedron invariant fails.
    """
    tol = tolerance or DEFAULT_TOLERANCE
    verts = np.array(vertices, dtype=float)
    if verts.ndim != 2 or verts.shape[1] != 3:
        raise ValidationError(f"vertices must have shape (n, 3), got {verts.shape}")
    if not np.all(np.isfinite(verts)):
        raise ValidationError("vertex coordinates must be finite")
    if len(verts) < 4 or len(facets) < 4:
        raise ValidationError("a polyhedron needs at least 4 vertices and 4 facets")

    for k, cycle in enumerate(facets):
        if len(cycle) < 3 or len(set(cycle)) != len(cycle):
            raise ValidationError(f"facet {k} must list at least 3 distinct vertices")
        for i in cycle:
            if not 0 <= int(i) < len(verts):
                raise IndexOutOfRange(f"facet {k} refers to vertex {i}, only {len(verts)} exist")

    cycles = orient_facets(verts, facets)
    normals = np.empty((len(cycles), 3))
    offsets = np.empty(len(cycles))
    for k, cycle in enumerate(cycles):
        pts = verts[list(cycle)]
        normal = _newell_normal(pts)
        norm = np.linalg.norm(normal)
        if norm <= tol.eps_geom:
            raise NonPlanarFacet(f"facet {k} has no well-defined plane")
        normal = normal / norm
        offset = float(normal @ pts.mean(axis=0))
        residual = np.abs(pts @ normal - offset).max()
        if residual > tol.eps_geom:
            raise NonPlanarFacet(f"facet {k} deviates from its plane by {residual:.3g}")
        normals[k] = normal
        offsets[k] = offset

    excess = verts @ normals.T - offsets
    if excess.max() > tol.eps_geom:
        v, k = np.unravel_index(int(np.argmax(excess)), excess.shape)
        raise NonConvex(f"vertex {v} lies {excess[v, k]:.3g} outside facet {k}")

    directed: dict[tuple[int, int], int] = {}
    for k, cycle in enumerate(cycles):
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if (a, b) in directed:
                raise BadIncidence(f"directed edge {a}->{b} appears in facets {directed[(a, b)]} and {k}")
            directed[(a, b)] = k
    undirected: dict[tuple[int, int], int] = {}
    for a, b in directed:
        key = (min(a, b), max(a, b))
        undirected[key] = undirected.get(key, 0) + 1
    lonely = [key for key, count in undirected.items() if count != 2]
    if lonely:
        raise BadIncidence(f"edge {lonely[0]} is not shared by exactly two facets")

    edges = tuple(sorted(undirected))
    v, e, f = len(verts), len(edges), len(cycles)
    if v + f != e + 2:
        raise EulerViolation(f"v + f = {v + f} but e + 2 = {e + 2}")

    neighbors: list[list[int]] = [[] for _ in range(v)]
    for a, b in edges:
        neighbors[a].append(b)
        neighbors[b].append(a)

    verts.setflags(write=False)
    normals.setflags(write=False)
    offsets.setflags(write=False)
    return ConvexPolyhedron(
        vertices=verts,
        facets=cycles,
        edges=edges,
        normals=normals,
        offsets=offsets,
        tolerance=tol,
        adjacency=tuple(tuple(sorted(nb)) for nb in neighbors),
        _edge_lookup={edge: i for i, edge in enumerate(edges)},
    )


def vertex_valence(P: ConvexPolyhedron, v: int) -> int:
    if not 0 <= v < P.n_vertices:
        raise IndexOutOfRange(f"vertex {v} out of range 0..{P.n_vertices - 1}")
    return len(P.adjacency[v])


def _distance_to_line(p, a, b) -> float:
    d = b - a
    length = math.hypot(d[0], d[1])
    if length == 0:
        return math.hypot(p[0] - a[0], p[1] - a[1])
    return abs(d[0] * (p[1] - a[1]) - d[1] * (p[0] - a[0])) / length


def cross_section(P: ConvexPolyhedron, pi: Plane) -> SectionResult:
    """
    Intersect ``P`` with ``pi``.

    Returns ``Empty``, ``SinglePoint``, ``Segment`` or a ``SectionPolygon``.
    A plane carrying a whole facet yields that facet as the section.
    """
    eps = P.tolerance.eps_geom
    V = P.vertices
    dist = pi.signed_distance(V)
    if dist.min() > eps or dist.max() < -eps:
        return Empty()

    on = np.flatnonzero(np.abs(dist) <= eps)
    E = P.edge_array
    da, db = dist[E[:, 0]], dist[E[:, 1]]
    crossing = np.flatnonzero(((da < -eps) & (db > eps)) | ((da > eps) & (db < -eps)))
    t = da[crossing] / (da[crossing] - db[crossing])
    a, b = E[crossing, 0], E[crossing, 1]
    points = np.vstack([V[on], V[a] + t[:, None] * (V[b] - V[a])])
    incidences: list[Incidence] = [OnVertex(int(v)) for v in on]
    for k, tk, ak, bk in zip(crossing, t, a, b):
        if tk <= eps:
            incidences.append(OnVertex(int(ak)))
        elif tk >= 1.0 - eps:
            incidences.append(OnVertex(int(bk)))
        else:
            incidences.append(OnEdge(int(k)))

    gaps = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
    if (gaps[np.triu_indices(len(points), 1)] < eps).any():
        # merge coincident hits; vertex incidences were collected first and win
        kept_pts: list[np.ndarray] = []
        kept_inc: list[Incidence] = []
        for p, inc in zip(points, incidences):
            for idx, q in enumerate(kept_pts):
                if np.linalg.norm(p - q) < eps:
                    if isinstance(inc, OnVertex) and not isinstance(kept_inc[idx], OnVertex):
                        kept_pts[idx], kept_inc[idx] = p, inc
                    break
            else:
                kept_pts.append(p)
                kept_inc.append(inc)
    else:
        kept_pts, kept_inc = list(points), incidences

    if len(kept_pts) == 1:
        return SinglePoint(kept_pts[0], kept_inc[0])

    pts3 = np.array(kept_pts)
    xy = pi.to_plane_coords(pts3)
    if len(kept_pts) == 2:
        return Segment(pts3[0], pts3[1], (kept_inc[0], kept_inc[1]))

    # collinear hits: a segment through its two extreme points
    gaps = np.linalg.norm(xy[:, None, :] - xy[None, :, :], axis=-1)
    i, j = np.unravel_index(int(np.argmax(gaps)), gaps.shape)
    if max(_distance_to_line(p, xy[i], xy[j]) for p in xy) <= eps:
        return Segment(pts3[i], pts3[j], (kept_inc[i], kept_inc[j]))

    center = xy.mean(axis=0)
    order = list(np.argsort(np.arctan2(xy[:, 1] - center[1], xy[:, 0] - center[0]), kind="stable"))
    changed = True
    while changed and len(order) > 3:
        changed = False
        for pos in range(len(order)):
            prev, cur, nxt = order[pos - 1], order[pos], order[(pos + 1) % len(order)]
            if _distance_to_line(xy[cur], xy[prev], xy[nxt]) <= eps:
                del order[pos]
                changed = True
                break

    return SectionPolygon(
        carrier=pi,
        vertices=pts3[order],
        incidences=tuple(kept_inc[k] for k in order),
    )


def is_proper(section: SectionPolygon) -> bool:
    """True when no section vertex is a polyhedron vertex."""
    return all(isinstance(inc, OnEdge) for inc in section.incidences)


def proper_nudge(P: ConvexPolyhedron, pi: Plane) -> Plane:
    """
    Translate ``pi`` halfway toward the nearest polyhedron vertex on one side.

    The positive side of ``pi`` is used when some vertex lies strictly
    there, otherwise the negative side. The result is parallel to ``pi``,
    passes through no vertex of ``P`` and cuts a proper section with at
    least as many vertices as ``cross_section(P, pi)``.
    """
    eps = P.tolerance.eps_geom
    dist = pi.signed_distance(P.vertices)
    ahead = dist[dist > eps]
    if ahead.size:
        return Plane(pi.normal, pi.offset + 0.5 * float(ahead.min()))
    behind = dist[dist < -eps]
    if behind.size:
        return Plane(pi.normal, pi.offset + 0.5 * float(behind.max()))
    raise NoRoom("every polyhedron vertex lies on the plane")


def polygon_area(points: Sequence) -> float:
    """Unsigned area of a planar polygon given by its 3-D vertices in order."""
    pts = np.asarray(points, dtype=float)
    if pts.shape[1] == 2:
        pts = np.column_stack([pts, np.zeros(len(pts))])
    return 0.5 * float(np.linalg.norm(_newell_normal(pts)))
