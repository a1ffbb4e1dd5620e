"""Constructors for the reference solids used in tests and examples."""

from __future__ import annotations

import math

import numpy as np

from .geometry import ConvexPolyhedron, ToleranceConfig, validate_polyhedron


def unit_cube(tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    vertices = [(x, y, z) for z in (0, 1) for y in (0, 1) for x in (0, 1)]
    # index = x + 2y + 4z
    facets = [
        (0, 2, 3, 1),  # z = 0
        (4, 5, 7, 6),  # z = 1
        (0, 1, 5, 4),  # y = 0
        (2, 6, 7, 3),  # y = 1
        (0, 4, 6, 2),  # x = 0
        (1, 3, 7, 5),  # x = 1
    ]
    return validate_polyhedron(vertices, facets, tolerance)


def corner_tetrahedron(tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    """The tetrahedron with vertices at the origin and the three unit points."""
    vertices = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    return tetrahedron(vertices, tolerance)


def regular_tetrahedron(tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    vertices = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    return tetrahedron(vertices, tolerance)


def tetrahedron(vertices, tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    facets = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    return validate_polyhedron(vertices, facets, tolerance)


def random_tetrahedron(rng: np.random.Generator, min_volume: float = 0.02,
                       tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    """Four points uniform in the unit cube, redrawn until the volume is not tiny."""
    while True:
        pts = rng.uniform(0.0, 1.0, size=(4, 3))
        volume = abs(np.linalg.det(pts[1:] - pts[0])) / 6.0
        if volume >= min_volume:
            return tetrahedron(pts, tolerance)


def regular_octahedron(tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    vertices = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    facets = [
        (0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
        (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5),
    ]
    return validate_polyhedron(vertices, facets, tolerance)


def quad_pyramid(apex=(0.3, 0.2, 1.0), tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    """Unit-square base in z = 0 with the given apex above it."""
    vertices = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0), tuple(apex)]
    facets = [(0, 3, 2, 1), (0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)]
    return validate_polyhedron(vertices, facets, tolerance)


def triangular_prism(base=((0, 0, 0), (1, 0, 0), (0.3, 0.9, 0)), shift=(0, 0, 1),
                     tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    """Triangle ``base`` swept by ``shift``; an oblique prism when shift is slanted."""
    base = np.asarray(base, dtype=float)
    top = base + np.asarray(shift, dtype=float)
    return _two_triangle_pentahedron(base, top, tolerance)


def triangular_frustum(base=((0, 0, 0), (2, 0, 0), (0.6, 1.8, 0)), ratio=0.5, height=1.0,
                       tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    """A truncated triangular pyramid: the top is a parallel scaled copy of the base."""
    base = np.asarray(base, dtype=float)
    center = base.mean(axis=0)
    top = center + ratio * (base - center) + np.array([0.0, 0.0, height])
    return _two_triangle_pentahedron(base, top, tolerance)


def skew_pentahedron(tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    """Two triangles and three quadrangles with no pair of parallel facets."""
    base = np.array([(0, 0, 0), (2, 0, 0), (0.6, 1.8, 0)], dtype=float)
    center = base.mean(axis=0)
    # the top is the slice of a pyramid by a tilted plane, so the side
    # facets stay planar while the top is not parallel to the base
    apex = center + np.array([0.0, 0.0, 2.0])
    top = []
    for p in base:
        # where the segment p -> apex meets the plane z = 0.6 + 0.2 x
        d = apex - p
        t = (0.6 + 0.2 * p[0] - p[2]) / (d[2] - 0.2 * d[0])
        top.append(p + t * d)
    return _two_triangle_pentahedron(base, np.array(top), tolerance)


def _two_triangle_pentahedron(base, top, tolerance) -> ConvexPolyhedron:
    vertices = np.vstack([base, top])
    facets = [(0, 1, 2), (3, 4, 5), (0, 1, 4, 3), (1, 2, 5, 4), (2, 0, 3, 5)]
    return validate_polyhedron(vertices, facets, tolerance)


def regular_prism(sides: int, tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    """Right prism over a regular polygon with unit circumradius and unit height."""
    ring = [(math.cos(2 * math.pi * k / sides), math.sin(2 * math.pi * k / sides)) for k in range(sides)]
    vertices = [(x, y, 0.0) for x, y in ring] + [(x, y, 1.0) for x, y in ring]
    facets = [tuple(range(sides)), tuple(range(sides, 2 * sides))]
    for k in range(sides):
        j = (k + 1) % sides
        facets.append((k, j, sides + j, sides + k))
    return validate_polyhedron(vertices, facets, tolerance)


def hexagonal_prism(tolerance: ToleranceConfig | None = None) -> ConvexPolyhedron:
    return regular_prism(6, tolerance)


def corpus() -> dict[str, ConvexPolyhedron]:
    """The five reference solids: one of each combinatorial type the screen distinguishes."""
    return {
        "tetrahedron": regular_tetrahedron(),
        "cube": unit_cube(),
        "octahedron": regular_octahedron(),
        "quad_pyramid": quad_pyramid(),
        "triangular_prism": triangular_prism(),
    }
