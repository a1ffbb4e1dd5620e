"""Random convex hexagons built to satisfy, or to miss, each Reinhardt class."""

from __future__ import annotations

import math

import numpy as np

MARGIN = 0.15  # keep every angle this far from 0 and from pi


def polygon_from(angles, lengths):
    """Vertices of the polygon with interior ``angles[k]`` at vertex k and edge k of ``lengths[k]``."""
    heading = 0.0
    p = np.zeros(2)
    pts = []
    for k in range(len(angles)):
        pts.append(p.copy())
        p = p + lengths[k] * np.array([math.cos(heading), math.sin(heading)])
        heading += math.pi - angles[(k + 1) % len(angles)]
    return np.array(pts)


def _directions(angles):
    heading, out = 0.0, []
    for k in range(len(angles)):
        out.append(np.array([math.cos(heading), math.sin(heading)]))
        heading += math.pi - angles[(k + 1) % len(angles)]
    return out


def close_polygon(angles, lengths, unknown):
    """Fill the two edge lengths at positions ``unknown`` so the polygon closes."""
    d = _directions(angles)
    i, j = unknown
    rest = sum(lengths[k] * d[k] for k in range(len(angles)) if k not in unknown)
    sol = np.linalg.solve(np.column_stack([d[i], d[j]]), -rest)
    out = list(lengths)
    out[i], out[j] = float(sol[0]), float(sol[1])
    return out


def _angle(rng):
    return rng.uniform(MARGIN, math.pi - MARGIN)


def _triple_summing_to(total, rng):
    """Three angles in range with the given sum."""
    while True:
        a, b = _angle(rng), _angle(rng)
        if MARGIN < total - a - b < math.pi - MARGIN:
            return [a, b, total - a - b]


def _acceptable(lengths):
    return min(lengths) > 0.2 and max(lengths) < 5.0


def class_i_hexagon(rng):
    while True:
        a0, a1, a2 = _triple_summing_to(2 * math.pi, rng)
        a3, a4, a5 = _triple_summing_to(2 * math.pi, rng)
        angles = [a0, a1, a2, a3, a4, a5]
        shared = rng.uniform(0.5, 1.5)
        lengths = [rng.uniform(0.5, 1.5), 0.0, shared, rng.uniform(0.5, 1.5), 0.0, shared]
        lengths = close_polygon(angles, lengths, (1, 4))
        if _acceptable(lengths):
            return polygon_from(angles, lengths)


def class_ii_hexagon(rng):
    while True:
        a0, a1, a3 = _triple_summing_to(2 * math.pi, rng)
        a2, a4, a5 = _triple_summing_to(2 * math.pi, rng)
        angles = [a0, a1, a2, a3, a4, a5]
        a, b = rng.uniform(0.5, 1.5, size=2)
        lengths = close_polygon(angles, [0.0, b, a, b, 0.0, a], (0, 4))
        if _acceptable(lengths):
            return polygon_from(angles, lengths)


def class_iii_hexagon(rng):
    """Isosceles 120-degree caps erected outward on the sides of an acute-ish triangle."""
    while True:
        tri = rng.uniform(-1, 1, size=(3, 2))
        u, w = tri[1] - tri[0], tri[2] - tri[0]
        if u[0] * w[1] - u[1] * w[0] < 0:
            tri = tri[::-1]
        sides = [np.linalg.norm(tri[(k + 1) % 3] - tri[k]) for k in range(3)]
        if min(sides) < 0.4:
            continue
        inner = []
        for k in range(3):
            u, w = tri[k - 1] - tri[k], tri[(k + 1) % 3] - tri[k]
            inner.append(math.acos(u @ w / np.linalg.norm(u) / np.linalg.norm(w)))
        if max(inner) > math.radians(120) - MARGIN:
            continue
        pts = []
        for k in range(3):
            p, q = tri[k], tri[(k + 1) % 3]
            side = q - p
            outward = np.array([side[1], -side[0]]) / np.linalg.norm(side)
            apex = 0.5 * (p + q) + outward * np.linalg.norm(side) / (2 * math.sqrt(3))
            pts.extend([p, apex])
        return np.array(pts)


GENERATORS = {"I": class_i_hexagon, "II": class_ii_hexagon, "III": class_iii_hexagon}


def random_convex_hexagon(rng):
    """Six points in angular order on a random ellipse."""
    while True:
        t = np.sort(rng.uniform(0, 2 * math.pi, size=6))
        gaps = np.diff(np.append(t, t[0] + 2 * math.pi))
        if gaps.min() > 0.3:
            break
    a, b = rng.uniform(0.6, 1.4, size=2)
    return np.column_stack([a * np.cos(t), b * np.sin(t)])
