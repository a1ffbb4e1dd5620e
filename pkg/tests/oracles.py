"""Independent reference computations used to check the library.

Nothing here calls into tiler_scope except to read plain data off its
objects: the oracles recompute lengths, angles, class conditions and
areas on their own.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linprog

FULL = 2 * math.pi
THIRD = 2 * math.pi / 3


def lengths_and_angles(points):
    """Edge lengths (vertex k to k+1) and interior angles, by law of cosines."""
    pts = [tuple(map(float, p)) for p in points]
    n = len(pts)
    lengths = [math.dist(pts[k], pts[(k + 1) % n]) for k in range(n)]
    angles = []
    for k in range(n):
        a = math.dist(pts[k - 1], pts[k])
        b = math.dist(pts[k], pts[(k + 1) % n])
        c = math.dist(pts[k - 1], pts[(k + 1) % n])
        cos = (a * a + b * b - c * c) / (2 * a * b)
        angles.append(math.acos(max(-1.0, min(1.0, cos))))
    return lengths, angles


def _labelings():
    base = list(range(6))
    rev = [0, 5, 4, 3, 2, 1]
    for r in range(6):
        yield base[r:] + base[:r]
        yield rev[r:] + rev[:r]


def reinhardt_violations(lengths, angles, eps_len, eps_angle):
    """
    For each of the 12 labelings and each class, the worst condition
    violation measured in units of its threshold (<= 1 means satisfied).

    The hexagon is given by ``angles[k]`` at original vertex ``k`` and
    ``lengths[k]`` on the edge between original vertices ``k`` and ``k+1``.
    """
    edge = {frozenset({k, (k + 1) % 6}): lengths[k] for k in range(6)}
    out = []
    for order in _labelings():
        def ang(i):  # angle at V_i, 1-based
            return angles[order[i - 1]]

        def seg(i, j):  # length V_i V_j
            return edge[frozenset({order[i - 1], order[j - 1]})]

        class_i = max(
            abs(ang(1) + ang(2) + ang(3) - FULL) / (3 * eps_angle),
            abs(seg(3, 4) - seg(6, 1)) / eps_len,
        )
        class_ii = max(
            abs(ang(1) + ang(2) + ang(4) - FULL) / (3 * eps_angle),
            abs(seg(2, 3) - seg(4, 5)) / eps_len,
            abs(seg(3, 4) - seg(6, 1)) / eps_len,
        )
        class_iii = max(
            abs(ang(1) - THIRD) / eps_angle,
            abs(ang(3) - THIRD) / eps_angle,
            abs(ang(5) - THIRD) / eps_angle,
            abs(seg(2, 3) - seg(3, 4)) / eps_len,
            abs(seg(4, 5) - seg(5, 6)) / eps_len,
            abs(seg(6, 1) - seg(1, 2)) / eps_len,
        )
        out.append({"I": class_i, "II": class_ii, "III": class_iii})
    return out


def brute_force_classes(lengths, angles, eps_len, eps_angle):
    found = set()
    for row in reinhardt_violations(lengths, angles, eps_len, eps_angle):
        found.update(name for name, v in row.items() if v <= 1.0)
    return found


def min_violation(lengths, angles, eps_len, eps_angle):
    """Smallest violation over every labeling and class."""
    return min(min(row.values()) for row in reinhardt_violations(lengths, angles, eps_len, eps_angle))


def plane_frame(normal, offset):
    n = np.asarray(normal, dtype=float)
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = np.cross(n, helper)
    u /= np.linalg.norm(u)
    w = np.cross(n, u)
    return n * offset, u, w


def monte_carlo_area(normals, offsets, plane_normal, plane_offset, rng, samples=100_000):
    """
    Area of {p in plane : normals @ p <= offsets} by rejection sampling.

    The sampling rectangle is the exact bounding box of the region in the
    plane's own frame, found by linear programming, so at least half of it
    is covered and the estimate's relative error stays well under 1%.
    """
    origin, u, w = plane_frame(plane_normal, plane_offset)
    A = np.column_stack([normals @ u, normals @ w])
    b = offsets - normals @ origin
    bounds = []
    for c in ([1, 0], [-1, 0], [0, 1], [0, -1]):
        res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * 2, method="highs")
        if res.status != 0:
            return 0.0
        bounds.append(res.fun)
    u_lo, u_hi, w_lo, w_hi = bounds[0], -bounds[1], bounds[2], -bounds[3]
    box = (u_hi - u_lo) * (w_hi - w_lo)
    if box <= 0:
        return 0.0
    uv = rng.uniform([u_lo, w_lo], [u_hi, w_hi], size=(samples, 2))
    inside = np.all(uv @ A.T <= b, axis=1)
    return box * inside.mean()


def shoelace_area(points, normal):
    """Area of a planar 3-D polygon via the vector cross-product sum."""
    pts = np.asarray(points, dtype=float)
    total = np.zeros(3)
    for k in range(len(pts)):
        total += np.cross(pts[k], pts[(k + 1) % len(pts)])
    return abs(float(total @ np.asarray(normal, dtype=float))) / 2
