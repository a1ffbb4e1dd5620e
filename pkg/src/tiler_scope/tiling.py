"""
tiling.py
---------

Decide whether a convex polygon tiles the plane.

Triangles and quadrangles always tile, nothing with seven or more edges
does, hexagons tile exactly when one of Reinhardt's three condition sets
holds under some labeling of the vertices, and pentagons are only settled
when they have a pair of parallel edges.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePolygon, WrongArity
from .geometry import DEFAULT_TOLERANCE, SectionPolygon, ToleranceConfig, _newell_normal

TWO_THIRDS_PI = 2.0 * math.pi / 3.0


@dataclass(frozen=True)
class PolygonMetrics:
    """Edge lengths and interior angles of a convex polygon.

    ``edge_lengths[i]`` joins vertex ``i`` to vertex ``i + 1`` and
    ``angles[i]`` is the interior angle at vertex ``i`` in radians.
    """

    n: int
    edge_lengths: tuple[float, ...]
    angles: tuple[float, ...]

    def relabeled(self, rotation: int, reflected: bool = False) -> "PolygonMetrics":
        """Metrics of the same polygon with vertex ``k`` renamed from old vertex ``r +/- k``."""
        n = self.n
        if reflected:
            angles = tuple(self.angles[(rotation - k) % n] for k in range(n))
            lengths = tuple(self.edge_lengths[(rotation - k - 1) % n] for k in range(n))
        else:
            angles = tuple(self.angles[(rotation + k) % n] for k in range(n))
            lengths = tuple(self.edge_lengths[(rotation + k) % n] for k in range(n))
        return PolygonMetrics(n, lengths, angles)


def _as_points(poly) -> np.ndarray:
    pts = poly.vertices if isinstance(poly, SectionPolygon) else poly
    pts = np.asarray(pts, dtype=float)
    if pts.ndim != 2 or pts.shape[1] not in (2, 3):
        raise DegeneratePolygon(f"expected an (n, 2) or (n, 3) point list, got shape {pts.shape}")
    if pts.shape[1] == 2:
        pts = np.column_stack([pts, np.zeros(len(pts))])
    return pts


def polygon_metrics(poly, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> PolygonMetrics:
    """
    Compute edge lengths and interior angles.

    Parameters
    ----------
    poly : SectionPolygon or (n, 2) / (n, 3) float
      Vertices of a convex planar polygon in cyclic order (either sense).
    tol : ToleranceConfig

    Raises
    ------
    DegeneratePolygon
      Fewer than 3 vertices, a zero-length edge, a straight or reflex
      angle, or a self-overlapping vertex order.
    """
    pts = _as_points(poly)
    n = len(pts)
    if n < 3:
        raise DegeneratePolygon(f"a polygon needs at least 3 vertices, got {n}")
    forward = np.roll(pts, -1, axis=0) - pts
    lengths = np.linalg.norm(forward, axis=1)
    if lengths.min() <= tol.eps_geom:
        raise DegeneratePolygon(f"edge {int(np.argmin(lengths))} has zero length")

    normal = _newell_normal(pts)
    if np.linalg.norm(normal) <= tol.eps_geom:
        raise DegeneratePolygon("polygon has no area")
    normal /= np.linalg.norm(normal)

    backward = -np.roll(forward, 1, axis=0)  # vertex i -> vertex i - 1
    turn = np.cross(np.roll(forward, 1, axis=0), forward) @ normal
    if turn.min() < 0:
        raise DegeneratePolygon(f"reflex angle at vertex {int(np.argmin(turn))}")
    sines = np.linalg.norm(np.cross(forward, backward), axis=1)
    cosines = np.einsum("ij,ij->i", forward, backward)
    angles = np.arctan2(sines, cosines)
    if (math.pi - angles).min() <= tol.eps_angle:
        raise DegeneratePolygon(f"straight angle at vertex {int(np.argmax(angles))}")
    if abs(angles.sum() - (n - 2) * math.pi) > n * tol.eps_angle:
        raise DegeneratePolygon("angle sum does not match a simple convex polygon")
    return PolygonMetrics(n, tuple(float(x) for x in lengths), tuple(float(a) for a in angles))


class ReinhardtClass(enum.Enum):
    I = "I"
    II = "II"
    III = "III"


@dataclass(frozen=True)
class ReinhardtLabeling:
    """A class together with the relabeling under which its conditions hold."""

    cls: ReinhardtClass
    rotation: int
    reflected: bool


def _reinhardt_conditions(m: PolygonMetrics, tol: ToleranceConfig) -> list[ReinhardtClass]:
    # positions are 0-based: angle k sits at V_{k+1}, edge k is V_{k+1}V_{k+2}
    A, L = m.angles, m.edge_lengths
    full = 2.0 * math.pi

    def same_len(i, j):
        return abs(L[i] - L[j]) <= tol.eps_len

    def sums_to_full(i, j, k):
        return abs(A[i] + A[j] + A[k] - full) <= 3 * tol.eps_angle

    def third(i):
        return abs(A[i] - TWO_THIRDS_PI) <= tol.eps_angle

    found = []
    if sums_to_full(0, 1, 2) and same_len(2, 5):
        found.append(ReinhardtClass.I)
    if sums_to_full(0, 1, 3) and same_len(1, 3) and same_len(2, 5):
        found.append(ReinhardtClass.II)
    if third(0) and third(2) and third(4) and same_len(1, 2) and same_len(3, 4) and same_len(5, 0):
        found.append(ReinhardtClass.III)
    return found


def reinhardt_labelings(m: PolygonMetrics, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> list[ReinhardtLabeling]:
    """Every (class, rotation, reflection) triple whose conditions hold."""
    if m.n != 6:
        raise WrongArity(f"Reinhardt classes apply to hexagons, got {m.n} edges")
    out = []
    for reflected in (False, True):
        for rotation in range(6):
            for cls in _reinhardt_conditions(m.relabeled(rotation, reflected), tol):
                out.append(ReinhardtLabeling(cls, rotation, reflected))
    return out


def classify_hexagon(m: PolygonMetrics, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> frozenset[ReinhardtClass]:
    """Reinhardt classes satisfied under at least one of the 12 dihedral relabelings."""
    return frozenset(lab.cls for lab in reinhardt_labelings(m, tol))


def has_equal_opposite_edges(m: PolygonMetrics, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> bool:
    if m.n != 6:
        raise WrongArity(f"opposite edges are defined for hexagons, got {m.n} edges")
    L = m.edge_lengths
    return any(abs(L[i] - L[i + 3]) <= tol.eps_len for i in range(3))


def count_angles(m: PolygonMetrics, target: float, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> int:
    return sum(1 for a in m.angles if abs(a - target) <= tol.eps_angle)


def has_parallel_edge_pair(poly, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> bool:
    """True when two edges, traversed in order, point in opposite directions."""
    pts = _as_points(poly)
    d = np.roll(pts, -1, axis=0) - pts
    d = d / np.linalg.norm(d, axis=1, keepdims=True)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            sine = np.linalg.norm(np.cross(d[i], d[j]))
            if math.atan2(sine, -float(d[i] @ d[j])) <= tol.eps_angle:
                return True
    return False


class VerdictKind(enum.Enum):
    TILER = "tiler"
    NOT_TILER = "not_tiler"
    UNKNOWN = "unknown"


class TilerReason(enum.Enum):
    TRIANGLE_ALWAYS_TILES = "triangle_always_tiles"
    QUADRILATERAL_ALWAYS_TILES = "quadrilateral_always_tiles"
    HEXAGON_CLASS = "hexagon_class"
    SEVEN_PLUS_EDGES = "seven_plus_edges"
    HEXAGON_NO_CLASS = "hexagon_no_class"
    PENTAGON_PARALLEL_EDGES = "pentagon_parallel_edges"
    PENTAGON_UNDETERMINED = "pentagon_undetermined"


_KIND_OF = {
    TilerReason.TRIANGLE_ALWAYS_TILES: VerdictKind.TILER,
    TilerReason.QUADRILATERAL_ALWAYS_TILES: VerdictKind.TILER,
    TilerReason.HEXAGON_CLASS: VerdictKind.TILER,
    TilerReason.PENTAGON_PARALLEL_EDGES: VerdictKind.TILER,
    TilerReason.SEVEN_PLUS_EDGES: VerdictKind.NOT_TILER,
    TilerReason.HEXAGON_NO_CLASS: VerdictKind.NOT_TILER,
    TilerReason.PENTAGON_UNDETERMINED: VerdictKind.UNKNOWN,
}


@dataclass(frozen=True)
class TilerVerdict:
    kind: VerdictKind
    reason: TilerReason
    classes: frozenset = frozenset()

    def __post_init__(self):
        if _KIND_OF[self.reason] is not self.kind:
            raise ValueError(f"reason {self.reason.value} does not fit verdict {self.kind.value}")
        if self.classes and self.reason is not TilerReason.HEXAGON_CLASS:
            raise ValueError("Reinhardt classes only accompany hexagon_class verdicts")

    @classmethod
    def of(cls, reason: TilerReason, classes=frozenset()) -> "TilerVerdict":
        return cls(_KIND_OF[reason], reason, frozenset(classes))

    def label(self) -> str:
        if self.classes:
            names = ",".join(sorted(c.value for c in self.classes))
            return f"{self.kind.value}({self.reason.value}:{names})"
        return f"{self.kind.value}({self.reason.value})"


def tiler_verdict(poly, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> TilerVerdict:
    m = polygon_metrics(poly, tol)
    if m.n == 3:
        return TilerVerdict.of(TilerReason.TRIANGLE_ALWAYS_TILES)
    if m.n == 4:
        return TilerVerdict.of(TilerReason.QUADRILATERAL_ALWAYS_TILES)
    if m.n >= 7:
        return TilerVerdict.of(TilerReason.SEVEN_PLUS_EDGES)
    if m.n == 6:
        classes = classify_hexagon(m, tol)
        if classes:
            return TilerVerdict.of(TilerReason.HEXAGON_CLASS, classes)
        return TilerVerdict.of(TilerReason.HEXAGON_NO_CLASS)
    if has_parallel_edge_pair(poly, tol):
        return TilerVerdict.of(TilerReason.PENTAGON_PARALLEL_EDGES)
    return TilerVerdict.of(TilerReason.PENTAGON_UNDETERMINED)
