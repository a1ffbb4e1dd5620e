import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiler_scope import (
    Plane,
    PolygonMetrics,
    ReinhardtClass,
    TilerReason,
    ToleranceConfig,
    VerdictKind,
    classify_hexagon,
    count_angles,
    cross_section,
    has_equal_opposite_edges,
    has_parallel_edge_pair,
    polygon_metrics,
    tiler_verdict,
)
from tiler_scope.errors import DegeneratePolygon, WrongArity

from hexagons import GENERATORS, close_polygon, polygon_from, random_convex_hexagon
from oracles import brute_force_classes, lengths_and_angles

TOL = ToleranceConfig()
THIRD = 2 * math.pi / 3
SQUARE = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)


def regular(n, radius=1.0):
    t = 2 * math.pi * np.arange(n) / n
    return radius * np.column_stack([np.cos(t), np.sin(t)])


def names(classes):
    return {c.value for c in classes}


def test_square_metrics():
    m = polygon_metrics(SQUARE)
    assert m.edge_lengths == pytest.approx((1, 1, 1, 1))
    assert m.angles == pytest.approx((math.pi / 2,) * 4)


def test_cube_hexagon_metrics(cube):
    m = polygon_metrics(cross_section(cube, Plane.from_coefficients(1, 1, 1, 1.5)))
    assert m.edge_lengths == pytest.approx((math.sqrt(2) / 2,) * 6, abs=1e-12)
    assert m.angles == pytest.approx((THIRD,) * 6, abs=1e-12)


def test_cube_corner_hexagon_metrics(cube):
    m = polygon_metrics(cross_section(cube, Plane.from_coefficients(1, 1, 1, 1.25)))
    short, long_ = 0.25 * math.sqrt(2), 0.75 * math.sqrt(2)
    L = m.edge_lengths
    assert all(abs(L[k] - L[k + 2]) < 1e-12 for k in range(4))
    assert sorted((L[0], L[1])) == pytest.approx([short, long_], abs=1e-12)
    assert m.angles == pytest.approx((THIRD,) * 6, abs=1e-12)


def test_metrics_reject_degenerate_input():
    with pytest.raises(DegeneratePolygon):
        polygon_metrics([[0, 0], [1, 0], [1, 0], [0, 1]])
    with pytest.raises(DegeneratePolygon):
        polygon_metrics([[0, 0], [1, 0], [2, 0], [1, 1]])
    with pytest.raises(DegeneratePolygon):
        polygon_metrics([[0, 0], [2, 0], [1, 0.3], [1, 2]])  # reflex at (1, 0.3)


def test_metrics_match_law_of_cosines_oracle(rng):
    for _ in range(50):
        pts = random_convex_hexagon(rng)
        m = polygon_metrics(pts)
        lengths, angles = lengths_and_angles(pts)
        assert m.edge_lengths == pytest.approx(lengths, abs=1e-12)
        assert m.angles == pytest.approx(angles, abs=1e-9)


def test_regular_hexagon_in_every_class():
    assert classify_hexagon(polygon_metrics(regular(6))) == frozenset(ReinhardtClass)


def test_cube_corner_hexagon_has_no_class(cube):
    # alternating short/long edges: every opposite pair and every adjacent pair differ
    s = cross_section(cube, Plane.from_coefficients(1, 1, 1, 1.25))
    m = polygon_metrics(s)
    assert classify_hexagon(m) == frozenset()
    lengths, angles = lengths_and_angles(s.vertices)
    assert brute_force_classes(lengths, angles, TOL.eps_len, TOL.eps_angle) == set()


def test_constructed_counterexample_has_no_class():
    angles = [math.radians(a) for a in (100, 100, 160, 100, 100, 160)]
    lengths = close_polygon(angles, [1.0, 1.3, 0.7, 1.1, 0.0, 0.0], (4, 5))
    pts = polygon_from(angles, lengths)
    m = polygon_metrics(pts)
    assert m.angles == pytest.approx(angles, abs=1e-12)
    oracle = brute_force_classes(*lengths_and_angles(pts), TOL.eps_len, TOL.eps_angle)
    assert oracle == set()
    assert classify_hexagon(m) == frozenset()


@pytest.mark.parametrize("name", sorted(GENERATORS))
def test_generated_hexagons_agree_with_oracle(name, rng):
    for _ in range(30):
        pts = GENERATORS[name](rng)
        m = polygon_metrics(pts)
        got = names(classify_hexagon(m))
        assert name in got
        assert got == brute_force_classes(m.edge_lengths, m.angles, TOL.eps_len, TOL.eps_angle)


def test_random_hexagons_agree_with_oracle(rng):
    for _ in range(200):
        m = polygon_metrics(random_convex_hexagon(rng))
        assert names(classify_hexagon(m)) == brute_force_classes(m.edge_lengths, m.angles, TOL.eps_len, TOL.eps_angle)


@settings(max_examples=50, deadline=None)
@given(
    seed=st.integers(0, 2 ** 32 - 1),
    rotation=st.integers(0, 5),
    reflected=st.booleans(),
    scale=st.floats(0.1, 10.0),
)
def test_classes_invariant_under_relabeling_and_scale(seed, rotation, reflected, scale):
    rng = np.random.default_rng(seed)
    name = ("I", "II", "III")[seed % 3]
    m = polygon_metrics(GENERATORS[name](rng))
    base = classify_hexagon(m)
    assert classify_hexagon(m.relabeled(rotation, reflected)) == base
    scaled = PolygonMetrics(6, tuple(scale * x for x in m.edge_lengths), m.angles)
    loose = ToleranceConfig(eps_len=TOL.eps_len * max(scale, 1.0))
    assert base <= classify_hexagon(scaled, loose)


def test_looser_tolerance_never_drops_a_class(rng):
    tight, loose = ToleranceConfig(eps_len=1e-9, eps_angle=1e-9), ToleranceConfig(eps_len=1e-3, eps_angle=1e-3)
    for _ in range(50):
        for make in GENERATORS.values():
            m = polygon_metrics(make(rng))
            assert classify_hexagon(m, tight) <= classify_hexagon(m, TOL) <= classify_hexagon(m, loose)


def test_relabeled_is_a_group_action():
    m = PolygonMetrics(6, (1, 2, 3, 4, 5, 6), (0.1, 0.2, 0.3, 0.4, 0.5, 0.6))
    assert m.relabeled(0) == m
    assert m.relabeled(0, True).relabeled(0, True) == m
    assert m.relabeled(2).relabeled(4) == m
    flipped = m.relabeled(0, True)
    assert flipped.angles == (0.1, 0.6, 0.5, 0.4, 0.3, 0.2)
    assert flipped.edge_lengths == (6, 5, 4, 3, 2, 1)


def test_classify_needs_a_hexagon():
    with pytest.raises(WrongArity):
        classify_hexagon(polygon_metrics(SQUARE))
    with pytest.raises(WrongArity):
        has_equal_opposite_edges(polygon_metrics(SQUARE))


def test_opposite_edges(cube):
    assert has_equal_opposite_edges(polygon_metrics(regular(6)))
    assert not has_equal_opposite_edges(polygon_metrics(cross_section(cube, Plane.from_coefficients(1, 1, 1, 1.25))))
    assert has_equal_opposite_edges(polygon_metrics(cross_section(cube, Plane.from_coefficients(1, 1, 1, 1.5))))


def test_count_angles(cube):
    assert count_angles(polygon_metrics(regular(6)), THIRD) == 6
    assert count_angles(polygon_metrics(SQUARE), THIRD) == 0
    assert count_angles(polygon_metrics(cross_section(cube, Plane.from_coefficients(1, 1, 1, 1.25))), THIRD) == 6


def test_parallel_edges():
    assert has_parallel_edge_pair(SQUARE)
    assert not has_parallel_edge_pair(regular(3))
    assert not has_parallel_edge_pair(regular(5))
    truncated = np.array([[0, 0], [1, 0], [1, 0.6], [0.6, 1], [0, 1]], dtype=float)
    assert has_parallel_edge_pair(truncated)


def test_parallel_edges_match_dot_product_oracle(rng):
    for _ in range(100):
        pts = random_convex_hexagon(rng)[:5]
        d = np.roll(pts, -1, axis=0) - pts
        d /= np.linalg.norm(d, axis=1, keepdims=True)
        anti = min(1 + d[i] @ d[j] for i in range(5) for j in range(i + 1, 5))
        # keep clear of the threshold; 1 + cos t is about t^2 / 2
        if 1e-15 < anti < 1e-6:
            continue
        assert has_parallel_edge_pair(pts) == (anti <= 1e-15)


def test_verdicts():
    tri = tiler_verdict(regular(3))
    assert tri.kind is VerdictKind.TILER and tri.reason is TilerReason.TRIANGLE_ALWAYS_TILES
    assert tiler_verdict(SQUARE).reason is TilerReason.QUADRILATERAL_ALWAYS_TILES
    hept = tiler_verdict(regular(7))
    assert hept.kind is VerdictKind.NOT_TILER and hept.reason is TilerReason.SEVEN_PLUS_EDGES
    pent = tiler_verdict(regular(5))
    assert pent.kind is VerdictKind.UNKNOWN and pent.reason is TilerReason.PENTAGON_UNDETERMINED
    truncated = np.array([[0, 0], [1, 0], [1, 0.6], [0.6, 1], [0, 1]], dtype=float)
    assert tiler_verdict(truncated).reason is TilerReason.PENTAGON_PARALLEL_EDGES
    hexa = tiler_verdict(regular(6))
    assert hexa.kind is VerdictKind.TILER and hexa.classes == frozenset(ReinhardtClass)


def test_cube_corner_hexagon_verdict(cube):
    v = tiler_verdict(cross_section(cube, Plane.from_coefficients(1, 1, 1, 1.25)))
    assert v.kind is VerdictKind.NOT_TILER and v.reason is TilerReason.HEXAGON_NO_CLASS


def test_verdict_label():
    assert tiler_verdict(regular(6)).label() == "tiler(hexagon_class:I,II,III)"
    assert tiler_verdict(SQUARE).label() == "tiler(quadrilateral_always_tiles)"
