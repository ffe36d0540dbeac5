import math

import numpy as np
import pytest

import oracles
from buffon_convex.errors import DegenerateBody, EmptyErosion
from buffon_convex.geom import ArcPolygon, Disk, Ellipse, LineSegment, Polygon, normalize_to_perimeter
from buffon_convex.parallel import (
    erode_polygon,
    exterior_parallel,
    inradius,
    interior_parallel,
    sandwich,
    steiner_report,
)

UNIT_SQUARE = Polygon.square(1.0)
TRIANGLE = Polygon([(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)])


def test_square_erosion():
    out = interior_parallel(UNIT_SQUARE, 0.2)
    assert not out.is_empty
    assert out.body == Polygon([(0.2, 0.2), (0.8, 0.2), (0.8, 0.8), (0.2, 0.8)])


def test_disk_erosion():
    out = interior_parallel(Disk(), 0.25)
    assert out.body == Disk((0, 0), 0.75)


@pytest.mark.parametrize("r", [0.5, 0.6, 2.0])
def test_erosion_at_or_beyond_inradius_is_empty(r):
    out = interior_parallel(UNIT_SQUARE, r)
    assert out.is_empty and not out and out.area == 0.0


def test_segment_erosion_is_empty():
    assert interior_parallel(LineSegment((0, 0), (1, 0)), 0.1).is_empty


def test_erosion_drops_short_edges():
    # a tiny bevel on one corner vanishes after a modest erosion
    p = Polygon([(0, 0), (1, 0), (1, 0.99), (0.99, 1), (0, 1)])
    out = erode_polygon(p, 0.2)
    assert len(out.vertices) == 4
    assert out.area == pytest.approx(0.36, abs=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_erosion_matches_halfspace_oracle(seed):
    rng = np.random.default_rng(seed)
    v = oracles.random_convex_polygon(rng, 14)
    poly = Polygon(v)
    r = rng.uniform(0.05, 0.95) * inradius(poly)
    ours = erode_polygon(poly, r)
    ref = oracles.erosion(poly.vertices, r)
    a, L = oracles.hull_area_perimeter(ref)
    assert ours.area == pytest.approx(a, abs=1e-12)
    assert ours.perimeter == pytest.approx(L, abs=1e-11)


def test_many_sided_erosion_is_fast_and_exact():
    e = normalize_to_perimeter(Ellipse.from_eccentricity(0.6))
    out = interior_parallel(e, 0.1)
    assert out.proxy_n == 4096
    ref = oracles.erosion(e.to_polygon(4096).vertices, 0.1)
    assert out.area == pytest.approx(oracles.hull_area_perimeter(ref)[0], abs=1e-10)


def test_square_dilation():
    out = exterior_parallel(UNIT_SQUARE, 0.25)
    assert isinstance(out.body, ArcPolygon)
    assert out.perimeter == pytest.approx(4 + math.pi / 2, abs=1e-12)
    assert out.area == pytest.approx(1 + 1 + math.pi / 16, abs=1e-12)


def test_disk_dilation():
    assert exterior_parallel(Disk(), 1.0).body == Disk((0, 0), 2.0)


def test_segment_dilation_rejected():
    with pytest.raises(DegenerateBody):
        exterior_parallel(LineSegment((0, 0), (1, 0)), 0.1)


@pytest.mark.parametrize("seed", range(5))
def test_dilation_steiner(seed):
    v = oracles.random_convex_polygon(np.random.default_rng(seed), 10)
    p = Polygon(v)
    r = 0.37
    out = exterior_parallel(p, r)
    assert out.perimeter == pytest.approx(p.perimeter + 2 * math.pi * r, rel=1e-13)
    assert out.area == pytest.approx(p.area + p.perimeter * r + math.pi * r * r, rel=1e-13)


def test_dilating_an_arc_polygon_composes():
    once = exterior_parallel(exterior_parallel(UNIT_SQUARE, 0.1).body, 0.15).body
    direct = exterior_parallel(UNIT_SQUARE, 0.25).body
    assert once.area == pytest.approx(direct.area, abs=1e-12)
    assert once.perimeter == pytest.approx(direct.perimeter, abs=1e-12)


def test_disk_sandwich_restores_disk():
    assert sandwich(Disk(), 0.3).body == Disk((0, 0), 1.0)


def test_square_sandwich_rounds_corners():
    sw = sandwich(UNIT_SQUARE, 0.1)
    assert sw.perimeter == pytest.approx(3.2 + 0.2 * math.pi, abs=1e-12)
    # every sampled boundary point of the sandwich lies in the square
    b = sw.body.boundary_points(100_000)
    assert b.min() >= -1e-12 and b.max() <= 1 + 1e-12
    assert sw.area < UNIT_SQUARE.area


def test_empty_sandwich():
    assert sandwich(UNIT_SQUARE, 0.6).is_empty


def test_steiner_report_disk_has_zero_gaps():
    rep = steiner_report(Disk(), 0.4)
    assert rep.gap_area == pytest.approx(0.0, abs=1e-12)
    assert rep.gap_length == pytest.approx(0.0, abs=1e-12)


def test_steiner_report_square_gap():
    rep = steiner_report(Polygon.square(math.pi / 2), 0.1)
    assert rep.gap_length == pytest.approx((8 - 2 * math.pi) * 0.1, abs=1e-12)
    assert rep.gap_area > 0 and rep.holds


def test_steiner_report_empty():
    with pytest.raises(EmptyErosion):
        steiner_report(UNIT_SQUARE, 0.5)


def test_triangle_sandwich_perimeter_increases_to_three():
    L = [sandwich(TRIANGLE, 2.0**-k).perimeter for k in range(3, 11)]
    assert all(b >= a for a, b in zip(L, L[1:]))
    assert all(x < 3 for x in L)
    # exact: 3 - (6 sqrt 3 - 2 pi) r
    for k, x in zip(range(3, 11), L):
        assert x == pytest.approx(3 - (6 * math.sqrt(3) - 2 * math.pi) * 2.0**-k, abs=1e-12)


@pytest.mark.parametrize("body, expected", [
    (UNIT_SQUARE, 0.5),
    (Disk((0, 0), 2.0), 2.0),
    (TRIANGLE, math.sqrt(3) / 6),
    (Ellipse((0, 0), 2.0, 1.0), 1.0),
])
def test_inradius(body, expected):
    assert inradius(body) == pytest.approx(expected, abs=1e-9)
