import math

import numpy as np
import pytest

import oracles
from buffon_convex.errors import NotInside, OutOfRange, UnsupportedVariant
from buffon_convex.geom import (
    Disk,
    Ellipse,
    Polygon,
    admissible_directions,
    pointwise_probability_exact,
    pointwise_probability_many,
    pointwise_probability_mc,
    pointwise_probability_proxy,
)

UNIT_SQUARE = Polygon.square(1.0)
# brute force over 10^6 equally spaced angles (oracles.brute_force_pointwise)
CORNER_MEASURE = 5 * math.pi / 6
DISK_LENS = 0.47876359039292027


def test_disk_centre_full_circle():
    s = admissible_directions(Disk(), (0.0, 0.0), 0.5)
    assert s.is_full
    assert s.total_measure == pytest.approx(2 * math.pi)


def test_square_single_edge():
    s = admissible_directions(UNIT_SQUARE, (0.5, 0.05), 0.1)
    assert s.total_measure == pytest.approx(4 * math.pi / 3, abs=1e-12)
    assert 3 * math.pi / 2 not in s
    assert math.pi / 2 in s


def test_square_corner_two_edges():
    s = admissible_directions(UNIT_SQUARE, (0.05, 0.05), 0.1)
    assert s.total_measure == pytest.approx(CORNER_MEASURE, abs=1e-12)
    brute = oracles.brute_force_pointwise(UNIT_SQUARE.vertices, (0.05, 0.05), 0.1, n=1_000_000)
    assert s.total_measure == pytest.approx(2 * math.pi * brute, abs=1e-4)


def test_zero_length_needle():
    assert pointwise_probability_exact(UNIT_SQUARE, (0.3, 0.3), 0.0) == 1.0
    assert admissible_directions(Disk(), (0.99, 0.0), 0.0).is_full


def test_square_edge_probability():
    assert pointwise_probability_exact(UNIT_SQUARE, (0.5, 0.05), 0.1) == pytest.approx(2 / 3, abs=1e-12)


def test_disk_lens():
    assert pointwise_probability_exact(Disk(), (0.9, 0.0), 0.5) == pytest.approx(DISK_LENS, abs=1e-12)
    brute = oracles.brute_force_pointwise_disk((0.9, 0.0), 0.5, n=1_000_000)
    assert DISK_LENS == pytest.approx(brute, abs=1e-4)


def test_disk_off_centre():
    d = Disk((2.0, -1.0), 3.0)
    x = (2.0 + 2.1, -1.0 + 0.4)
    rho = math.hypot(2.1, 0.4)
    assert pointwise_probability_exact(d, x, 1.5) == pytest.approx(oracles.disk_pointwise(rho, 1.5, 3.0), abs=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_random_polygon_against_brute_force(seed):
    rng = np.random.default_rng(seed)
    poly = Polygon(oracles.random_convex_polygon(rng, 9))
    for _ in range(5):
        x = poly.vertices[0] + rng.random() * (np.mean(poly.xy, axis=0) - poly.vertices[0])
        l = rng.uniform(0.05, 0.8)
        exact = pointwise_probability_exact(poly, tuple(x), l)
        assert exact == pytest.approx(oracles.brute_force_pointwise(poly.vertices, x, l), abs=1e-4)


def test_many_matches_scalar():
    rng = np.random.default_rng(4)
    poly = Polygon(oracles.random_convex_polygon(rng, 12))
    pts = poly.xy.mean(axis=0) + 0.3 * (rng.random((400, 2)) - 0.5)
    pts = pts[poly.contains_many(pts)]
    many = pointwise_probability_many(poly, pts, 0.3)
    scalar = [pointwise_probability_exact(poly, tuple(p), 0.3) for p in pts]
    assert many == pytest.approx(np.array(scalar), abs=1e-12)
    disk_pts = rng.uniform(-0.7, 0.7, (300, 2))
    assert pointwise_probability_many(Disk(), disk_pts, 0.6) == pytest.approx(
        np.array([pointwise_probability_exact(Disk(), tuple(p), 0.6) for p in disk_pts]), abs=1e-12)


def test_ellipse_routes():
    e = Ellipse.from_eccentricity(0.6)
    with pytest.raises(UnsupportedVariant):
        admissible_directions(e, (0.0, 0.0), 0.3)
    x = (1.0, 0.1)
    proxy = pointwise_probability_proxy(e, x, 0.4)
    mc = pointwise_probability_mc(e, x, 0.4, 400_000, np.random.default_rng(0))
    assert proxy == pytest.approx(mc, abs=4 * math.sqrt(mc * (1 - mc) / 400_000) + 1e-4)


def test_errors():
    with pytest.raises(NotInside):
        pointwise_probability_exact(UNIT_SQUARE, (1.5, 0.5), 0.1)
    with pytest.raises(OutOfRange):
        pointwise_probability_exact(UNIT_SQUARE, (0.5, 0.5), -0.1)
