import math

import numpy as np
import pytest

import oracles
from buffon_convex.buffon import (
    Estimate,
    Method,
    SamplerConfig,
    boundary_layer_integral,
    disk_closed_form,
    disk_probability,
    layer_quadrature,
    mc_buffon,
    quad_buffon,
    sample_uniform,
    square_closed_form,
)
from buffon_convex.errors import NotNormalized, OutOfRange, UnsupportedVariant
from buffon_convex.geom import Disk, Ellipse, LineSegment, Polygon

HALF_PI = math.pi / 2
SQUARE = Polygon.square(HALF_PI)
# radial integral of the two-circle lens formula (oracles.disk_radial_integral)
DISK_VALUES = {0.0: 1.0, 0.5: 0.6850376424742927, 1.0: 0.3910022189557707, 1.5: 0.14429361281438746, 2.0: 0.0}
# theta integral of (s - l|cos|)(s - l|sin|) / s^2 (oracles.square_theta_integral)
SQUARE_VALUES = {0.05: 0.9597940418873969, 0.1: 0.9202331144634578, 0.2: 0.8430463516815715}


@pytest.mark.parametrize("l, expected", DISK_VALUES.items())
def test_disk_closed_form(l, expected):
    assert disk_closed_form(l) == pytest.approx(expected, abs=1e-12)


def test_disk_closed_form_at_one():
    assert disk_closed_form(1.0) == pytest.approx(2 / 3 - math.sqrt(3) / (2 * math.pi), abs=1e-15)


@pytest.mark.parametrize("l", [-0.1, 2.1])
def test_disk_closed_form_range(l):
    with pytest.raises(OutOfRange):
        disk_closed_form(l)


def test_disk_probability_wrapper():
    assert disk_probability(3.0) == 0.0
    assert disk_probability(1.0, radius=2.0) == pytest.approx(disk_closed_form(0.5))


@pytest.mark.parametrize("l, expected", SQUARE_VALUES.items())
def test_square_closed_form(l, expected):
    assert square_closed_form(l, HALF_PI) == pytest.approx(expected, abs=1e-14)
    assert oracles.square_closed(l, HALF_PI) == pytest.approx(expected, abs=1e-14)


def test_estimate_from_counts():
    e = Estimate.from_counts(250, 1000, 7)
    assert e.value == 0.25 and e.std_error == pytest.approx(math.sqrt(0.25 * 0.75 / 1000))
    assert e.csv_row("x", 0.1) == ("x", 0.1, "monte_carlo", 0.25, e.std_error, 1000, 7)


def test_sample_uniform_is_inside_and_uniform():
    rng = np.random.default_rng(0)
    tri = Polygon([(0, 0), (1, 0), (0, 1)])
    pts = sample_uniform(tri, 100_000, rng)
    assert pts.shape == (100_000, 2) and tri.contains_many(pts).all()
    # centroid of the triangle
    assert pts.mean(axis=0) == pytest.approx([1 / 3, 1 / 3], abs=5e-3)


def test_mc_short_circuits():
    cfg = SamplerConfig(1, 1000)
    zero = mc_buffon(SQUARE, 0.0, cfg)
    assert (zero.value, zero.std_error) == (1.0, 0.0)
    assert mc_buffon(LineSegment((0, 0), (math.pi, 0)), 0.1, cfg).value == 0.0
    assert mc_buffon(Disk(), 2.5, cfg).value == 0.0


def test_mc_disk_within_three_sigma():
    est = mc_buffon(Disk(), 0.5, SamplerConfig(2024, 1_000_000))
    assert abs(est.value - DISK_VALUES[0.5]) < 3 * est.std_error


def test_mc_square_within_three_sigma():
    est = mc_buffon(SQUARE, 0.1, SamplerConfig(2024, 1_000_000))
    assert abs(est.value - SQUARE_VALUES[0.1]) < 3 * est.std_error


def test_mc_reproducible_and_worker_independent():
    a = mc_buffon(SQUARE, 0.3, SamplerConfig(9, 300_000, chunk_size=1 << 16))
    b = mc_buffon(SQUARE, 0.3, SamplerConfig(9, 300_000, chunk_size=1 << 16, workers=4))
    assert a == b
    c = mc_buffon(SQUARE, 0.3, SamplerConfig(10, 300_000, chunk_size=1 << 16))
    assert c.value != a.value


def test_mc_ellipse_runs():
    est = mc_buffon(Ellipse.from_eccentricity(0.6), 0.2, SamplerConfig(3, 50_000))
    assert 0.0 < est.value < 1.0 and est.std_error > 0


@pytest.mark.parametrize("l", [0.5, 1.0, 1.5])
def test_quadrature_disk(l):
    q = quad_buffon(Disk(), l)
    assert q.method is Method.QUADRATURE
    assert q.value == pytest.approx(DISK_VALUES[l], abs=1e-3)
    assert abs(q.value - DISK_VALUES[l]) < 1e-4


def test_quadrature_disk_full_diameter():
    assert quad_buffon(Disk(), 2.0).value == pytest.approx(0.0, abs=1e-3)


@pytest.mark.parametrize("l", SQUARE_VALUES)
def test_quadrature_square(l):
    q = quad_buffon(SQUARE, l)
    assert q.value == pytest.approx(SQUARE_VALUES[l], abs=1e-3)


def test_quadrature_error_indicator_tracks_error():
    q = quad_buffon(SQUARE, 0.2)
    assert abs(q.value - SQUARE_VALUES[0.2]) < 10 * q.std_error + 1e-6


def test_quadrature_rejects_ellipse():
    with pytest.raises(UnsupportedVariant):
        quad_buffon(Ellipse.from_eccentricity(0.3), 0.1)


def test_layer_quadrature_pieces():
    lq = layer_quadrature(SQUARE, 0.1)
    assert lq.inner_area == pytest.approx((HALF_PI - 0.2) ** 2, abs=1e-12)
    assert lq.probability == pytest.approx((lq.inner_area + lq.layer_integral) / lq.area)


@pytest.mark.parametrize("body", [Disk(), SQUARE])
def test_boundary_layer_integral_below_bound(body):
    assert boundary_layer_integral(body, 0.1) <= 2 * math.pi * 0.1 - 0.2 + 1e-6


def test_boundary_layer_integral_disk_value():
    # integral over the annulus 0.9 < rho < 1 of 2 pi rho p(rho)
    from scipy.integrate import quad

    ref, _ = quad(lambda r: 2 * math.pi * r * oracles.disk_pointwise(r, 0.1), 0.9, 1.0, epsabs=1e-13)
    assert boundary_layer_integral(Disk(), 0.1) == pytest.approx(ref, abs=1e-4)


def test_boundary_layer_integral_vanishes():
    assert boundary_layer_integral(SQUARE, 1e-4) < 1e-3


def test_boundary_layer_integral_requires_normalization():
    with pytest.raises(NotNormalized):
        boundary_layer_integral(Polygon.square(1.0), 0.1)
