import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from buffon_convex.geom import TWO_PI, AngularIntervalSet, canonical_angle

angles = st.floats(-20.0, 20.0, allow_nan=False)
lengths = st.floats(0.0, 7.0, allow_nan=False)
arcs = st.builds(AngularIntervalSet.arc, angles, lengths)
sets = st.lists(arcs, max_size=4).map(
    lambda xs: AngularIntervalSet.empty() if not xs else _union_all(xs)
)


def _union_all(xs):
    out = AngularIntervalSet.empty()
    for x in xs:
        out = out | x
    return out


def _indicator(s: AngularIntervalSet, n: int = 20_000) -> np.ndarray:
    t = (np.arange(n) + 0.5) * TWO_PI / n
    return np.array([ti in s for ti in t])


@pytest.mark.parametrize("angle, expected", [(0.0, 0.0), (-math.pi / 2, 1.5 * math.pi), (TWO_PI, 0.0),
                                             (5 * math.pi, math.pi)])
def test_canonical_angle(angle, expected):
    assert canonical_angle(angle) == pytest.approx(expected, abs=1e-12)


def test_empty_and_full():
    assert AngularIntervalSet.empty().total_measure == 0.0
    assert AngularIntervalSet.full().total_measure == pytest.approx(TWO_PI)
    assert AngularIntervalSet.full().is_full
    assert (~AngularIntervalSet.full()).is_empty


def test_wrapping_arc_is_split_and_rejoined():
    s = AngularIntervalSet.centered(0.0, 0.5)
    assert s.total_measure == pytest.approx(1.0)
    assert 0.0 in s and TWO_PI - 0.25 in s and 0.25 in s
    assert 1.0 not in s
    assert len(s.intervals) == 1


def test_arc_longer_than_circle_is_full():
    assert AngularIntervalSet.arc(1.0, 10.0).is_full


def test_merges_overlaps():
    s = AngularIntervalSet.arc(0.0, 1.0) | AngularIntervalSet.arc(0.5, 1.0)
    assert s.total_measure == pytest.approx(1.5)
    assert len(s.pieces) == 1


@given(sets)
def test_measure_bounds_and_disjoint(s):
    assert 0.0 <= s.total_measure <= TWO_PI + 1e-12
    for (a0, b0), (a1, b1) in zip(s.pieces, s.pieces[1:]):
        assert b0 < a1
    assert all(b > a for a, b in s.pieces)


@given(sets)
def test_complement_measure(s):
    assert s.total_measure + (~s).total_measure == pytest.approx(TWO_PI, abs=1e-9)


@given(sets, sets)
def test_inclusion_exclusion(a, b):
    lhs = (a | b).total_measure + (a & b).total_measure
    assert lhs == pytest.approx(a.total_measure + b.total_measure, abs=1e-9)


@given(sets, sets)
def test_de_morgan(a, b):
    assert (~(a | b)).isclose(~a & ~b, 1e-9)
    assert (~(a & b)).isclose(~a | ~b, 1e-9)


@given(sets, sets)
def test_difference(a, b):
    assert (a - b).isclose(a & ~b, 1e-9)


@settings(max_examples=30)
@given(sets, sets)
def test_pointwise_semantics(a, b):
    ia, ib = _indicator(a), _indicator(b)
    # boundary samples can disagree; allow a handful
    assert np.sum(_indicator(a & b) != (ia & ib)) <= 8
    assert np.sum(_indicator(a | b) != (ia | ib)) <= 8


def test_sample_stays_inside():
    s = AngularIntervalSet.arc(1.0, 0.5) | AngularIntervalSet.arc(4.0, 0.25)
    x = s.sample(np.random.default_rng(3), 2000)
    assert all(t in s for t in x)
    frac = np.mean((x >= 1.0) & (x <= 1.5))
    assert frac == pytest.approx(2 / 3, abs=0.05)
