"""Exact pointwise probability: the normalized measure of admissible directions.

For a convex body ``X`` and ``x`` in ``X`` the needle from ``x`` stays inside
iff its endpoint does, so the admissible directions are
``{theta : x + l*u(theta) in X}``.  Each polygon edge with inside distance
``s < l`` excludes the open arc ``|theta - phi| < arccos(s/l)`` around its
outward normal direction ``phi``; a disk excludes one arc found from the
two-circle intersection.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import NotInside, OutOfRange, UnsupportedVariant
from .bodies import DEFAULT_PROXY_N, ConvexBody, Disk, Polygon, needle_endpoint, polygon_proxy
from .intervals import TWO_PI, AngularIntervalSet

_CHUNK_CELLS = 4_000_000


def _check(body: ConvexBody, x, l: float) -> None:
    if not isinstance(body, (Polygon, Disk)):
        raise UnsupportedVariant(
            f"exact admissible directions are not available for {type(body).__name__}; "
            "use pointwise_probability_proxy or pointwise_probability_mc"
        )
    if l < 0:
        raise OutOfRange("needle length must be non-negative")
    if not body.contains(x):
        raise NotInside(f"{tuple(x)} is not inside the body")


def _disk_cutoff(body: Disk, x, l: float):
    """(rho, psi, k): directions with cos(theta - psi) > k leave the disk."""
    dx, dy = x[0] - body.center[0], x[1] - body.center[1]
    rho = math.hypot(dx, dy)
    if rho == 0:
        return rho, 0.0, None
    return rho, math.atan2(dy, dx), (body.radius**2 - rho * rho - l * l) / (2.0 * l * rho)


def admissible_directions(body: ConvexBody, x, l: float) -> AngularIntervalSet:
    """Directions ``theta`` for which the needle of length ``l`` at ``x`` lies in ``body``."""
    _check(body, x, l)
    if l == 0:
        return AngularIntervalSet.full()
    if isinstance(body, Disk):
        rho, psi, k = _disk_cutoff(body, x, l)
        if k is None:
            return AngularIntervalSet.full() if l <= body.radius else AngularIntervalSet.empty()
        if k >= 1.0:
            return AngularIntervalSet.full()
        if k <= -1.0:
            return AngularIntervalSet.empty()
        return ~AngularIntervalSet.centered(psi, math.acos(k))

    s = body.inside_distances(x)[0]
    excluded = AngularIntervalSet.empty()
    for i in np.flatnonzero(s < l):
        nx, ny = body.outward_normals[i]
        half = math.acos(min(1.0, max(-1.0, s[i] / l)))
        excluded = excluded | AngularIntervalSet.centered(math.atan2(ny, nx), half)
    return ~excluded


def pointwise_probability_exact(body: ConvexBody, x, l: float) -> float:
    """``p_X(x, l)``; equals 1 for ``l == 0`` whatever the body."""
    if l == 0:
        if not body.contains(x):
            raise NotInside(f"{tuple(x)} is not inside the body")
        return 1.0
    return admissible_directions(body, x, l).total_measure / TWO_PI


def _union_measure(starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
    """Row-wise measure of a union of intervals ``[starts, ends]`` (rows independent)."""
    order = np.argsort(starts, axis=1, kind="stable")
    a = np.take_along_axis(starts, order, axis=1)
    b = np.take_along_axis(ends, order, axis=1)
    reach = np.maximum.accumulate(b, axis=1)
    prev = np.concatenate([np.full((len(a), 1), -np.inf), reach[:, :-1]], axis=1)
    return np.clip(b - np.maximum(a, prev), 0.0, None).sum(axis=1)


def _polygon_many(body: Polygon, pts: np.ndarray, l: float) -> np.ndarray:
    n = len(body)
    phi = np.arctan2(body.outward_normals[:, 1], body.outward_normals[:, 0])
    out = np.empty(len(pts))
    step = max(1, _CHUNK_CELLS // n)
    for lo in range(0, len(pts), step):
        s = body.inside_distances(pts[lo:lo + step])
        active = s < l
        k = max(1, int(active.sum(axis=1).max()))
        idx = np.argsort(~active, axis=1, kind="stable")[:, :k]
        act = np.take_along_axis(active, idx, axis=1)
        half = np.where(act, np.arccos(np.clip(np.take_along_axis(s, idx, axis=1) / l, -1.0, 1.0)), 0.0)
        start = np.mod(phi[idx] - half, TWO_PI)
        end = start + 2.0 * half
        wrap = end > TWO_PI
        starts = np.concatenate([start, np.zeros_like(start)], axis=1)
        ends = np.concatenate([np.minimum(end, TWO_PI), np.where(wrap, end - TWO_PI, 0.0)], axis=1)
        excluded = np.minimum(_union_measure(starts, ends), TWO_PI)
        out[lo:lo + step] = (TWO_PI - excluded) / TWO_PI
    return out


def pointwise_probability_many(body: ConvexBody, pts, l: float) -> np.ndarray:
    """Vectorized ``p_X(x, l)`` for points already known to lie in ``body``.

    Same arcs as ``admissible_directions`` but measured with a sort-and-sweep
    over all points at once; no containment check is made.
    """
    if not isinstance(body, (Polygon, Disk)):
        raise UnsupportedVariant(f"no exact pointwise probability for {type(body).__name__}")
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    if l == 0:
        return np.ones(len(pts))
    if isinstance(body, Polygon):
        return _polygon_many(body, pts, l)
    dx = pts[:, 0] - body.center[0]
    dy = pts[:, 1] - body.center[1]
    rho = np.hypot(dx, dy)
    with np.errstate(divide="ignore", invalid="ignore"):
        k = (body.radius**2 - rho * rho - l * l) / (2.0 * l * rho)
    k = np.where(rho > 0, k, np.where(l <= body.radius, 1.0, -1.0))
    return 1.0 - np.arccos(np.clip(k, -1.0, 1.0)) / math.pi


def pointwise_probability_proxy(body: ConvexBody, x, l: float, n: int = DEFAULT_PROXY_N) -> float:
    """Exact pointwise probability of the ``n``-vertex inscribed polygon proxy."""
    return pointwise_probability_exact(polygon_proxy(body, n), x, l)


def pointwise_probability_mc(body: ConvexBody, x, l: float, n_angles: int,
                             rng: np.random.Generator) -> float:
    """Fraction of ``n_angles`` uniform directions whose needle endpoint stays in ``body``."""
    if l < 0:
        raise OutOfRange("needle length must be non-negative")
    if not body.contains(x):
        raise NotInside(f"{tuple(x)} is not inside the body")
    if l == 0:
        return 1.0
    theta = rng.uniform(0.0, TWO_PI, size=n_angles)
    ends = needle_endpoint(np.broadcast_to(np.asarray(x, dtype=float), (n_angles, 2)), l, theta)
    return float(body.contains_many(ends).mean())
