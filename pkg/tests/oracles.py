"""Reference computations sharing no code with buffon_convex.

Used to derive the frozen constants in the tests and to cross-check the
library on random inputs.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, HalfspaceIntersection


# square of side s: a needle at angle t fits iff its origin avoids a strip of
# width l|cos t| and one of width l|sin t|, so p(t) = (s - l|cos t|)(s - l|sin t|)/s^2


def square_closed(l: float, s: float) -> float:
    return 1.0 - 4.0 * l / (math.pi * s) + l * l / (math.pi * s * s)


def square_theta_integral(l: float, s: float) -> float:
    f = lambda t: (s - l * abs(math.cos(t))) * (s - l * abs(math.sin(t))) / (s * s)
    val, _ = integrate.quad(f, 0.0, 2.0 * math.pi, points=[math.pi / 2, math.pi, 3 * math.pi / 2],
                            epsabs=1e-13, epsrel=1e-12)
    return val / (2.0 * math.pi)


# unit disk: origin at radius rho; the endpoint stays inside iff cos(phi) <= k


def disk_pointwise(rho: float, l: float, radius: float = 1.0) -> float:
    if l == 0:
        return 1.0
    if rho == 0:
        return 1.0 if l <= radius else 0.0
    k = (radius**2 - rho**2 - l**2) / (2.0 * l * rho)
    if k >= 1:
        return 1.0
    if k <= -1:
        return 0.0
    return 1.0 - math.acos(k) / math.pi


def disk_radial_integral(l: float, radius: float = 1.0) -> float:
    kinks = [x for x in (radius - l, l - radius) if 0 < x < radius]
    val, _ = integrate.quad(lambda r: 2.0 * r * disk_pointwise(r, l, radius), 0.0, radius, points=kinks or None,
                            epsabs=1e-13, epsrel=1e-13, limit=200)
    return val / radius**2


# polygons


def shoelace(vertices) -> float:
    v = [tuple(map(float, p)) for p in vertices]
    return 0.5 * sum(v[i - 1][0] * v[i][1] - v[i][0] * v[i - 1][1] for i in range(len(v)))


def perimeter(vertices) -> float:
    v = np.asarray(vertices, float)
    return float(np.sum(np.hypot(*(np.roll(v, -1, axis=0) - v).T)))


def polygon_contains(vertices, pts, tol: float = 0.0) -> np.ndarray:
    """Closed containment for a counterclockwise convex polygon via edge cross products."""
    v = np.asarray(vertices, float)
    p = np.atleast_2d(np.asarray(pts, float))
    ok = np.ones(len(p), bool)
    for a, b in zip(v, np.roll(v, -1, axis=0)):
        e = b - a
        cross = e[0] * (p[:, 1] - a[1]) - e[1] * (p[:, 0] - a[0])
        ok &= cross >= -tol * math.hypot(*e)
    return ok


def brute_force_pointwise(vertices, x, l: float, n: int = 100_000) -> float:
    """Fraction of ``n`` equally spaced directions keeping the endpoint in the polygon."""
    t = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    ends = np.column_stack([x[0] + l * np.cos(t), x[1] + l * np.sin(t)])
    return float(polygon_contains(vertices, ends).mean())


def brute_force_pointwise_disk(x, l: float, radius: float = 1.0, n: int = 100_000) -> float:
    t = (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    ex, ey = x[0] + l * np.cos(t), x[1] + l * np.sin(t)
    return float(np.mean(ex * ex + ey * ey <= radius * radius))


def rejection_area(vertices, n: int, rng: np.random.Generator) -> tuple[float, float]:
    """Bounding-box hit-or-miss area and its standard error."""
    v = np.asarray(vertices, float)
    lo, hi = v.min(axis=0), v.max(axis=0)
    box = float(np.prod(hi - lo))
    pts = lo + (hi - lo) * rng.random((n, 2))
    f = polygon_contains(v, pts).mean()
    return box * f, box * math.sqrt(f * (1 - f) / n)


def random_convex_polygon(rng: np.random.Generator, n_points: int = 12) -> np.ndarray:
    """Counterclockwise hull of random points in the unit square."""
    while True:
        pts = rng.random((n_points, 2))
        hull = ConvexHull(pts)
        v = pts[hull.vertices]
        if len(v) >= 3 and hull.volume > 1e-3:
            return v


def erosion(vertices, r: float) -> np.ndarray | None:
    """Vertices of the polygon shrunk by ``r`` via scipy's half-space intersection."""
    v = np.asarray(vertices, float)
    e = np.roll(v, -1, axis=0) - v
    n = np.column_stack([e[:, 1], -e[:, 0]]) / np.hypot(e[:, 0], e[:, 1])[:, None]
    c = np.sum(n * v, axis=1) - r
    # Chebyshev centre of the shrunk polygon gives a strictly interior point
    res = linprog([0, 0, -1], A_ub=np.column_stack([n, np.ones(len(n))]), b_ub=c,
                  bounds=[(None, None), (None, None), (0, None)], method="highs")
    if res.status != 0 or res.x[2] < 1e-9:
        return None
    hs = HalfspaceIntersection(np.column_stack([n, -c]), res.x[:2])
    pts = hs.intersections
    return pts[ConvexHull(pts).vertices]


def hull_area_perimeter(pts) -> tuple[float, float]:
    h = ConvexHull(np.asarray(pts, float))
    return float(h.volume), float(h.area)


def regular_polygon(n: int, circumradius: float = 1.0) -> np.ndarray:
    t = 2.0 * math.pi * np.arange(n) / n
    return circumradius * np.column_stack([np.cos(t), np.sin(t)])


def ellipse_perimeter(a: float, b: float) -> float:
    e2 = 1.0 - (b / a) ** 2
    val, _ = integrate.quad(lambda t: math.sqrt(1.0 - e2 * math.sin(t) ** 2), 0.0, math.pi / 2,
                            epsabs=1e-14, epsrel=1e-12)
    return 4.0 * a * val
