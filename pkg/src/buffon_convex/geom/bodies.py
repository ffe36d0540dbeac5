"""Convex body representations and their exact predicates.

Every body is an immutable value object.  Vectorized predicates take and
return numpy arrays of shape ``(m, 2)`` / ``(m,)``; the scalar versions are
thin wrappers.  Coordinates are assumed normalized to diameter O(1), so the
containment tolerance ``TAU_GEOM`` is absolute.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np
from scipy import integrate, optimize

from ..errors import DegenerateBody, InvalidBody, NotInside
from .intervals import TWO_PI, canonical_angle

TAU_GEOM = 1e-9
TAU_QUAD = 1e-10
DEFAULT_PROXY_N = 4096

Point = tuple[float, float]


def needle_endpoint(origin, length, angle):
    """Endpoint ``x + l*(cos(theta), sin(theta))``; broadcasts over arrays."""
    origin = np.asarray(origin, dtype=float)
    angle = np.asarray(angle, dtype=float)
    return np.stack(
        [origin[..., 0] + length * np.cos(angle), origin[..., 1] + length * np.sin(angle)],
        axis=-1,
    )


@dataclass(frozen=True)
class Needle:
    origin: Point
    length: float
    angle: float

    @property
    def endpoint(self) -> Point:
        e = needle_endpoint(self.origin, self.length, self.angle)
        return float(e[0]), float(e[1])


def _rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def _as_point(p) -> Point:
    x, y = p
    return float(x), float(y)


def _segment_feet(a: np.ndarray, b: np.ndarray, p: np.ndarray):
    """Closest points on segments ``a[i]b[i]`` to ``p``: (feet, t, dist)."""
    d = b - a
    dd = np.einsum("ij,ij->i", d, d)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(dd > 0, np.einsum("ij,ij->i", p - a, d) / dd, 0.0)
    t = np.clip(t, 0.0, 1.0)
    feet = a + t[:, None] * d
    return feet, t, np.hypot(*(feet - p).T)


def _max_pairwise_distance(pts: np.ndarray, chunk: int = 512) -> float:
    best = 0.0
    for i in range(0, len(pts), chunk):
        d = pts[i:i + chunk, None, :] - pts[None, :, :]
        best = max(best, float(np.sqrt((d**2).sum(-1)).max()))
    return best


def _pick_nearest(feet: np.ndarray, dist: np.ndarray, params: np.ndarray):
    """Minimum distance, ties (within TAU_GEOM) resolved by smallest parameter."""
    dmin = dist.min()
    tied = np.flatnonzero(dist <= dmin + TAU_GEOM)
    k = tied[np.argmin(params[tied])]
    return _as_point(feet[k]), float(dist[k])


# ---------------------------------------------------------------------------
# Polygon


def _collinear_flags(v: np.ndarray) -> np.ndarray:
    prev, nxt = np.roll(v, 1, axis=0), np.roll(v, -1, axis=0)
    e = nxt - prev
    le = np.hypot(e[:, 0], e[:, 1])
    cross = e[:, 0] * (v[:, 1] - prev[:, 1]) - e[:, 1] * (v[:, 0] - prev[:, 0])
    with np.errstate(invalid="ignore", divide="ignore"):
        return (le > 0) & (np.abs(cross) / le <= TAU_GEOM)


def _clean_vertices(vertices: Sequence[Sequence[float]]) -> np.ndarray:
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise InvalidBody("polygon vertices must be a list of (x, y) pairs")
    if not np.all(np.isfinite(v)):
        raise InvalidBody("polygon vertices must be finite")

    # repeated vertices (including a closing duplicate of vertex 0)
    keep = [0]
    for i in range(1, len(v)):
        if np.hypot(*(v[i] - v[keep[-1]])) > TAU_GEOM:
            keep.append(i)
    if len(keep) > 1 and np.hypot(*(v[keep[-1]] - v[0])) <= TAU_GEOM:
        keep.pop()
    v = v[keep]
    if len(v) < 3:
        raise DegenerateBody("polygon needs at least 3 distinct vertices")

    x, y = v[:, 0], v[:, 1]
    signed = 0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))
    if abs(signed) <= TAU_GEOM**2:
        raise DegenerateBody("polygon has zero area")
    if signed < 0:
        v = v[::-1]

    # collapse collinear runs: drop a vertex lying on the line through its neighbours
    changed = bool(np.any(_collinear_flags(v)))
    while changed and len(v) >= 3:
        changed = False
        n = len(v)
        for i in range(n):
            prev, cur, nxt = v[i - 1], v[i], v[(i + 1) % n]
            e = nxt - prev
            le = math.hypot(*e)
            cross = e[0] * (cur[1] - prev[1]) - e[1] * (cur[0] - prev[0])
            along = np.dot(cur - prev, e)
            if le > 0 and abs(cross) / le <= TAU_GEOM and 0 <= along <= le * le:
                v = np.delete(v, i, axis=0)
                changed = True
                break
    if len(v) < 3:
        raise DegenerateBody("polygon vertices are collinear")
    return v


@dataclass(frozen=True, eq=False)
class Polygon:
    """Convex polygon with counterclockwise vertices.

    Clockwise input is reversed; repeated and collinear vertices are dropped.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self):
        v = _clean_vertices(self.vertices)
        e = np.roll(v, -1, axis=0) - v
        cross = e[:, 0] * np.roll(e[:, 1], -1) - e[:, 1] * np.roll(e[:, 0], -1)
        lengths = np.hypot(e[:, 0], e[:, 1])
        # normalize the turn test by edge lengths so the tolerance is a distance
        if np.any(cross / (lengths * np.roll(lengths, -1)).clip(min=1e-300) < -TAU_GEOM):
            raise InvalidBody("polygon is not convex")
        turning = np.arctan2(cross, np.einsum("ij,ij->i", e, np.roll(e, -1, axis=0))).sum()
        if abs(turning - TWO_PI) > 1e-6:
            raise InvalidBody("polygon boundary winds more than once")
        object.__setattr__(self, "vertices", tuple(_as_point(p) for p in v))

    def __eq__(self, other):
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    @classmethod
    def regular(cls, n: int, circumradius: float = 1.0, center: Point = (0.0, 0.0),
                phase: float = 0.0) -> Polygon:
        t = phase + TWO_PI * np.arange(n) / n
        return cls(np.column_stack([center[0] + circumradius * np.cos(t),
                                    center[1] + circumradius * np.sin(t)]))

    @classmethod
    def rectangle(cls, width: float, height: float, origin: Point = (0.0, 0.0)) -> Polygon:
        x0, y0 = origin
        return cls([(x0, y0), (x0 + width, y0), (x0 + width, y0 + height), (x0, y0 + height)])

    @classmethod
    def square(cls, side: float, origin: Point = (0.0, 0.0)) -> Polygon:
        return cls.rectangle(side, side, origin)

    @cached_property
    def xy(self) -> np.ndarray:
        return np.array(self.vertices)

    @cached_property
    def edges(self) -> np.ndarray:
        return np.roll(self.xy, -1, axis=0) - self.xy

    @cached_property
    def edge_lengths(self) -> np.ndarray:
        return np.hypot(self.edges[:, 0], self.edges[:, 1])

    @cached_property
    def outward_normals(self) -> np.ndarray:
        e = self.edges / self.edge_lengths[:, None]
        return np.column_stack([e[:, 1], -e[:, 0]])

    @cached_property
    def offsets(self) -> np.ndarray:
        """Support values ``n_i . v_i``; the body is ``{p : n_i . p <= offsets_i}``."""
        return np.einsum("ij,ij->i", self.outward_normals, self.xy)

    @cached_property
    def area(self) -> float:
        x, y = self.xy[:, 0], self.xy[:, 1]
        x1, y1 = np.roll(x, -1), np.roll(y, -1)
        return 0.5 * math.fsum(x * y1 - x1 * y)

    @cached_property
    def perimeter(self) -> float:
        return math.fsum(self.edge_lengths)

    @cached_property
    def bbox(self) -> tuple[float, float, float, float]:
        lo, hi = self.xy.min(axis=0), self.xy.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    @cached_property
    def diameter(self) -> float:
        return _max_pairwise_distance(self.xy)

    @cached_property
    def _wedges(self):
        c = self.xy.mean(axis=0)
        ang = np.arctan2(self.xy[:, 1] - c[1], self.xy[:, 0] - c[0])
        start = int(np.argmin(ang))
        order = (start + np.arange(len(self))) % len(self)
        unwrapped = ang[start] + np.concatenate(([0.0], np.cumsum(np.mod(np.diff(ang[order]), TWO_PI))))
        return c, unwrapped, order

    def inside_distances(self, pts) -> np.ndarray:
        """Signed distances to every edge line, positive inside: shape ``(m, n)``."""
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return self.offsets[None, :] - pts @ self.outward_normals.T

    def contains(self, p) -> bool:
        return bool(np.all(self.inside_distances(p) >= -TAU_GEOM))

    def contains_many(self, pts) -> np.ndarray:
        # wedge lookup from an interior point: one edge test per query, O(m log n)
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        c, theta, order = self._wedges
        phi = np.arctan2(pts[:, 1] - c[1], pts[:, 0] - c[0])
        phi = theta[0] + np.mod(phi - theta[0], TWO_PI)
        k = order[np.clip(np.searchsorted(theta, phi, side="right") - 1, 0, len(self) - 1)]
        s = self.offsets[k] - np.einsum("ij,ij->i", pts, self.outward_normals[k])
        return s >= -TAU_GEOM

    def boundary_distance_many(self, pts) -> np.ndarray:
        """Distance to the boundary for points inside the polygon."""
        return self.inside_distances(pts).min(axis=1)

    def nearest_boundary_point(self, x) -> tuple[Point, float]:
        p = np.asarray(x, dtype=float)
        if not self.contains(p):
            raise NotInside(f"{tuple(p)} is not inside the polygon")
        a = self.xy
        feet, t, dist = _segment_feet(a, a + self.edges, np.broadcast_to(p, a.shape))
        cum = np.concatenate(([0.0], np.cumsum(self.edge_lengths)[:-1]))
        return _pick_nearest(feet, dist, cum + t * self.edge_lengths)

    def boundary_points(self, n: int) -> np.ndarray:
        """``n`` points equally spaced in arc length from vertex 0."""
        s = np.linspace(0.0, self.perimeter, n, endpoint=False)
        cum = np.concatenate(([0.0], np.cumsum(self.edge_lengths)))
        k = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(self) - 1)
        t = (s - cum[k]) / self.edge_lengths[k]
        return self.xy[k] + t[:, None] * self.edges[k]

    def transformed(self, rotation: float = 0.0, shift: Point = (0.0, 0.0)) -> Polygon:
        return Polygon(self.xy @ _rotation(rotation).T + np.asarray(shift))

    def scaled(self, factor: float) -> Polygon:
        return Polygon(self.xy * factor)


# ---------------------------------------------------------------------------
# Disk


@dataclass(frozen=True)
class Disk:
    center: Point = (0.0, 0.0)
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        if not self.radius > 0:
            raise InvalidBody("disk radius must be positive")
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def area(self) -> float:
        return math.pi * self.radius**2

    @property
    def perimeter(self) -> float:
        return TWO_PI * self.radius

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        cx, cy = self.center
        r = self.radius
        return cx - r, cy - r, cx + r, cy + r

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    def contains_many(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return np.hypot(pts[:, 0] - self.center[0], pts[:, 1] - self.center[1]) <= self.radius + TAU_GEOM

    def contains(self, p) -> bool:
        return bool(self.contains_many(p)[0])

    def boundary_distance_many(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        return self.radius - np.hypot(pts[:, 0] - self.center[0], pts[:, 1] - self.center[1])

    def nearest_boundary_point(self, x) -> tuple[Point, float]:
        if not self.contains(x):
            raise NotInside(f"{tuple(x)} is not inside the disk")
        dx, dy = x[0] - self.center[0], x[1] - self.center[1]
        rho = math.hypot(dx, dy)
        # at the centre every boundary point ties; the smallest parameter is angle 0
        phi = math.atan2(dy, dx) if rho > TAU_GEOM else 0.0
        y = (self.center[0] + self.radius * math.cos(phi), self.center[1] + self.radius * math.sin(phi))
        return y, self.radius - rho

    def boundary_points(self, n: int) -> np.ndarray:
        t = TWO_PI * np.arange(n) / n
        return np.column_stack([self.center[0] + self.radius * np.cos(t),
                                self.center[1] + self.radius * np.sin(t)])

    def to_polygon(self, n: int = DEFAULT_PROXY_N) -> Polygon:
        return Polygon(self.boundary_points(n))

    def transformed(self, rotation: float = 0.0, shift: Point = (0.0, 0.0)) -> Disk:
        c = _rotation(rotation) @ np.asarray(self.center) + np.asarray(shift)
        return Disk(c, self.radius)

    def scaled(self, factor: float) -> Disk:
        return Disk((self.center[0] * factor, self.center[1] * factor), self.radius * factor)


# ---------------------------------------------------------------------------
# Ellipse


@dataclass(frozen=True)
class Ellipse:
    center: Point = (0.0, 0.0)
    a: float = 1.0
    b: float = 1.0
    rotation: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        if not (self.a >= self.b > 0):
            raise InvalidBody("ellipse needs a >= b > 0")
        object.__setattr__(self, "rotation", canonical_angle(float(self.rotation)) % math.pi)

    @classmethod
    def from_eccentricity(cls, e: float, b: float = 1.0, **kw) -> Ellipse:
        if not 0.0 <= e < 1.0:
            raise InvalidBody("eccentricity must lie in [0, 1)")
        return cls(a=b / math.sqrt(1.0 - e * e), b=b, **kw)

    @property
    def eccentricity(self) -> float:
        return math.sqrt(1.0 - (self.b / self.a) ** 2)

    @property
    def area(self) -> float:
        return math.pi * self.a * self.b

    @cached_property
    def perimeter(self) -> float:
        a, b = self.a, self.b
        val, _ = integrate.quad(
            lambda t: math.hypot(a * math.sin(t), b * math.cos(t)),
            0.0, 0.5 * math.pi, epsabs=0.0, epsrel=TAU_QUAD, limit=200,
        )
        return 4.0 * val

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        hx = math.hypot(self.a * c, self.b * s)
        hy = math.hypot(self.a * s, self.b * c)
        cx, cy = self.center
        return cx - hx, cy - hy, cx + hx, cy + hy

    @property
    def diameter(self) -> float:
        return 2.0 * self.a

    def _local(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float)) - np.asarray(self.center)
        return pts @ _rotation(self.rotation)

    def point_at(self, t):
        """Boundary point at parametric angle ``t``."""
        t = np.asarray(t, dtype=float)
        local = np.stack([self.a * np.cos(t), self.b * np.sin(t)], axis=-1)
        return local @ _rotation(self.rotation).T + np.asarray(self.center)

    def contains_many(self, pts) -> np.ndarray:
        q = self._local(pts)
        # level-set value scaled to an approximate distance so TAU_GEOM stays absolute
        f = np.hypot(q[:, 0] / self.a, q[:, 1] / self.b)
        return (f - 1.0) * self.b <= TAU_GEOM

    def contains(self, p) -> bool:
        return bool(self.contains_many(p)[0])

    def nearest_boundary_point(self, x) -> tuple[Point, float]:
        if not self.contains(x):
            raise NotInside(f"{tuple(x)} is not inside the ellipse")
        q = self._local(x)[0]
        a, b = self.a, self.b

        def d2(t):
            return (a * math.cos(t) - q[0]) ** 2 + (b * math.sin(t) - q[1]) ** 2

        grid = TWO_PI * np.arange(2048) / 2048
        vals = (a * np.cos(grid) - q[0]) ** 2 + (b * np.sin(grid) - q[1]) ** 2
        h = grid[1]
        local_min = (vals <= np.roll(vals, 1)) & (vals <= np.roll(vals, -1))
        cands = []
        for k in np.flatnonzero(local_min):
            res = optimize.minimize_scalar(d2, bounds=(grid[k] - h, grid[k] + h), method="bounded",
                                           options={"xatol": 1e-12})
            cands.append((canonical_angle(res.x), math.sqrt(res.fun)))
        dmin = min(d for _, d in cands)
        t = min(t for t, d in cands if d <= dmin + TAU_GEOM)
        y = self.point_at(t)
        return _as_point(y), dmin

    def boundary_distance_many(self, pts) -> np.ndarray:
        return np.array([self.nearest_boundary_point(p)[1] for p in np.atleast_2d(pts)])

    def boundary_points(self, n: int) -> np.ndarray:
        return self.point_at(TWO_PI * np.arange(n) / n)

    def to_polygon(self, n: int = DEFAULT_PROXY_N) -> Polygon:
        """Inscribed polygon through ``n`` equally spaced parametric angles."""
        return Polygon(self.boundary_points(n))

    def transformed(self, rotation: float = 0.0, shift: Point = (0.0, 0.0)) -> Ellipse:
        c = _rotation(rotation) @ np.asarray(self.center) + np.asarray(shift)
        return Ellipse(c, self.a, self.b, self.rotation + rotation)

    def scaled(self, factor: float) -> Ellipse:
        return Ellipse((self.center[0] * factor, self.center[1] * factor),
                       self.a * factor, self.b * factor, self.rotation)


# ---------------------------------------------------------------------------
# Arc polygon


@dataclass(frozen=True)
class LinePiece:
    start: Point
    end: Point

    @property
    def length(self) -> float:
        return math.dist(self.start, self.end)


@dataclass(frozen=True)
class ArcPiece:
    """Counterclockwise arc of ``radius`` about ``center`` from ``start_angle`` through ``sweep``."""

    center: Point
    radius: float
    start_angle: float
    sweep: float

    def point(self, angle: float) -> Point:
        return (self.center[0] + self.radius * math.cos(angle),
                self.center[1] + self.radius * math.sin(angle))

    @property
    def start(self) -> Point:
        return self.point(self.start_angle)

    @property
    def end(self) -> Point:
        return self.point(self.start_angle + self.sweep)

    @property
    def length(self) -> float:
        return self.radius * self.sweep

    @property
    def segment_area(self) -> float:
        """Area between the arc and its chord."""
        return 0.5 * self.radius**2 * (self.sweep - math.sin(self.sweep))


Element = Union[LinePiece, ArcPiece]


def _direction(angle: float) -> np.ndarray:
    return np.array([math.cos(angle), math.sin(angle)])


@dataclass(frozen=True)
class ArcPolygon:
    """Convex region bounded by segments and circular arcs of one common radius.

    Such a region is the dilation of the convex hull of the arc centres by
    the common radius; that identity backs ``contains`` and ``diameter``.
    """

    elements: tuple[Element, ...]
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if self.validate:
            self._validate(els)

    def _validate(self, els: tuple[Element, ...]) -> None:
        arcs = [e for e in els if isinstance(e, ArcPiece)]
        if not arcs:
            raise InvalidBody("arc polygon needs at least one arc")
        r = arcs[0].radius
        if r <= 0 or any(abs(a.radius - r) > TAU_GEOM for a in arcs):
            raise InvalidBody("all arcs must share one positive radius")
        if any(a.sweep < 0 for a in arcs):
            raise InvalidBody("arc sweeps must be counterclockwise")
        n = len(els)
        for i, e in enumerate(els):
            nxt = els[(i + 1) % n]
            if math.dist(e.end, nxt.start) > TAU_GEOM * max(1.0, r):
                raise InvalidBody(f"boundary is not closed between elements {i} and {(i + 1) % n}")
            if isinstance(e, LinePiece) and isinstance(nxt, LinePiece) and e.length > TAU_GEOM:
                raise InvalidBody("consecutive segments make a corner")
            t_out = self._tangent(e, at_end=True)
            t_in = self._tangent(nxt, at_end=False)
            if t_out is not None and t_in is not None and np.hypot(*(t_out - t_in)) > 1e-6:
                raise InvalidBody(f"tangent mismatch between elements {i} and {(i + 1) % n}")
        if abs(math.fsum(a.sweep for a in arcs) - TWO_PI) > 1e-6:
            raise InvalidBody("arc sweeps must total 2*pi for a closed convex boundary")

    @staticmethod
    def _tangent(e: Element, at_end: bool):
        if isinstance(e, ArcPiece):
            ang = e.start_angle + (e.sweep if at_end else 0.0)
            return _direction(ang + 0.5 * math.pi)
        d = np.asarray(e.end) - np.asarray(e.start)
        n = math.hypot(*d)
        return d / n if n > TAU_GEOM else None

    @classmethod
    def offset_of(cls, polygon: Polygon, r: float) -> ArcPolygon:
        """Dilation of a convex polygon by a disk of radius ``r``."""
        if r <= 0:
            raise ValueError("offset radius must be positive")
        v, nrm = polygon.xy, polygon.outward_normals
        n = len(polygon)
        els: list[Element] = []
        for i in range(n):
            j = (i + 1) % n
            els.append(LinePiece(_as_point(v[i] + r * nrm[i]), _as_point(v[j] + r * nrm[i])))
            a0 = math.atan2(nrm[i][1], nrm[i][0])
            a1 = math.atan2(nrm[j][1], nrm[j][0])
            els.append(ArcPiece(_as_point(v[j]), float(r), a0, math.fmod(a1 - a0 + 2 * TWO_PI, TWO_PI)))
        # closed and tangent-continuous by construction
        return cls(tuple(els), validate=False)

    @property
    def radius(self) -> float:
        return next(e.radius for e in self.elements if isinstance(e, ArcPiece))

    @cached_property
    def core(self) -> np.ndarray:
        """Distinct arc centres in boundary order (their hull is the undilated core)."""
        pts: list[Point] = []
        for e in self.elements:
            if isinstance(e, ArcPiece) and (not pts or math.dist(pts[-1], e.center) > TAU_GEOM):
                pts.append(e.center)
        if len(pts) > 1 and math.dist(pts[0], pts[-1]) <= TAU_GEOM:
            pts.pop()
        return np.array(pts)

    @cached_property
    def perimeter(self) -> float:
        return math.fsum(e.length for e in self.elements)

    @cached_property
    def area(self) -> float:
        chord = np.array([e.start for e in self.elements])
        x, y = chord[:, 0], chord[:, 1]
        shoelace = 0.5 * math.fsum(x * np.roll(y, -1) - np.roll(x, -1) * y)
        return shoelace + math.fsum(e.segment_area for e in self.elements if isinstance(e, ArcPiece))

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        lo, hi = self.core.min(axis=0) - self.radius, self.core.max(axis=0) + self.radius
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    @property
    def diameter(self) -> float:
        return _max_pairwise_distance(self.core) + 2.0 * self.radius

    def boundary_distance_many(self, pts) -> np.ndarray:
        """Signed distance to the boundary, positive inside."""
        return self.radius - _distance_to_hull(self.core, pts)

    def contains_many(self, pts) -> np.ndarray:
        return self.boundary_distance_many(pts) >= -TAU_GEOM

    def contains(self, p) -> bool:
        return bool(self.contains_many(p)[0])

    def nearest_boundary_point(self, x) -> tuple[Point, float]:
        if not self.contains(x):
            raise NotInside(f"{tuple(x)} is not inside the arc polygon")
        p = np.asarray(x, dtype=float)
        feet, dists, params = [], [], []
        s = 0.0
        for e in self.elements:
            if isinstance(e, LinePiece):
                f, t, d = _segment_feet(np.array([e.start]), np.array([e.end]), p[None, :])
                feet.append(f[0])
                dists.append(d[0])
                params.append(s + t[0] * e.length)
            else:
                phi = math.atan2(p[1] - e.center[1], p[0] - e.center[0])
                off = math.fmod(phi - e.start_angle + 2 * TWO_PI, TWO_PI)
                if off > e.sweep:
                    # closer of the two endpoints
                    off = e.sweep if off - e.sweep < TWO_PI - off else 0.0
                y = np.array(e.point(e.start_angle + off))
                feet.append(y)
                dists.append(math.dist(y, p))
                params.append(s + e.radius * off)
            s += e.length
        return _pick_nearest(np.array(feet), np.array(dists), np.array(params))

    def boundary_points(self, n: int) -> np.ndarray:
        s = np.linspace(0.0, self.perimeter, n, endpoint=False)
        lengths = np.array([e.length for e in self.elements])
        cum = np.concatenate(([0.0], np.cumsum(lengths)))
        out = np.empty((n, 2))
        k = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(lengths) - 1)
        for i, (ki, si) in enumerate(zip(k, s)):
            e = self.elements[ki]
            u = si - cum[ki]
            if isinstance(e, LinePiece):
                t = u / e.length if e.length > 0 else 0.0
                out[i] = np.asarray(e.start) + t * (np.asarray(e.end) - np.asarray(e.start))
            else:
                out[i] = e.point(e.start_angle + u / e.radius)
        return out

    def to_polygon(self, n: int = DEFAULT_PROXY_N) -> Polygon:
        """Inscribed polygon: segment endpoints plus points along every arc."""
        pts: list[Point] = []
        total_sweep = TWO_PI
        for e in self.elements:
            if isinstance(e, LinePiece):
                pts.append(e.start)
            else:
                k = max(1, int(math.ceil(n * e.sweep / total_sweep)))
                for j in range(k):
                    pts.append(e.point(e.start_angle + e.sweep * j / k))
        return Polygon(pts)

    def transformed(self, rotation: float = 0.0, shift: Point = (0.0, 0.0)) -> ArcPolygon:
        R, t = _rotation(rotation), np.asarray(shift)

        def mv(p):
            return _as_point(R @ np.asarray(p) + t)

        out: list[Element] = []
        for e in self.elements:
            if isinstance(e, LinePiece):
                out.append(LinePiece(mv(e.start), mv(e.end)))
            else:
                out.append(ArcPiece(mv(e.center), e.radius, e.start_angle + rotation, e.sweep))
        return ArcPolygon(tuple(out))

    def scaled(self, factor: float) -> ArcPolygon:
        out: list[Element] = []
        for e in self.elements:
            if isinstance(e, LinePiece):
                out.append(LinePiece((e.start[0] * factor, e.start[1] * factor),
                                     (e.end[0] * factor, e.end[1] * factor)))
            else:
                out.append(ArcPiece((e.center[0] * factor, e.center[1] * factor),
                                    e.radius * factor, e.start_angle, e.sweep))
        return ArcPolygon(tuple(out))


def _distance_to_hull(core: np.ndarray, pts) -> np.ndarray:
    """Distance from each point to the convex hull of ``core`` (0 inside)."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    k = len(core)
    if k == 1:
        return np.hypot(*(pts - core[0]).T)
    a = core
    b = np.roll(core, -1, axis=0)
    d = b - a
    dd = np.einsum("ij,ij->i", d, d)
    rel = pts[:, None, :] - a[None, :, :]
    t = np.clip(np.einsum("mkj,kj->mk", rel, d) / dd[None, :], 0.0, 1.0)
    foot = a[None, :, :] + t[..., None] * d[None, :, :]
    dist = np.hypot(*(pts[:, None, :] - foot).transpose(2, 0, 1)).min(axis=1)
    if k >= 3:
        cross = d[None, :, 0] * rel[..., 1] - d[None, :, 1] * rel[..., 0]
        dist = np.where(np.all(cross >= 0, axis=1), 0.0, dist)
    return dist


# ---------------------------------------------------------------------------
# Degenerate segment


@dataclass(frozen=True)
class LineSegment:
    """A line segment viewed as a degenerate convex set (empty interior)."""

    start: Point
    end: Point

    def __post_init__(self):
        object.__setattr__(self, "start", _as_point(self.start))
        object.__setattr__(self, "end", _as_point(self.end))
        if math.dist(self.start, self.end) <= TAU_GEOM:
            raise InvalidBody("segment endpoints coincide")

    @property
    def area(self) -> float:
        return 0.0

    @property
    def perimeter(self) -> float:
        return 2.0 * math.dist(self.start, self.end)

    @property
    def diameter(self) -> float:
        return math.dist(self.start, self.end)

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        (x0, y0), (x1, y1) = self.start, self.end
        return min(x0, x1), min(y0, y1), max(x0, x1), max(y0, y1)

    def contains_many(self, pts) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        m = len(pts)
        _, _, d = _segment_feet(np.broadcast_to(np.asarray(self.start), (m, 2)),
                                np.broadcast_to(np.asarray(self.end), (m, 2)), pts)
        return d <= TAU_GEOM

    def contains(self, p) -> bool:
        return bool(self.contains_many(p)[0])

    def transformed(self, rotation: float = 0.0, shift: Point = (0.0, 0.0)) -> LineSegment:
        R, t = _rotation(rotation), np.asarray(shift)
        return LineSegment(R @ np.asarray(self.start) + t, R @ np.asarray(self.end) + t)

    def scaled(self, factor: float) -> LineSegment:
        return LineSegment(np.asarray(self.start) * factor, np.asarray(self.end) * factor)


ConvexBody = Union[Polygon, Disk, Ellipse, ArcPolygon, LineSegment]


# ---------------------------------------------------------------------------
# Module-level operations


def contains(body: ConvexBody, p) -> bool:
    """True iff ``p`` lies in the closed body (up to ``TAU_GEOM``)."""
    return body.contains(p)


def perimeter(body: ConvexBody) -> float:
    return body.perimeter


def area(body: ConvexBody) -> float:
    return body.area


def nearest_boundary_point(body: ConvexBody, x) -> tuple[Point, float]:
    """Closest boundary point to an interior ``x`` and its distance.

    Ties go to the smallest arc-length parameter measured from vertex 0
    (angle 0 for disks and ellipses).  Raises ``NotInside`` for outside points.
    """
    if isinstance(body, LineSegment):
        raise DegenerateBody("a segment has no interior")
    return body.nearest_boundary_point(x)


def polygon_proxy(body: ConvexBody, n: int = DEFAULT_PROXY_N) -> Polygon:
    """Polygon standing in for a curved body; polygons are returned unchanged."""
    if isinstance(body, Polygon):
        return body
    if isinstance(body, LineSegment):
        raise DegenerateBody("a segment has no polygon proxy")
    return body.to_polygon(n)
