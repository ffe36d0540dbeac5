"""Interior and exterior parallel bodies with Steiner bookkeeping.

The interior parallel ``X_r`` is the erosion ``{x : closed B_r(x) in X}``;
for closed convex ``X`` it coincides with the Minkowski difference written
through complements.  The exterior parallel ``X^r`` is the dilation
``X + closed B_r(0)``.  Curved bodies other than disks are replaced by an
inscribed polygon proxy whose resolution is carried in the result.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.optimize import linprog

from .errors import DegenerateBody, EmptyErosion, InvalidBody, OutOfRange
from .geom.bodies import (
    DEFAULT_PROXY_N,
    TAU_GEOM,
    ArcPiece,
    ArcPolygon,
    ConvexBody,
    Disk,
    Ellipse,
    LinePiece,
    LineSegment,
    Polygon,
    polygon_proxy,
)


class Provenance(enum.Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"
    SANDWICH = "sandwich"


@dataclass(frozen=True)
class ParallelBody:
    body: ConvexBody
    offset: float
    provenance: Provenance
    proxy_n: Optional[int] = None

    is_empty = False

    @property
    def area(self) -> float:
        return self.body.area

    @property
    def perimeter(self) -> float:
        return self.body.perimeter


@dataclass(frozen=True)
class Empty:
    """An erosion that vanished (or collapsed to a segment or point)."""

    offset: float
    provenance: Provenance
    proxy_n: Optional[int] = None

    is_empty = True
    area = 0.0
    perimeter = 0.0

    def __bool__(self) -> bool:
        return False


ParallelResult = Union[ParallelBody, Empty]


def _check_offset(r: float) -> None:
    if not r > 0:
        raise OutOfRange("offset must be positive")


def _proxy(body: ConvexBody, proxy_n: int) -> tuple[Polygon, Optional[int]]:
    if isinstance(body, Polygon):
        return body, None
    return polygon_proxy(body, proxy_n), proxy_n


def _clip(poly: np.ndarray, normal: np.ndarray, bound: float) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex polygon to ``normal . p <= bound``."""
    if len(poly) == 0:
        return poly
    val = poly @ normal - bound
    inside = val <= 0.0
    if inside.all():
        return poly
    if not inside.any():
        return poly[:0]
    nxt = np.roll(poly, -1, axis=0)
    crossing = inside != np.roll(inside, -1)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(crossing, val / (val - np.roll(val, -1)), 0.0)
    hits = poly + t[:, None] * (nxt - poly)
    # per edge: its start vertex if kept, then the crossing point if any
    return np.stack([poly, hits], axis=1)[np.stack([inside, crossing], axis=1)]


def _sweep_halfplanes(normals: np.ndarray, bounds: np.ndarray) -> Optional[np.ndarray]:
    """Deque half-plane intersection for constraints already sorted by normal angle.

    Returns ``None`` when two surviving neighbours are parallel, in which case
    the caller falls back to clipping.
    """
    nx, ny, c = normals[:, 0].tolist(), normals[:, 1].tolist(), bounds.tolist()

    def meet(i, j):
        det = nx[i] * ny[j] - ny[i] * nx[j]
        if abs(det) < 1e-14:
            return None
        return ((c[i] * ny[j] - c[j] * ny[i]) / det, (nx[i] * c[j] - nx[j] * c[i]) / det)

    def outside(k, p):
        return nx[k] * p[0] + ny[k] * p[1] > c[k] + 1e-13

    dq: deque[int] = deque()
    for k in range(len(c)):
        while len(dq) >= 2:
            p = meet(dq[-2], dq[-1])
            if p is None:
                return None
            if not outside(k, p):
                break
            dq.pop()
        while len(dq) >= 2:
            p = meet(dq[0], dq[1])
            if p is None:
                return None
            if not outside(k, p):
                break
            dq.popleft()
        dq.append(k)
    while len(dq) >= 3:
        p = meet(dq[-2], dq[-1])
        if p is None:
            return None
        if not outside(dq[0], p):
            break
        dq.pop()
    while len(dq) >= 3:
        p = meet(dq[0], dq[1])
        if p is None:
            return None
        if not outside(dq[-1], p):
            break
        dq.popleft()
    if len(dq) < 3:
        return None
    idx = list(dq)
    pts = [meet(idx[i - 1], idx[i]) for i in range(len(idx))]
    if any(p is None for p in pts):
        return None
    return np.array(pts)


def _violates(pts: np.ndarray, normals: np.ndarray, bounds: np.ndarray) -> bool:
    """Whether the convex polygon ``pts`` (CCW) leaves any half-plane ``n . p <= b``.

    Each constraint is checked at the support vertex found by normal angle,
    plus its two neighbours for rounding slack.
    """
    k = len(pts)
    e = np.roll(pts, -1, axis=0) - pts
    alpha = np.arctan2(-e[:, 0], e[:, 1])
    alpha = alpha[0] + np.concatenate(([0.0], np.cumsum(np.mod(np.diff(alpha), 2 * math.pi))))
    beta = np.arctan2(normals[:, 1], normals[:, 0])
    beta = alpha[0] + np.mod(beta - alpha[0], 2 * math.pi)
    j = np.searchsorted(alpha, beta, side="right")
    worst = np.full(len(normals), -np.inf)
    for d in (-1, 0, 1):
        v = pts[(j + d) % k]
        worst = np.maximum(worst, np.einsum("ij,ij->i", v, normals) - bounds)
    return bool(np.any(worst > 1e-9))


def erode_polygon(polygon: Polygon, r: float) -> Optional[Polygon]:
    """Intersection of the inward-shifted edge half-planes, or ``None`` if empty.

    The half-planes arrive sorted by angle (the polygon is convex), so a
    single deque sweep intersects them; its output is verified against every
    constraint and, if that fails, the polygon is clipped edge by edge
    instead.  Results with fewer than three distinct vertices or area below
    ``TAU_GEOM**2`` count as empty.
    """
    if r >= inradius(polygon) - TAU_GEOM:
        return None
    normals, bounds = polygon.outward_normals, polygon.offsets - r
    cur = _sweep_halfplanes(normals, bounds)
    if cur is None or _violates(cur, normals, bounds):
        cur = polygon.xy.copy()
        for nrm, off in zip(normals, bounds):
            cur = _clip(cur, nrm, off)
            if len(cur) == 0:
                return None
    if len(cur) < 3:
        return None
    try:
        out = Polygon(cur)
    except (DegenerateBody, InvalidBody):
        return None
    return out if out.area >= TAU_GEOM**2 else None


def interior_parallel(body: ConvexBody, r: float, proxy_n: int = DEFAULT_PROXY_N) -> ParallelResult:
    """``X_r``; returns ``Empty`` when the erosion vanishes."""
    _check_offset(r)
    if isinstance(body, LineSegment):
        return Empty(r, Provenance.INTERIOR)
    if isinstance(body, Disk):
        if r >= body.radius - TAU_GEOM:
            return Empty(r, Provenance.INTERIOR)
        return ParallelBody(Disk(body.center, body.radius - r), r, Provenance.INTERIOR)
    poly, n = _proxy(body, proxy_n)
    eroded = erode_polygon(poly, r)
    if eroded is None:
        return Empty(r, Provenance.INTERIOR, n)
    return ParallelBody(eroded, r, Provenance.INTERIOR, n)


def _dilate_arc_polygon(body: ArcPolygon, r: float) -> ArcPolygon:
    els = body.elements
    grown = {i: ArcPiece(e.center, e.radius + r, e.start_angle, e.sweep)
             for i, e in enumerate(els) if isinstance(e, ArcPiece)}
    n = len(els)
    out = []
    for i, e in enumerate(els):
        if i in grown:
            out.append(grown[i])
            continue
        prev = next(grown[(i - k) % n] for k in range(1, n) if (i - k) % n in grown)
        nxt = next(grown[(i + k) % n] for k in range(1, n) if (i + k) % n in grown)
        out.append(LinePiece(prev.end, nxt.start))
    return ArcPolygon(tuple(out), validate=False)


def exterior_parallel(body: ConvexBody, r: float, proxy_n: int = DEFAULT_PROXY_N) -> ParallelBody:
    """``X^r``: an ``ArcPolygon`` for polygons, a larger ``Disk`` for disks."""
    _check_offset(r)
    if isinstance(body, LineSegment):
        raise DegenerateBody("exterior parallels of segments are not supported")
    if isinstance(body, Disk):
        return ParallelBody(Disk(body.center, body.radius + r), r, Provenance.EXTERIOR)
    if isinstance(body, ArcPolygon):
        return ParallelBody(_dilate_arc_polygon(body, r), r, Provenance.EXTERIOR)
    poly, n = _proxy(body, proxy_n)
    return ParallelBody(ArcPolygon.offset_of(poly, r), r, Provenance.EXTERIOR, n)


def sandwich(body: ConvexBody, r: float, proxy_n: int = DEFAULT_PROXY_N) -> ParallelResult:
    """``(X_r)^r``, a convex subset of ``X``."""
    inner = interior_parallel(body, r, proxy_n)
    if inner.is_empty:
        return Empty(r, Provenance.SANDWICH, inner.proxy_n)
    outer = exterior_parallel(inner.body, r)
    return ParallelBody(outer.body, r, Provenance.SANDWICH, inner.proxy_n)


def inradius(body: ConvexBody) -> float:
    """Radius of the largest inscribed disk (Chebyshev radius for polygons)."""
    if isinstance(body, Disk):
        return body.radius
    if isinstance(body, Ellipse):
        return body.b
    if isinstance(body, LineSegment):
        return 0.0
    if isinstance(body, ArcPolygon):
        return body.radius + inradius(Polygon(body.core)) if len(body.core) >= 3 else body.radius
    # maximize t subject to n_i . c + t <= offsets_i
    nrm = body.outward_normals
    res = linprog(c=[0.0, 0.0, -1.0], A_ub=np.column_stack([nrm, np.ones(len(nrm))]),
                  b_ub=body.offsets, bounds=[(None, None), (None, None), (0, None)], method="highs")
    return float(res.x[2])


@dataclass(frozen=True)
class SteinerReport:
    """Both inequalities of the sandwich lemma at one offset, with slacks.

    ``steiner_area_residual`` and ``steiner_length_residual`` compare the
    sandwich measured directly against Steiner's formulae applied to ``X_r``.
    """

    body_id: str
    r: float
    A_X: float
    A_sandwich: float
    L_X: float
    L_sandwich: float
    L_interior: float
    A_interior: float
    proxy_n: Optional[int] = None

    @property
    def gap_area(self) -> float:
        return self.A_X - self.A_sandwich

    @property
    def gap_length(self) -> float:
        return self.L_X - self.L_sandwich

    @property
    def steiner_area_residual(self) -> float:
        return self.A_sandwich - (math.pi * self.r**2 + self.L_interior * self.r + self.A_interior)

    @property
    def steiner_length_residual(self) -> float:
        return self.L_sandwich - (2.0 * math.pi * self.r + self.L_interior)

    @property
    def holds(self) -> bool:
        return self.gap_area >= -TAU_GEOM and self.gap_length >= -TAU_GEOM

    CSV_HEADER = ("body_id", "r", "A_X", "A_sw", "L_X", "L_sw", "L_int", "gapA", "gapL")

    def csv_row(self) -> tuple:
        return (self.body_id, self.r, self.A_X, self.A_sandwich, self.L_X, self.L_sandwich,
                self.L_interior, self.gap_area, self.gap_length)


def steiner_report(body: ConvexBody, r: float, body_id: str = "",
                   proxy_n: int = DEFAULT_PROXY_N) -> SteinerReport:
    inner = interior_parallel(body, r, proxy_n)
    if inner.is_empty:
        raise EmptyErosion(f"interior parallel by {r} is empty")
    sw = exterior_parallel(inner.body, r)
    # a proxied body is compared with its own proxy so the inequalities are exact
    ref = body if inner.proxy_n is None else polygon_proxy(body, proxy_n)
    return SteinerReport(
        body_id=body_id, r=r,
        A_X=ref.area, A_sandwich=sw.area,
        L_X=ref.perimeter, L_sandwich=sw.perimeter,
        L_interior=inner.perimeter, A_interior=inner.area,
        proxy_n=inner.proxy_n,
    )
