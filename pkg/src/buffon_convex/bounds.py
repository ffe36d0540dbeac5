"""Evaluated inequality chain comparing ``P_X(l)`` with the unit disk.

For a body of perimeter ``2*pi`` and area ``A``::

    P_X(l) <= (A + pi l^2 - 2l + l (2 pi - L_sw(l))) / A,     L_sw = perimeter of (X_l)^l
    P_D(l) - P_X(l) >= h(l) + l (L_sw(l) - 2 pi) / A
    h(l) = P_D(l) - (A + pi l^2 - 2l) / A,   h'(0) = 2/A - 2/pi

Curved bodies other than disks enter through their inscribed polygon
proxy, rescaled to perimeter ``2*pi``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from .buffon import disk_closed_form, quad_buffon
from .errors import BuffonError, DiskInput, EmptyErosion, OutOfRange
from .geom.bodies import DEFAULT_PROXY_N, TAU_GEOM, ConvexBody, Disk, Polygon, polygon_proxy
from .geom.intervals import TWO_PI
from .geom.normalize import normalize_to_perimeter, require_normalized
from .parallel import interior_parallel, sandwich


class BoundViolation(BuffonError, AssertionError):
    """A numerically evaluated inequality of the chain failed."""


def g_bound(t: float, l: float) -> float:
    """Upper bound on ``p_X`` at distance ``t`` from the boundary, ``0 <= t <= l``."""
    if not (l > 0 and 0.0 <= t <= l):
        raise OutOfRange("g_bound needs l > 0 and 0 <= t <= l")
    return (math.pi + 2.0 * math.asin(t / l)) / TWO_PI


def boundary_layer_bound(l: float) -> float:
    """``2 pi l - 2 l``: bound on the layer integral for perimeter ``2*pi``."""
    if l < 0:
        raise OutOfRange("l must be non-negative")
    return TWO_PI * l - 2.0 * l


def h_function(area: float, l: float) -> float:
    if not area > 0 or not abs(l) < 2:
        raise OutOfRange("h needs A > 0 and |l| < 2")
    h = 0.5 * l
    disk = (2.0 / math.pi) * (math.acos(h) - h * math.sqrt(1.0 - h * h))
    return disk - (area + math.pi * l * l - 2.0 * l) / area


def h_prime(area: float, l: float) -> float:
    if not area > 0 or not abs(l) < 2:
        raise OutOfRange("h' needs A > 0 and |l| < 2")
    return (2.0 - 2.0 * l * math.pi) / area - math.sqrt(4.0 - l * l) / math.pi


def isoperimetric_deficit(body: ConvexBody) -> float:
    """``perimeter^2 - 4 pi area``; zero only for disks."""
    return body.perimeter**2 - 4.0 * math.pi * body.area


def _working_body(body: ConvexBody, proxy_n: int) -> ConvexBody:
    require_normalized(body)
    if isinstance(body, (Polygon, Disk)):
        return body
    return normalize_to_perimeter(polygon_proxy(body, proxy_n))


def _sandwich_perimeter(body: ConvexBody, l: float) -> float:
    sw = sandwich(body, l)
    if sw.is_empty:
        raise EmptyErosion(f"interior parallel by {l} is empty")
    return sw.perimeter


def area_upper_bound(body: ConvexBody, l: float, proxy_n: int = DEFAULT_PROXY_N) -> float:
    """``A(X) + pi l^2 - L_sw(l) l``, checked against the exact ``A(X_l)``."""
    inner = interior_parallel(body, l, proxy_n)
    if inner.is_empty:
        raise EmptyErosion(f"interior parallel by {l} is empty")
    ref = body if inner.proxy_n is None else polygon_proxy(body, proxy_n)
    bound = ref.area + math.pi * l * l - (TWO_PI * l + inner.perimeter) * l
    if inner.area > bound + TAU_GEOM:
        raise BoundViolation(f"A(X_l) = {inner.area} exceeds its bound {bound}")
    return bound


def buffon_upper_bound(body: ConvexBody, l: float, proxy_n: int = DEFAULT_PROXY_N,
                       verify: bool = False, tol: float = 1e-6) -> float:
    """Composite upper bound on ``P_X(l)`` for a body of perimeter ``2*pi``.

    With ``verify=True`` the bound is also compared with ``quad_buffon`` and
    ``BoundViolation`` is raised if it fails to dominate within ``tol``.
    """
    work = _working_body(body, proxy_n)
    A = work.area
    L_sw = _sandwich_perimeter(work, l)
    bound = (A + math.pi * l * l - 2.0 * l + l * (TWO_PI - L_sw)) / A
    if verify:
        q = quad_buffon(work, l)
        if q.value > bound + tol + q.std_error:
            raise BoundViolation(f"quadrature {q.value} exceeds upper bound {bound}")
    return bound


@dataclass(frozen=True)
class BoundReport:
    body_id: str
    l: float
    A_X: float
    L_sandwich: float
    area_bound: float
    p_upper: float
    p_disk: float
    h_l: float
    h_prime_0: float
    margin: float

    FIELDS = ("body_id", "l", "A_X", "L_sandwich", "area_bound", "p_upper", "p_disk",
              "h_l", "h_prime_0", "margin")

    def as_dict(self) -> dict:
        return asdict(self)

    def csv_row(self) -> tuple:
        return tuple(getattr(self, f) for f in self.FIELDS)


def bound_report(body: ConvexBody, l: float, body_id: str = "",
                 proxy_n: int = DEFAULT_PROXY_N) -> BoundReport:
    work = _working_body(body, proxy_n)
    A = work.area
    L_sw = _sandwich_perimeter(work, l)
    p_upper = (A + math.pi * l * l - 2.0 * l + l * (TWO_PI - L_sw)) / A
    p_disk = disk_closed_form(l)
    return BoundReport(
        body_id=body_id, l=l, A_X=A, L_sandwich=L_sw,
        area_bound=A + math.pi * l * l - L_sw * l,
        p_upper=p_upper, p_disk=p_disk,
        h_l=h_function(A, l), h_prime_0=h_prime(A, 0.0),
        margin=p_disk - p_upper,
    )


@dataclass(frozen=True)
class WindowRow:
    l: float
    condition_value: float
    condition_ok: bool
    margin: float
    certified: bool


@dataclass(frozen=True)
class EpsilonWindow:
    """Grid evidence for the small-``l`` comparison with the disk.

    ``delta`` is the largest grid value such that every grid point at or
    below it satisfies ``|L_sw(l) - 2 pi| / A < h'(0) / 2``.  A row is
    certified when that holds and ``h(l) - l h'(0)/2 > 0``, which bounds
    ``P_D(l) - P_X(l)`` from below by a positive number.
    """

    h_prime_0: float
    delta: Optional[float]
    rows: tuple[WindowRow, ...] = field(default_factory=tuple)

    @property
    def certified(self) -> tuple[WindowRow, ...]:
        return tuple(r for r in self.rows if r.certified)

    @property
    def nonempty(self) -> bool:
        return self.delta is not None and bool(self.certified)


def dyadic_grid(top: float = 0.2, levels: int = 16) -> list[float]:
    return [top * 2.0**-k for k in range(levels)]


def find_epsilon_window(body: ConvexBody, l_grid: Sequence[float] | None = None,
                        proxy_n: int = DEFAULT_PROXY_N) -> EpsilonWindow:
    work = _working_body(body, proxy_n)
    A = work.area
    hp0 = h_prime(A, 0.0)
    if isinstance(work, Disk) or hp0 <= TAU_GEOM:
        raise DiskInput("h'(0) = 0 for a disk; there is no comparison window")
    grid = sorted(dyadic_grid() if l_grid is None else l_grid)
    if not grid or grid[0] <= 0:
        raise OutOfRange("grid values must be positive")

    evaluated = []
    for l in grid:
        try:
            cond = abs(_sandwich_perimeter(work, l) - TWO_PI) / A
        except EmptyErosion:
            cond = math.inf
        evaluated.append((l, cond, cond < 0.5 * hp0, h_function(A, l) - 0.5 * l * hp0))

    delta = None
    for l, _, ok, _ in evaluated:
        if not ok:
            break
        delta = l
    rows = tuple(
        WindowRow(l, cond, ok, margin, delta is not None and l <= delta and ok and margin > 0)
        for l, cond, ok, margin in reversed(evaluated)
    )
    return EpsilonWindow(hp0, delta, rows)
