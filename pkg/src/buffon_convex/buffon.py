"""Buffon probability ``P_X(l)`` by closed form, quadrature and Monte Carlo.

Randomness comes from numpy's Philox counter-based generator.  The key for
every draw is derived with ``SeedSequence(seed, spawn_key=(stream_id, chunk))``,
so a run is a pure function of ``(seed, stream_id, n_samples, chunk_size)``
and the chunks can be evaluated in any order or in parallel.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange, SamplingError, UnsupportedVariant
from .geom.bodies import ConvexBody, Disk, LineSegment, Polygon, needle_endpoint
from .geom.intervals import TWO_PI
from .geom.pointwise import pointwise_probability_many
from .parallel import interior_parallel
from .geom.normalize import require_normalized

MAX_ATTEMPTS_PER_POINT = 10_000


class Method(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class Estimate:
    """A probability estimate.

    For ``MONTE_CARLO`` ``std_error`` is the binomial standard error; for
    ``QUADRATURE`` it holds the grid-halving error indicator; for
    ``CLOSED_FORM`` it is zero.
    """

    value: float
    std_error: float
    n_samples: int
    seed: int
    method: Method

    CSV_HEADER = ("body_id", "l", "method", "value", "std_error", "n", "seed")

    def csv_row(self, body_id: str, l: float) -> tuple:
        return (body_id, l, self.method.value, self.value, self.std_error, self.n_samples, self.seed)

    @classmethod
    def from_counts(cls, hits: int, n: int, seed: int) -> Estimate:
        v = hits / n
        return cls(v, math.sqrt(v * (1.0 - v) / n), n, seed, Method.MONTE_CARLO)


@dataclass(frozen=True)
class SamplerConfig:
    """Monte Carlo settings: points by bounding-box rejection, angles uniform on the circle."""

    seed: int
    n_samples: int
    stream_id: int = 0
    chunk_size: int = 1 << 18
    workers: int = 1

    point_sampling = "rejection_from_bounding_box"
    angle_sampling = "uniform_circle"

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def rng(self, chunk: int) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id, chunk))
        return np.random.Generator(np.random.Philox(ss))


# ---------------------------------------------------------------------------
# closed form


def disk_closed_form(l: float) -> float:
    """Buffon probability of the unit disk, ``0 <= l <= 2``."""
    if not 0.0 <= l <= 2.0:
        raise OutOfRange(f"needle length {l} outside [0, 2] for the unit disk")
    if l == 0.0:
        return 1.0
    h = 0.5 * l
    return (2.0 / math.pi) * (math.acos(h) - h * math.sqrt(max(0.0, 1.0 - h * h)))


def disk_probability(l: float, radius: float = 1.0) -> float:
    """Disk of any radius by scaling; zero once the needle exceeds the diameter."""
    if l < 0:
        raise OutOfRange("needle length must be non-negative")
    t = l / radius
    return 0.0 if t >= 2.0 else disk_closed_form(t)


def square_closed_form(l: float, side: float) -> float:
    """Axis-free formula for a square, valid for ``0 <= l <= side``."""
    if not 0.0 <= l <= side:
        raise OutOfRange("square formula needs 0 <= l <= side")
    return 1.0 - 4.0 * l / (math.pi * side) + l * l / (math.pi * side * side)


# ---------------------------------------------------------------------------
# Monte Carlo


def sample_uniform(body: ConvexBody, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` points uniform in ``body`` by rejection from its axis-aligned bounding box."""
    x0, y0, x1, y1 = body.bbox
    accept = max(body.area / ((x1 - x0) * (y1 - y0)), 1e-3)
    out = []
    got = attempts = 0
    while got < n:
        m = int((n - got) / accept * 1.05) + 16
        pts = np.column_stack([rng.uniform(x0, x1, m), rng.uniform(y0, y1, m)])
        attempts += m
        keep = pts[body.contains_many(pts)]
        out.append(keep)
        got += len(keep)
        if attempts > MAX_ATTEMPTS_PER_POINT * (got + 1):
            raise SamplingError(f"rejection sampling accepted {got} of {attempts} draws")
    return np.concatenate(out)[:n]


def _mc_chunk(body: ConvexBody, l: float, cfg: SamplerConfig, chunk: int, n: int) -> int:
    rng = cfg.rng(chunk)
    x = sample_uniform(body, n, rng)
    theta = rng.uniform(0.0, TWO_PI, n)
    return int(body.contains_many(needle_endpoint(x, l, theta)).sum())


def mc_buffon(body: ConvexBody, l: float, cfg: SamplerConfig) -> Estimate:
    """Binomial Monte Carlo estimate of ``P_X(l)``; reproducible from ``cfg``."""
    if l < 0:
        raise OutOfRange("needle length must be non-negative")
    if l == 0:
        return Estimate(1.0, 0.0, 0, cfg.seed, Method.MONTE_CARLO)
    if isinstance(body, LineSegment) or l > body.diameter:
        return Estimate(0.0, 0.0, 0, cfg.seed, Method.MONTE_CARLO)
    sizes = [min(cfg.chunk_size, cfg.n_samples - lo) for lo in range(0, cfg.n_samples, cfg.chunk_size)]
    jobs = [(body, l, cfg, c, m) for c, m in enumerate(sizes)]
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            hits = sum(pool.map(lambda a: _mc_chunk(*a), jobs))
    else:
        hits = sum(_mc_chunk(*a) for a in jobs)
    return Estimate.from_counts(hits, cfg.n_samples, cfg.seed)


# ---------------------------------------------------------------------------
# quadrature


def _deficit_integral(body: Polygon | Disk, l: float, grid: int, refine: int, inner) -> tuple[float, int]:
    """Midpoint rule for ``int_X (1 - p_X(x, l)) dx`` on a uniform grid over the bounding box.

    ``1 - p`` vanishes on ``X_l`` and is continuous across its boundary, so
    cells inside ``X_l`` are skipped and only cells cut by the boundary of
    ``X`` are subdivided ``refine x refine``.
    """
    x0, y0, x1, y1 = body.bbox
    h = max(x1 - x0, y1 - y0) / grid
    nx = max(1, int(math.ceil((x1 - x0) / h - 1e-9)))
    ny = max(1, int(math.ceil((y1 - y0) / h - 1e-9)))
    xs = x0 + h * np.arange(nx + 1)
    ys = y0 + h * np.arange(ny + 1)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    corners = np.column_stack([gx.ravel(), gy.ravel()])

    def per_cell(mask):
        m = mask.reshape(nx + 1, ny + 1)
        return np.stack([m[:-1, :-1], m[1:, :-1], m[:-1, 1:], m[1:, 1:]]).sum(axis=0)

    in_x = per_cell(body.contains_many(corners))
    in_inner = per_cell(inner.contains_many(corners)) if inner is not None else np.zeros_like(in_x)
    cx = x0 + h * (np.arange(nx) + 0.5)
    cy = y0 + h * (np.arange(ny) + 0.5)
    ccx, ccy = np.meshgrid(cx, cy, indexing="ij")
    centers = np.column_stack([ccx.ravel(), ccy.ravel()])
    in_x = in_x.ravel()
    in_inner = in_inner.ravel()

    full = (in_x == 4) & (in_inner < 4)
    cut = (in_x > 0) & (in_x < 4)
    # a vertex can poke into a cell whose four corners are all outside
    none = in_x == 0
    poke = np.zeros_like(none)
    poke[none] = body.contains_many(centers[none])
    cut |= poke

    total = h * h * float(np.sum(1.0 - pointwise_probability_many(body, centers[full], l)))

    k = np.flatnonzero(cut)
    if len(k):
        off = h * ((np.arange(refine) + 0.5) / refine - 0.5)
        ox, oy = np.meshgrid(off, off, indexing="ij")
        sub = (centers[k][:, None, :] + np.column_stack([ox.ravel(), oy.ravel()])[None, :, :]).reshape(-1, 2)
        sub = sub[body.contains_many(sub)]
        if len(sub):
            total += (h / refine) ** 2 * float(np.sum(1.0 - pointwise_probability_many(body, sub, l)))
    return total, int(full.sum() + refine * refine * len(k))


@dataclass(frozen=True)
class LayerQuadrature:
    area: float
    inner_area: float
    deficit: float
    error: float
    n_points: int

    @property
    def layer_integral(self) -> float:
        """``int_{X minus X_l} p_X(x, l) dx``."""
        return self.area - self.inner_area - self.deficit

    @property
    def probability(self) -> float:
        return min(1.0, max(0.0, (self.area - self.deficit) / self.area))


def layer_quadrature(body: ConvexBody, l: float, grid: int = 400, refine: int = 8) -> LayerQuadrature:
    """Quadrature pieces of ``P_X(l) = (A(X_l) + int_{X minus X_l} p) / A(X)``.

    ``A(X_l)`` is exact from the parallel module; the layer integral is
    computed as ``A(X) - A(X_l) - int_X (1 - p)``.  The error indicator is
    the change when the grid is halved.
    """
    if not isinstance(body, (Polygon, Disk)):
        raise UnsupportedVariant(f"quadrature needs a Polygon or Disk, got {type(body).__name__}")
    if not l > 0:
        raise OutOfRange("quadrature needs l > 0")
    inner = interior_parallel(body, l)
    inner_body = None if inner.is_empty else inner.body
    fine, n_pts = _deficit_integral(body, l, grid, refine, inner_body)
    coarse, _ = _deficit_integral(body, l, max(1, grid // 2), refine, inner_body)
    return LayerQuadrature(body.area, inner.area, fine, abs(fine - coarse), n_pts)


def quad_buffon(body: ConvexBody, l: float, grid: int = 400, refine: int = 8) -> Estimate:
    """Deterministic ``P_X(l)``; ``std_error`` carries the grid-halving indicator."""
    if not isinstance(body, (Polygon, Disk)):
        raise UnsupportedVariant(f"quadrature needs a Polygon or Disk, got {type(body).__name__}")
    if l < 0:
        raise OutOfRange("needle length must be non-negative")
    if l == 0:
        return Estimate(1.0, 0.0, 0, 0, Method.QUADRATURE)
    if l >= body.diameter:
        return Estimate(0.0, 0.0, 0, 0, Method.QUADRATURE)
    q = layer_quadrature(body, l, grid, refine)
    return Estimate(q.probability, q.error / q.area, q.n_points, 0, Method.QUADRATURE)


def boundary_layer_integral(body: ConvexBody, l: float, grid: int = 400, refine: int = 8) -> float:
    """``int_{X minus X_l} p_X(x, l) dx`` for a body of perimeter ``2*pi``."""
    require_normalized(body)
    if l >= body.diameter:
        return 0.0
    return layer_quadrature(body, l, grid, refine).layer_integral
