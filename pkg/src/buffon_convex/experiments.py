"""Batch experiments: disk curve, ellipse sweep, Steiner checks, verification suite.

Every experiment returns a :class:`Table` (or a JSON-ready dict) whose
serialization is a pure function of its inputs and seeds.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Optional, Sequence

import numpy as np

from .bounds import (
    boundary_layer_bound,
    buffon_upper_bound,
    find_epsilon_window,
    g_bound,
    h_prime,
    isoperimetric_deficit,
)
from .buffon import (
    Estimate,
    Method,
    SamplerConfig,
    disk_closed_form,
    layer_quadrature,
    mc_buffon,
    quad_buffon,
    sample_uniform,
)
from .errors import BuffonError, DiskInput, EmptyErosion
from .geom.bodies import (
    DEFAULT_PROXY_N,
    TAU_GEOM,
    ConvexBody,
    Disk,
    Ellipse,
    LineSegment,
    Polygon,
    polygon_proxy,
)
from .geom.normalize import normalize_to_perimeter
from .geom.pointwise import pointwise_probability_many
from .parallel import steiner_report

SCHEMA = "buffon-convex v1"
DEFAULT_ECCENTRICITIES = (0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95)
DEFAULT_LENGTHS = (0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0)
DEFAULT_VERIFY_LENGTHS = (0.2, 0.1, 0.05, 0.02)


def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return str(v)


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# {SCHEMA}\n")
        for k, v in self.metadata.items():
            buf.write(f"# {k}: {json.dumps(v, sort_keys=True)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def records(self) -> list[dict[str, Any]]:
        return [dict(zip(self.columns, r)) for r in self.rows]

    def to_json(self) -> str:
        return json.dumps({"schema": SCHEMA, "metadata": self.metadata, "rows": self.records()},
                          indent=2, sort_keys=True) + "\n"

    def column(self, name: str) -> list:
        k = self.columns.index(name)
        return [r[k] for r in self.rows]


def cell_seed(master_seed: int, *indices: int) -> int:
    """Deterministic 64-bit seed for one cell, hashed from the master seed and cell indices."""
    lo, hi = np.random.SeedSequence(master_seed, spawn_key=tuple(indices)).generate_state(2, np.uint32)
    return int(hi) << 32 | int(lo)


# ---------------------------------------------------------------------------
# disk curve


def run_disk_curve(l_grid: Sequence[float], n_samples: int, seed: int, grid: int = 400) -> Table:
    """Closed form, Monte Carlo and quadrature for the unit disk at each length."""
    disk = Disk()
    table = Table(("l", "closed_form", "mc", "mc_std_error", "quadrature", "quad_error", "n", "seed"),
                  metadata={"body": "unit disk", "n_samples": n_samples, "seed": seed, "grid": grid})
    for i, l in enumerate(l_grid):
        s = cell_seed(seed, i)
        mc = mc_buffon(disk, l, SamplerConfig(s, n_samples))
        q = quad_buffon(disk, l, grid=grid)
        table.rows.append((float(l), disk_closed_form(l), mc.value, mc.std_error, q.value, q.std_error,
                           mc.n_samples, s))
    return table


# ---------------------------------------------------------------------------
# ellipse sweep


@dataclass(frozen=True)
class SweepConfig:
    eccentricities: tuple[float, ...] = DEFAULT_ECCENTRICITIES
    lengths: tuple[float, ...] = DEFAULT_LENGTHS
    n_samples: int = 100_000
    seed: int = 0
    out: Optional[str] = None
    proxy_n: int = DEFAULT_PROXY_N
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "eccentricities", tuple(float(e) for e in self.eccentricities))
        object.__setattr__(self, "lengths", tuple(float(l) for l in self.lengths))
        for name, vals in (("eccentricities", self.eccentricities), ("lengths", self.lengths)):
            if not vals:
                raise ValueError(f"{name} must be nonempty")
            if list(vals) != sorted(vals):
                raise ValueError(f"{name} must be sorted ascending")
        if not all(0.0 <= e < 1.0 for e in self.eccentricities):
            raise ValueError("eccentricities must lie in [0, 1)")
        if not all(l > 0 for l in self.lengths):
            raise ValueError("lengths must be positive")
        if self.n_samples < 1:
            raise ValueError("n_samples must be positive")


def sweep_ellipse(e: float) -> Ellipse:
    """Ellipse of eccentricity ``e`` with ``a = b / sqrt(1 - e^2)``, scaled to perimeter ``2*pi``."""
    return normalize_to_perimeter(Ellipse.from_eccentricity(e))


def run_ellipse_sweep(cfg: SweepConfig) -> Table:
    """Monte Carlo Buffon probability over an (eccentricity, length) grid.

    The ``e = 0`` row is the unit disk and also carries the closed form.
    ``disk_minus_ellipse`` is reported for locating where the disk stops
    dominating; no crossing is asserted.
    """
    ellipses = [sweep_ellipse(e) for e in cfg.eccentricities]
    cells = [(i, j) for i in range(len(cfg.eccentricities)) for j in range(len(cfg.lengths))]

    def run(cell):
        i, j = cell
        s = cell_seed(cfg.seed, i, j)
        return mc_buffon(ellipses[i], cfg.lengths[j], SamplerConfig(s, cfg.n_samples)), s

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(run, cells))
    else:
        results = [run(c) for c in cells]

    table = Table(
        ("e", "l", "a", "b", "area", "mc", "std_error", "n", "seed", "closed_form", "p_disk",
         "disk_minus_ellipse"),
        metadata={
            "eccentricities": list(cfg.eccentricities), "lengths": list(cfg.lengths),
            "n_samples": cfg.n_samples, "master_seed": cfg.seed, "proxy_n": cfg.proxy_n,
            "parameterization": "a = b/sqrt(1-e^2), scaled to perimeter 2*pi",
        },
    )
    for (i, j), (est, s) in zip(cells, results):
        e, l, ell = cfg.eccentricities[i], cfg.lengths[j], ellipses[i]
        p_disk = disk_closed_form(l) if l <= 2.0 else 0.0
        closed = p_disk if e == 0.0 else None
        table.rows.append((e, l, ell.a, ell.b, ell.area, est.value, est.std_error, est.n_samples, s,
                           closed, p_disk, p_disk - est.value))
    return table


def monotone_in_eccentricity(table: Table, l: float, n_sigma: float = 3.0) -> list[dict[str, Any]]:
    """Consecutive-eccentricity steps at length ``l`` where the estimate rises beyond noise."""
    rows = sorted((r for r in table.records() if r["l"] == l), key=lambda r: r["e"])
    bad = []
    for a, b in zip(rows, rows[1:]):
        noise = n_sigma * math.hypot(a["std_error"], b["std_error"])
        if b["mc"] - a["mc"] > noise:
            bad.append({"e_from": a["e"], "e_to": b["e"], "rise": b["mc"] - a["mc"], "noise": noise})
    return bad


# ---------------------------------------------------------------------------
# Steiner check and single-body evaluation


def run_steiner_check(body: ConvexBody, offsets: Iterable[float], body_id: str = "body",
                      proxy_n: int = DEFAULT_PROXY_N) -> Table:
    table = Table(("body_id", "r", "A_X", "A_sw", "L_X", "L_sw", "L_int", "gapA", "gapL"),
                  metadata={"proxy_n": proxy_n})
    for r in offsets:
        try:
            table.rows.append(steiner_report(body, r, body_id, proxy_n).csv_row())
        except EmptyErosion:
            table.rows.append((body_id, r, body.area, None, body.perimeter, None, None, None, None))
    return table


def run_body_eval(body: ConvexBody, lengths: Iterable[float], n_samples: int, seed: int,
                  body_id: str = "body", grid: int = 400) -> Table:
    """Every applicable route for one body: closed form (unit disk), quadrature, Monte Carlo."""
    table = Table(Estimate.CSV_HEADER, metadata={"n_samples": n_samples, "seed": seed, "grid": grid})
    for i, l in enumerate(lengths):
        if isinstance(body, Disk) and body.radius == 1.0 and l <= 2.0:
            table.rows.append(Estimate(disk_closed_form(l), 0.0, 0, 0, Method.CLOSED_FORM).csv_row(body_id, l))
        if isinstance(body, (Polygon, Disk)):
            table.rows.append(quad_buffon(body, l, grid=grid).csv_row(body_id, l))
        est = mc_buffon(body, l, SamplerConfig(cell_seed(seed, i), n_samples))
        table.rows.append(est.csv_row(body_id, l))
    return table


# ---------------------------------------------------------------------------
# verification suite


def default_suite() -> dict[str, ConvexBody]:
    """Perimeter-2*pi test bodies plus the degenerate segment."""
    tri = Polygon([(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0)])
    return {
        "disk": Disk(),
        "square": Polygon.square(math.pi / 2.0),
        "triangle": normalize_to_perimeter(tri),
        "ellipse_e0.6": sweep_ellipse(0.6),
        "12-gon": normalize_to_perimeter(Polygon.regular(12)),
        "segment": LineSegment((0.0, 0.0), (math.pi, 0.0)),
    }


def _check(name: str, passed: bool, **details) -> dict[str, Any]:
    out = {"check": name, "passed": bool(passed)}
    out.update({k: (float(v) if isinstance(v, (np.floating, np.integer)) else v) for k, v in details.items()})
    return out


def layer_points(body: ConvexBody, l: float, n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """``n`` uniform points of ``body`` within distance ``l`` of its boundary, with those distances."""
    pts, dist = [], []
    got = 0
    while got < n:
        x = sample_uniform(body, 4 * n, rng)
        d = body.boundary_distance_many(x)
        keep = d < l
        pts.append(x[keep])
        dist.append(d[keep])
        got += int(keep.sum())
    return np.concatenate(pts)[:n], np.concatenate(dist)[:n]


def pointwise_bound_violations(body: ConvexBody, l: float, n: int, rng: np.random.Generator) -> tuple[int, float]:
    """Count of sampled layer points where ``p_X(x, l) > g(d, l)``, and the worst excess."""
    x, d = layer_points(body, l, n, rng)
    p = pointwise_probability_many(body, x, l)
    g = np.array([g_bound(min(max(t, 0.0), l), l) for t in d])
    excess = p - g
    return int(np.sum(excess > 1e-12)), float(excess.max())


def _body_checks(name: str, body: ConvexBody, l_grid: Sequence[float], n_samples: int, seed: int,
                 proxy_n: int, grid: int, n_points: int) -> list[dict[str, Any]]:
    checks: list[dict[str, Any]] = []
    if isinstance(body, LineSegment):
        for i, l in enumerate(l_grid):
            est = mc_buffon(body, l, SamplerConfig(cell_seed(seed, 99, i), n_samples))
            checks.append(_check("segment_zero", est.value == 0.0 and est.value < disk_closed_form(l),
                                 l=l, value=est.value, p_disk=disk_closed_form(l)))
        return checks

    is_disk = isinstance(body, Disk)
    work = body if isinstance(body, (Polygon, Disk)) else normalize_to_perimeter(polygon_proxy(body, proxy_n))

    deficit = isoperimetric_deficit(body)
    checks.append(_check("isoperimetric", deficit >= -TAU_GEOM, deficit=deficit,
                         slack_zero=abs(deficit) <= 1e-9))
    hp0 = h_prime(work.area, 0.0)
    checks.append(_check("h_prime_sign", (hp0 > 1e-12) == (deficit > 1e-9), h_prime_0=hp0, deficit=deficit))

    rng = np.random.default_rng(cell_seed(seed, 7))
    for l in l_grid:
        try:
            rep = steiner_report(body, l, name, proxy_n)
            scale_a, scale_l = rep.A_X, rep.L_X
            ok = (rep.holds and abs(rep.steiner_area_residual) <= 1e-10 * scale_a
                  and abs(rep.steiner_length_residual) <= 1e-10 * scale_l)
            checks.append(_check("steiner", ok, l=l, gap_area=rep.gap_area, gap_length=rep.gap_length,
                                 area_residual=rep.steiner_area_residual,
                                 length_residual=rep.steiner_length_residual))
        except EmptyErosion:
            checks.append(_check("steiner", True, l=l, note="erosion empty"))

        lq = layer_quadrature(work, l, grid=grid)
        layer = lq.layer_integral
        bound = boundary_layer_bound(l)
        checks.append(_check("pointwise_lemma", layer <= bound + 1e-6, l=l, layer_integral=layer, bound=bound,
                             margin=bound - layer))

        count, worst = pointwise_bound_violations(work, l, n_points, rng)
        checks.append(_check("pointwise_local_bound", count == 0, l=l, points=n_points, violations=count,
                             worst_excess=worst))

        upper = buffon_upper_bound(work, l, proxy_n)
        checks.append(_check("chain_domination", lq.probability <= upper + 1e-6, l=l, quadrature=lq.probability,
                             quad_error=lq.error / lq.area, upper_bound=upper, margin=upper - lq.probability))

    if is_disk:
        try:
            find_epsilon_window(work)
            checks.append(_check("epsilon_window", False, note="disk produced a window"))
        except DiskInput:
            checks.append(_check("epsilon_window", True, note="disk: h'(0) = 0, no window"))
        return checks

    window = find_epsilon_window(work, proxy_n=proxy_n)
    checks.append(_check("epsilon_window", window.nonempty, delta=window.delta, h_prime_0=window.h_prime_0,
                         certified=[{"l": r.l, "margin": r.margin} for r in window.certified]))

    rows = []
    witness = None
    for i, l in enumerate(sorted(l_grid, reverse=True)):
        est = mc_buffon(body, l, SamplerConfig(cell_seed(seed, 11, i), n_samples))
        pd = disk_closed_form(l)
        rows.append({"l": l, "mc": est.value, "std_error": est.std_error, "p_disk": pd})
        if witness is None and est.value + 3.0 * est.std_error < pd:
            witness = l
    checks.append(_check("disk_dominates_mc", witness is not None, witness_l=witness, rows=rows))
    return checks


def run_verification_suite(bodies: Mapping[str, ConvexBody] | None = None,
                           l_grid: Sequence[float] = DEFAULT_VERIFY_LENGTHS,
                           n_samples: int = 1_000_000, seed: int = 0, proxy_n: int = DEFAULT_PROXY_N,
                           grid: int = 400, n_points: int = 1000) -> dict[str, Any]:
    """Run every lemma/theorem check on each body; failures are entries, not exceptions."""
    bodies = default_suite() if bodies is None else bodies
    report: dict[str, Any] = {"schema": SCHEMA, "seed": seed, "n_samples": n_samples, "lengths": list(l_grid),
                              "proxy_n": proxy_n, "bodies": {}}
    for k, (name, body) in enumerate(bodies.items()):
        try:
            checks = _body_checks(name, body, l_grid, n_samples, cell_seed(seed, k), proxy_n, grid, n_points)
        except BuffonError as exc:
            checks = [_check("error", False, error=f"{type(exc).__name__}: {exc}")]
        report["bodies"][name] = {"type": type(body).__name__, "perimeter": body.perimeter,
                                  "area": body.area, "checks": checks,
                                  "passed": all(c["passed"] for c in checks)}
    report["passed"] = all(b["passed"] for b in report["bodies"].values())
    return report
