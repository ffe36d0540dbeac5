"""Sets of directions on the circle, stored as disjoint arcs.

Arcs are half-open ``[start, end)`` in radians.  Internally every arc that
wraps past ``2*pi`` is split at zero, so the stored pieces always satisfy
``0 <= start < end <= 2*pi``.  Equality is exact on the canonical pieces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

TWO_PI = 2.0 * math.pi


def canonical_angle(theta: float) -> float:
    """Map ``theta`` into ``[0, 2*pi)``."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    # fmod of a value just below a multiple of 2*pi can round up to 2*pi
    return 0.0 if t >= TWO_PI else t


def _canonicalize(pieces: Iterable[tuple[float, float]]) -> tuple[tuple[float, float], ...]:
    clipped = sorted(
        (max(0.0, float(a)), min(TWO_PI, float(b))) for a, b in pieces
    )
    out: list[list[float]] = []
    for a, b in clipped:
        if b <= a:
            continue
        if out and a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return tuple((a, b) for a, b in out)


@dataclass(frozen=True)
class AngularIntervalSet:
    pieces: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", _canonicalize(self.pieces))

    @classmethod
    def empty(cls) -> AngularIntervalSet:
        return cls(())

    @classmethod
    def full(cls) -> AngularIntervalSet:
        return cls(((0.0, TWO_PI),))

    @classmethod
    def arc(cls, start: float, length: float) -> AngularIntervalSet:
        """Counterclockwise arc of the given angular ``length`` beginning at ``start``."""
        if length <= 0.0:
            return cls.empty()
        if length >= TWO_PI:
            return cls.full()
        a = canonical_angle(start)
        b = a + length
        if b <= TWO_PI:
            return cls(((a, b),))
        return cls(((a, TWO_PI), (0.0, b - TWO_PI)))

    @classmethod
    def centered(cls, center: float, half_width: float) -> AngularIntervalSet:
        return cls.arc(center - half_width, 2.0 * half_width)

    @property
    def total_measure(self) -> float:
        return math.fsum(b - a for a, b in self.pieces)

    @property
    def intervals(self) -> tuple[tuple[float, float], ...]:
        """Arcs with the split at zero undone; a wrapping arc has ``start > end``."""
        p = list(self.pieces)
        if len(p) >= 2 and p[0][0] == 0.0 and p[-1][1] == TWO_PI:
            first = p.pop(0)
            last = p.pop()
            p.append((last[0], first[1]))
        elif p == [(0.0, TWO_PI)]:
            return ((0.0, TWO_PI),)
        return tuple(p)

    def is_empty(self) -> bool:
        return not self.pieces

    def is_full(self) -> bool:
        return self.pieces == ((0.0, TWO_PI),)

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return iter(self.pieces)

    def __contains__(self, theta: float) -> bool:
        t = canonical_angle(theta)
        return any(a <= t < b for a, b in self.pieces)

    def intersection(self, other: AngularIntervalSet) -> AngularIntervalSet:
        out = []
        i = j = 0
        p, q = self.pieces, other.pieces
        while i < len(p) and j < len(q):
            a = max(p[i][0], q[j][0])
            b = min(p[i][1], q[j][1])
            if a < b:
                out.append((a, b))
            if p[i][1] < q[j][1]:
                i += 1
            else:
                j += 1
        return AngularIntervalSet(tuple(out))

    def union(self, other: AngularIntervalSet) -> AngularIntervalSet:
        return AngularIntervalSet(self.pieces + other.pieces)

    def complement(self) -> AngularIntervalSet:
        out = []
        prev = 0.0
        for a, b in self.pieces:
            if a > prev:
                out.append((prev, a))
            prev = b
        if prev < TWO_PI:
            out.append((prev, TWO_PI))
        return AngularIntervalSet(tuple(out))

    def difference(self, other: AngularIntervalSet) -> AngularIntervalSet:
        return self.intersection(other.complement())

    __and__ = intersection
    __or__ = union
    __invert__ = complement
    __sub__ = difference

    def isclose(self, other: AngularIntervalSet, tol: float = 1e-9) -> bool:
        """Symmetric-difference measure below ``tol``."""
        return ((self - other) | (other - self)).total_measure <= tol

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw ``n`` angles uniformly from the set."""
        if self.is_empty():
            raise ValueError("cannot sample from an empty angular set")
        lengths = np.array([b - a for a, b in self.pieces])
        starts = np.array([a for a, _ in self.pieces])
        cum = np.concatenate(([0.0], np.cumsum(lengths)))
        u = rng.uniform(0.0, cum[-1], size=n)
        k = np.clip(np.searchsorted(cum, u, side="right") - 1, 0, len(lengths) - 1)
        return starts[k] + (u - cum[k])
