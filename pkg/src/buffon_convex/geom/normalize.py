"""Uniform rescaling of bodies to perimeter 2*pi."""

from __future__ import annotations

import math

from scipy.optimize import brentq

from ..errors import DegenerateBody, NotNormalized
from .bodies import ConvexBody, Ellipse, LineSegment
from .intervals import TWO_PI

NORMALIZED_TOL = 1e-6


def require_normalized(body: ConvexBody, tol: float = NORMALIZED_TOL) -> None:
    if abs(body.perimeter - TWO_PI) > tol:
        raise NotNormalized(f"perimeter {body.perimeter!r} differs from 2*pi by more than {tol}")


def normalize_to_perimeter(body: ConvexBody, target: float = TWO_PI) -> ConvexBody:
    """Copy of ``body`` scaled about the origin so its perimeter equals ``target``.

    Ellipse perimeters come from quadrature, so the scale is found by a
    bracketed root solve on that perimeter rather than assumed linear.
    """
    if isinstance(body, LineSegment) or body.area <= 0:
        raise DegenerateBody("cannot normalize a body with empty interior")
    guess = target / body.perimeter
    if math.isclose(guess, 1.0, rel_tol=0.0, abs_tol=1e-15):
        return body
    if isinstance(body, Ellipse):
        c = brentq(lambda s: body.scaled(s).perimeter - target, 0.5 * guess, 2.0 * guess,
                   xtol=1e-15, rtol=1e-15)
        return body.scaled(c)
    return body.scaled(guess)
