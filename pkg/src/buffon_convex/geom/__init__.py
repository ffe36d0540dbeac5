"""Convex bodies, angular direction sets and exact pointwise probabilities."""

from .bodies import (
    DEFAULT_PROXY_N,
    TAU_GEOM,
    TAU_QUAD,
    ArcPiece,
    ArcPolygon,
    ConvexBody,
    Disk,
    Ellipse,
    LinePiece,
    LineSegment,
    Needle,
    Polygon,
    area,
    contains,
    nearest_boundary_point,
    needle_endpoint,
    perimeter,
    polygon_proxy,
)
from .intervals import TWO_PI, AngularIntervalSet, canonical_angle
from .pointwise import (
    admissible_directions,
    pointwise_probability_exact,
    pointwise_probability_many,
    pointwise_probability_mc,
    pointwise_probability_proxy,
)
from .normalize import normalize_to_perimeter, require_normalized
from .bodyfile import body_to_dict, dump_body, load_body, parse_body
