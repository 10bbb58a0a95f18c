"""Deterministic shadow generators: star polygons, torus-style shadows, and
seeded random polygons.

All generators validate what they promise: crossing counts are recomputed,
not assumed, and any general-position failure triggers a deterministic
retry with jittered integer radii before giving up.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Optional

from .diagram import Shadow
from .errors import ExhaustedRetriesError, GeneralPositionViolation, ValidationError
from .geometry import PlanePoint

_BASE_RADIUS = 10_000
_MAX_ATTEMPTS = 60


def _circle_point(radius: int, angle: float) -> PlanePoint:
    return PlanePoint(round(radius * math.cos(angle)), round(radius * math.sin(angle)))


def _star_vertices(n: int, radius: int) -> list[PlanePoint]:
    # Visit every second corner of the regular n-gon: the {n/2} star polygon.
    return [_circle_point(radius, 2 * math.pi * ((2 * k) % n) / n) for k in range(n)]


def gen_star(n: int) -> Shadow:
    """The {n/2} star polygon on integer approximations of circle points.

    ``n`` must be odd and at least 5; the result has exactly ``n`` edges and
    ``n`` crossings.
    """
    if n % 2 == 0 or n < 5:
        raise ValidationError(f"star generator needs odd n >= 5, got {n}")
    for attempt in range(_MAX_ATTEMPTS):
        radius = _BASE_RADIUS + attempt
        try:
            shadow = Shadow.from_vertices(_star_vertices(n, radius))
        except GeneralPositionViolation:
            continue
        if len(shadow.crossings) == n:
            return shadow
    raise ExhaustedRetriesError(f"no valid star polygon found for n={n}")


def _subdivided_star_vertices(n: int, subdiv: int, radius: int) -> list[PlanePoint]:
    corners = _star_vertices(n, radius)
    bulge = Fraction(101, 100)  # push interior points 1/100 of the radius outward
    vertices: list[PlanePoint] = []
    for k in range(n):
        a = corners[k]
        b = corners[(k + 1) % n]
        vertices.append(a)
        for j in range(1, subdiv):
            t = Fraction(j, subdiv)
            point = a + (b - a).scaled(t)
            vertices.append(point.scaled(bulge))
    return vertices


def _woven_vertices(
    n: int, subdiv: int, radius: int, amplitude: int, drift: int
) -> list[PlanePoint]:
    # Two turns around the center while the radius oscillates n times; the
    # planar picture of the (n,2) torus knot.  Used where the star polygon
    # degenerates (n=3 gives a plain triangle).  The per-step radial drift
    # keeps the second turn off the first (even subdiv revisits the same
    # angles).
    m = n * subdiv
    points = []
    for j in range(m):
        angle = 4 * math.pi * j / m
        r = radius + amplitude * math.cos(2 * math.pi * j / subdiv) + j * drift
        points.append(_circle_point(round(r), angle))
    return points


# Hexagon for the (3,2) pattern.  Deliberately irregular: on symmetric
# samplings of the pattern the height system degenerates and no lift of the
# hexagon is knotted, while this shape admits every resolution, including
# both trefoils.
_TREFOIL_HEXAGON = (
    (9853, 525),
    (-2792, 6708),
    (-5493, -9620),
    (6423, -934),
    (-4923, 9351),
    (-2601, -6184),
)


def _same_combinatorics(shadow: Shadow, n: int, subdiv: int) -> bool:
    """n crossings, each between pieces of distinct original star edges."""
    if len(shadow.crossings) != n:
        return False
    pairs = set()
    for crossing in shadow.crossings:
        pair = (crossing.edge_a // subdiv, crossing.edge_b // subdiv)
        if pair[0] == pair[1]:
            return False
        pairs.add(pair)
    return len(pairs) == n


def gen_torus(n: int, subdiv: int) -> Shadow:
    """Torus-style shadow: the (n,2) pattern with ``n * subdiv`` edges.

    For n >= 5 this is the star polygon with each edge split into
    ``subdiv`` pieces and the interior split points displaced radially
    outward by 1/100 of the radius; n = 3 (where the star polygon is just a
    triangle) uses a fixed irregular hexagon for subdiv = 2 and a woven
    sampling of the same pattern otherwise.  All variants are checked to
    still have exactly n crossings in the star's combinatorics.
    """
    if n % 2 == 0 or n < 3:
        raise ValidationError(f"torus generator needs odd n >= 3, got {n}")
    if subdiv < 2:
        raise ValidationError(f"torus generator needs subdiv >= 2, got {subdiv}")
    if n == 3 and subdiv == 2:
        shadow = Shadow.from_vertices(
            [PlanePoint(x, y) for x, y in _TREFOIL_HEXAGON]
        )
        assert _same_combinatorics(shadow, 3, 2)
        return shadow
    for attempt in range(_MAX_ATTEMPTS):
        radius = _BASE_RADIUS + attempt
        if n >= 5:
            vertices = _subdivided_star_vertices(n, subdiv, radius)
        else:
            vertices = _woven_vertices(
                n, subdiv, radius, radius // 2 + attempt, 40 + attempt
            )
        try:
            shadow = Shadow.from_vertices(vertices)
        except GeneralPositionViolation:
            continue
        if _same_combinatorics(shadow, n, subdiv):
            return shadow
    raise ExhaustedRetriesError(f"no valid torus shadow found for n={n}, subdiv={subdiv}")


def gen_random(num_vertices: int, seed: int) -> Shadow:
    """Seeded random integer polygon in general position (rejection sampling)."""
    if num_vertices < 3:
        raise ValidationError(f"need at least 3 vertices, got {num_vertices}")
    rng = random.Random(seed)
    span = 1000
    for _ in range(500):
        vertices = [
            PlanePoint(rng.randint(-span, span), rng.randint(-span, span))
            for _ in range(num_vertices)
        ]
        try:
            return Shadow.from_vertices(vertices)
        except GeneralPositionViolation:
            continue
    raise ExhaustedRetriesError(
        f"no general-position polygon with {num_vertices} vertices for seed {seed}"
    )
