"""Exact planar geometry for closed polygons.

Coordinates are rational and every predicate is decided with exact
arithmetic; nothing on the decision path touches floating point.  Degenerate
contact (collinear overlap, an endpoint in the interior of another segment,
triple points) is reported, never perturbed away: the layers above rely on
all crossings being transversal and interior.

Vertices are indexed ``0 .. n-1`` and edge ``i`` runs from vertex ``i`` to
vertex ``(i+1) mod n``, so the polygon is closed.  Crossings are sorted by
``(edge_a, s)`` and their position in that order is the crossing id used
everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

from .errors import DegenerateIntersection, GeneralPositionViolation, ParseError

# The package-wide rational scalar.  ``fractions.Fraction`` already carries
# the required invariants: always reduced, positive denominator, exact ops.
Rational = Fraction

Coordinate = Union[Fraction, int]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into an exact rational."""
    if not isinstance(text, str):
        raise ParseError(f"expected rational string, got {type(text).__name__}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid rational {text!r}") from exc


def format_rational(value: Fraction) -> str:
    """Render a rational as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class PlanePoint:
    """A point of the plane with exact rational coordinates."""

    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __sub__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x - other.x, self.y - other.y)

    def __add__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x + other.x, self.y + other.y)

    def scaled(self, factor: Fraction) -> "PlanePoint":
        factor = Fraction(factor)
        return PlanePoint(self.x * factor, self.y * factor)

    def cross(self, other: "PlanePoint") -> Fraction:
        """2D cross product, treating both points as vectors."""
        return self.x * other.y - self.y * other.x

    def dot(self, other: "PlanePoint") -> Fraction:
        return self.x * other.x + self.y * other.y


def orientation(a: PlanePoint, b: PlanePoint, c: PlanePoint) -> Fraction:
    """Signed area of the triangle ``abc`` (doubled); >0 means ccw."""
    return (b - a).cross(c - a)


class SegmentHit(NamedTuple):
    """A transversal interior intersection of two segments.

    ``s`` parametrizes the first segment and ``t`` the second, both strictly
    inside ``(0, 1)``.  ``point`` is the exact common point.
    """

    s: Fraction
    t: Fraction
    point: PlanePoint


@dataclass(frozen=True)
class CrossingGeometry:
    """A transversal double point between two non-adjacent polygon edges.

    ``edge_a < edge_b`` always holds; ``s`` is the parameter along
    ``edge_a`` and ``t`` along ``edge_b``.
    """

    edge_a: int
    edge_b: int
    s: Fraction
    t: Fraction
    point: PlanePoint


@dataclass(frozen=True)
class Violation:
    """One general-position defect, with the vertex/edge indices involved."""

    kind: str
    detail: str
    involved: tuple[int, ...]


def intersect_segments(
    p1: PlanePoint, p2: PlanePoint, q1: PlanePoint, q2: PlanePoint
) -> Optional[SegmentHit]:
    """Exact intersection of two closed segments.

    Returns the unique transversal interior intersection with both
    parameters strictly in ``(0, 1)``, or ``None`` when the segments are
    disjoint or touch only endpoint-to-endpoint.  Collinear overlap and an
    endpoint falling in the other segment's interior raise
    :class:`DegenerateIntersection`: those configurations violate general
    position and must not be silently dropped.
    """
    if p1 == p2 or q1 == q2:
        raise ValueError("zero-length segment")
    dp = p2 - p1
    dq = q2 - q1
    denom = dp.cross(dq)
    offset = q1 - p1
    if denom == 0:
        if offset.cross(dp) != 0:
            return None  # parallel, never meet
        # Collinear: compare parameter intervals along dp.
        unit = dp.dot(dp)
        lo = offset.dot(dp) / unit
        hi = (q2 - p1).dot(dp) / unit
        if lo > hi:
            lo, hi = hi, lo
        if max(lo, Fraction(0)) < min(hi, Fraction(1)):
            raise DegenerateIntersection("collinear segments overlap")
        return None  # disjoint, or touching at a shared endpoint
    s = offset.cross(dq) / denom
    t = offset.cross(dp) / denom
    if not (0 <= s <= 1 and 0 <= t <= 1):
        return None
    s_interior = 0 < s < 1
    t_interior = 0 < t < 1
    if s_interior and t_interior:
        point = p1 + dp.scaled(s)
        return SegmentHit(s, t, point)
    if s_interior != t_interior:
        raise DegenerateIntersection("segment endpoint lies on the other segment's interior")
    return None  # endpoint-to-endpoint contact


def _edges_adjacent(i: int, j: int, n: int) -> bool:
    return j == (i + 1) % n or i == (j + 1) % n


def _edge(vertices: Sequence[PlanePoint], i: int) -> tuple[PlanePoint, PlanePoint]:
    return vertices[i], vertices[(i + 1) % len(vertices)]


def _point_in_open_segment(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> bool:
    if orientation(a, b, p) != 0:
        return False
    d = b - a
    proj = (p - a).dot(d)
    return 0 < proj < d.dot(d)


def validate_general_position(vertices: Sequence[PlanePoint]) -> list[Violation]:
    """Check every general-position requirement; returns defects, never raises.

    Checks: at least three vertices, all vertices pairwise distinct, no
    vertex on a non-incident edge, adjacent edges meeting only at their
    shared vertex (no collinear doubling back or straight-through vertex),
    no collinear overlap between any edges, and no triple points.
    """
    violations: list[Violation] = []
    n = len(vertices)
    if n < 3:
        violations.append(Violation("too_few_vertices", f"polygon needs >= 3 vertices, got {n}", ()))
        return violations

    for i in range(n):
        for j in range(i + 1, n):
            if vertices[i] == vertices[j]:
                violations.append(
                    Violation("duplicate_vertex", f"vertices {i} and {j} coincide", (i, j))
                )
    if violations:
        return violations  # coordinates unusable; stop before edge checks

    for i in range(n):
        prev = vertices[(i - 1) % n]
        here = vertices[i]
        nxt = vertices[(i + 1) % n]
        if orientation(prev, here, nxt) == 0:
            violations.append(
                Violation(
                    "collinear_adjacent_edges",
                    f"edges {(i - 1) % n} and {i} are collinear at vertex {i}",
                    ((i - 1) % n, i),
                )
            )

    for v in range(n):
        for e in range(n):
            if e == v or (e + 1) % n == v:
                continue  # incident edge
            a, b = _edge(vertices, e)
            if _point_in_open_segment(vertices[v], a, b):
                violations.append(
                    Violation("vertex_on_edge", f"vertex {v} lies on edge {e}", (v, e))
                )

    hits: dict[PlanePoint, list[tuple[int, int]]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            if _edges_adjacent(i, j, n):
                continue
            a1, a2 = _edge(vertices, i)
            b1, b2 = _edge(vertices, j)
            try:
                hit = intersect_segments(a1, a2, b1, b2)
            except DegenerateIntersection as exc:
                violations.append(
                    Violation("degenerate_contact", f"edges {i} and {j}: {exc}", (i, j))
                )
                continue
            except ValueError:
                continue  # zero-length edge, already reported as duplicate vertex
            if hit is not None:
                hits.setdefault(hit.point, []).append((i, j))
    for point, pairs in hits.items():
        if len(pairs) > 1:
            edges = sorted({e for pair in pairs for e in pair})
            violations.append(
                Violation(
                    "triple_point",
                    f"edges {edges} pass through a common point",
                    tuple(edges),
                )
            )
    return violations


def compute_crossings(vertices: Sequence[PlanePoint]) -> list[CrossingGeometry]:
    """All transversal double points of the closed polygon, in id order.

    The result is sorted by ``(edge_a, s)``; the position of a crossing in
    this list is its crossing id.  Raises
    :class:`GeneralPositionViolation` when the polygon fails
    :func:`validate_general_position`.
    """
    violations = validate_general_position(vertices)
    if violations:
        raise GeneralPositionViolation(violations)
    n = len(vertices)
    crossings: list[CrossingGeometry] = []
    for i in range(n):
        for j in range(i + 1, n):
            if _edges_adjacent(i, j, n):
                continue
            a1, a2 = _edge(vertices, i)
            b1, b2 = _edge(vertices, j)
            hit = intersect_segments(a1, a2, b1, b2)
            if hit is None:
                continue
            # The same point must come out of either parametrization.
            assert a1 + (a2 - a1).scaled(hit.s) == b1 + (b2 - b1).scaled(hit.t)
            crossings.append(CrossingGeometry(i, j, hit.s, hit.t, hit.point))
    crossings.sort(key=lambda c: (c.edge_a, c.s))
    return crossings
