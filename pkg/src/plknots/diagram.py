"""Shadows, pseudodiagrams and their combinatorial codes.

A *shadow* is a closed polygon in general position together with its
crossings; every crossing is a precrossing until it receives an over/under
choice.  A *pseudodiagram* adds a partial assignment; a total assignment is
a *resolution*.  ``FIRST_OVER`` means the edge with the smaller index passes
over, and bit ``1`` encodes ``FIRST_OVER`` wherever assignments are packed
into bit strings (bit ``i`` belongs to crossing id ``i`` in ascending
order).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    InvalidSetError,
    NoCrossingsError,
    PartialAssignmentError,
    ValidationError,
)
from .geometry import CrossingGeometry, PlanePoint, compute_crossings


class CrossingAssignment(enum.Enum):
    """Which strand passes over at a crossing."""

    FIRST_OVER = "first_over"    # the edge with the smaller index is on top
    SECOND_OVER = "second_over"  # the edge with the larger index is on top

    def flipped(self) -> "CrossingAssignment":
        if self is CrossingAssignment.FIRST_OVER:
            return CrossingAssignment.SECOND_OVER
        return CrossingAssignment.FIRST_OVER


@dataclass(frozen=True)
class Shadow:
    """A general-position closed polygon with its computed crossings."""

    vertices: tuple[PlanePoint, ...]
    crossings: tuple[CrossingGeometry, ...] = field(compare=False)

    @staticmethod
    def from_vertices(vertices: Sequence[PlanePoint]) -> "Shadow":
        vs = tuple(vertices)
        return Shadow(vs, tuple(compute_crossings(vs)))

    @property
    def num_edges(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[PlanePoint, PlanePoint]:
        return self.vertices[i], self.vertices[(i + 1) % len(self.vertices)]

    def edge_vector(self, i: int) -> PlanePoint:
        a, b = self.edge(i)
        return b - a

    def crossings_on_edge(self, edge: int) -> list[tuple[int, Fraction]]:
        """Crossing ids met along ``edge``, with parameters, in travel order."""
        found = []
        for cid, c in enumerate(self.crossings):
            if c.edge_a == edge:
                found.append((cid, c.s))
            elif c.edge_b == edge:
                found.append((cid, c.t))
        found.sort(key=lambda item: item[1])
        return found


AssignmentMap = Mapping[int, CrossingAssignment]


def _frozen_assignment(shadow: Shadow, assignment: AssignmentMap) -> Mapping[int, CrossingAssignment]:
    checked: dict[int, CrossingAssignment] = {}
    for cid in sorted(assignment):
        if not isinstance(cid, int) or not 0 <= cid < len(shadow.crossings):
            raise InvalidSetError(f"unknown crossing id {cid!r}")
        value = assignment[cid]
        if not isinstance(value, CrossingAssignment):
            raise ValidationError(f"crossing {cid}: bad assignment {value!r}")
        checked[cid] = value
    return MappingProxyType(checked)


@dataclass(frozen=True)
class Pseudodiagram:
    """A shadow with a partial over/under assignment."""

    shadow: Shadow
    assignment: Mapping[int, CrossingAssignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", _frozen_assignment(self.shadow, self.assignment))

    @staticmethod
    def bare(shadow: Shadow) -> "Pseudodiagram":
        return Pseudodiagram(shadow, {})

    @property
    def num_crossings(self) -> int:
        return len(self.shadow.crossings)

    def precrossings(self) -> tuple[int, ...]:
        """Ids of crossings still lacking an over/under choice, ascending."""
        return tuple(
            cid for cid in range(self.num_crossings) if cid not in self.assignment
        )

    def is_resolution(self) -> bool:
        return len(self.assignment) == self.num_crossings

    def with_assignment(self, cid: int, value: Optional[CrossingAssignment]) -> "Pseudodiagram":
        """A copy with crossing ``cid`` set to ``value`` (or cleared by ``None``)."""
        if not 0 <= cid < self.num_crossings:
            raise InvalidSetError(f"unknown crossing id {cid}")
        updated = dict(self.assignment)
        if value is None:
            updated.pop(cid, None)
        else:
            updated[cid] = value
        return Pseudodiagram(self.shadow, updated)

    def with_assignments(self, more: AssignmentMap) -> "Pseudodiagram":
        updated = dict(self.assignment)
        updated.update(more)
        return Pseudodiagram(self.shadow, updated)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pseudodiagram):
            return NotImplemented
        return (
            self.shadow.vertices == other.shadow.vertices
            and dict(self.assignment) == dict(other.assignment)
        )

    def __hash__(self) -> int:
        return hash((self.shadow.vertices, tuple(sorted(self.assignment.items(), key=lambda kv: kv[0]))))


BitsLike = Union[str, Sequence[int]]


def resolution_from_bits(shadow: Shadow, bits: BitsLike) -> Pseudodiagram:
    """Total assignment from a bit string; bit ``i`` = 1 sets crossing ``i`` FIRST_OVER."""
    values: list[int] = []
    for ch in bits:
        if ch in ("0", "1"):
            values.append(int(ch))
        elif ch in (0, 1):
            values.append(ch)
        else:
            raise ValidationError(f"bits must be 0/1, got {ch!r}")
    if len(values) != len(shadow.crossings):
        raise ValidationError(
            f"bit string length {len(values)} != crossing count {len(shadow.crossings)}"
        )
    assignment = {
        cid: CrossingAssignment.FIRST_OVER if bit else CrossingAssignment.SECOND_OVER
        for cid, bit in enumerate(values)
    }
    return Pseudodiagram(shadow, assignment)


def bits_from_resolution(resolution: Pseudodiagram) -> str:
    """Inverse of :func:`resolution_from_bits`."""
    if not resolution.is_resolution():
        raise PartialAssignmentError("resolution required")
    return "".join(
        "1" if resolution.assignment[cid] is CrossingAssignment.FIRST_OVER else "0"
        for cid in range(resolution.num_crossings)
    )


def mirror(diagram: Pseudodiagram) -> Pseudodiagram:
    """Flip every assigned crossing; precrossings stay precrossings."""
    flipped = {cid: value.flipped() for cid, value in diagram.assignment.items()}
    return Pseudodiagram(diagram.shadow, flipped)


class StrandRole(enum.Enum):
    OVER = "over"
    UNDER = "under"


@dataclass(frozen=True)
class Passage:
    """One visit of the traversal to a crossing."""

    crossing: int
    edge: int
    param: Fraction
    role: StrandRole


def _role_at(diagram: Pseudodiagram, cid: int, edge: int) -> StrandRole:
    crossing = diagram.shadow.crossings[cid]
    value = diagram.assignment[cid]
    on_first = edge == crossing.edge_a
    if value is CrossingAssignment.FIRST_OVER:
        return StrandRole.OVER if on_first else StrandRole.UNDER
    return StrandRole.UNDER if on_first else StrandRole.OVER


def passages(diagram: Pseudodiagram) -> list[Passage]:
    """Crossing visits in traversal order: start at vertex 0 along edge 0,
    walk each edge in increasing parameter."""
    if not diagram.is_resolution():
        raise PartialAssignmentError("traversal codes need a total assignment")
    result: list[Passage] = []
    for edge in range(diagram.shadow.num_edges):
        for cid, param in diagram.shadow.crossings_on_edge(edge):
            result.append(Passage(cid, edge, param, _role_at(diagram, cid, edge)))
    return result


def gauss_sequence(diagram: Pseudodiagram) -> list[tuple[int, str]]:
    """Ordered ``(crossing id, "over"|"under")`` pairs along the traversal."""
    return [(p.crossing, p.role.value) for p in passages(diagram)]


PDTuple = tuple[int, int, int, int]


def pd_code(diagram: Pseudodiagram) -> list[PDTuple]:
    """Planar diagram code of a resolution.

    Arcs are labeled ``1 .. 2c`` in traversal order.  Each crossing
    contributes the 4-tuple of arc labels read counterclockwise starting
    from the incoming under-strand arc.  Tuples are listed by crossing id.
    """
    if not diagram.shadow.crossings:
        raise NoCrossingsError("pd code undefined without crossings")
    visits = passages(diagram)
    total = len(visits)

    # in-arc of visit k is k+1; out-arc is the next visit's in-arc.
    in_arc = {k: k + 1 for k in range(total)}
    out_arc = {k: (k + 1) % total + 1 for k in range(total)}

    by_crossing: dict[int, dict[StrandRole, int]] = {}
    for k, visit in enumerate(visits):
        by_crossing.setdefault(visit.crossing, {})[visit.role] = k

    code: list[PDTuple] = []
    for cid in range(len(diagram.shadow.crossings)):
        under_k = by_crossing[cid][StrandRole.UNDER]
        over_k = by_crossing[cid][StrandRole.OVER]
        d_under = diagram.shadow.edge_vector(visits[under_k].edge)
        d_over = diagram.shadow.edge_vector(visits[over_k].edge)
        turn = d_under.cross(d_over)
        u_in, u_out = in_arc[under_k], out_arc[under_k]
        o_in, o_out = in_arc[over_k], out_arc[over_k]
        if turn > 0:
            code.append((u_in, o_in, u_out, o_out))
        else:
            code.append((u_in, o_out, u_out, o_in))
    return code


def crossing_signs(diagram: Pseudodiagram) -> list[int]:
    """Geometric sign of each crossing (+1/-1), by crossing id."""
    if not diagram.is_resolution():
        raise PartialAssignmentError("crossing signs need a total assignment")
    signs: list[int] = []
    for cid, crossing in enumerate(diagram.shadow.crossings):
        if diagram.assignment[cid] is CrossingAssignment.FIRST_OVER:
            over_edge, under_edge = crossing.edge_a, crossing.edge_b
        else:
            over_edge, under_edge = crossing.edge_b, crossing.edge_a
        d_over = diagram.shadow.edge_vector(over_edge)
        d_under = diagram.shadow.edge_vector(under_edge)
        signs.append(1 if d_over.cross(d_under) > 0 else -1)
    return signs


def writhe(diagram: Pseudodiagram) -> int:
    """Sum of geometric crossing signs (exact cross products)."""
    return sum(crossing_signs(diagram))
