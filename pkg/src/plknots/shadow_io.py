"""Reading and writing the shadow document format.

A document is JSON with a ``version`` field, a list of vertices (rational
coordinates as ``"p/q"`` or ``"p"`` strings) and an ``assignments`` object
mapping crossing ids to ``"first_over"``/``"second_over"``.  Crossing ids
are recomputed from the geometry on read, never trusted from the file.
Serialization is canonical: equal pseudodiagrams produce byte-identical
documents.
"""

from __future__ import annotations

import json
from typing import Union

from .diagram import CrossingAssignment, Pseudodiagram, Shadow
from .errors import GeneralPositionViolation, ParseError, ValidationError
from .geometry import PlanePoint, format_rational, parse_rational

FORMAT_VERSION = 1


def write_shadow(diagram: Pseudodiagram) -> bytes:
    """Canonical document bytes for a pseudodiagram."""
    document = {
        "version": FORMAT_VERSION,
        "vertices": [
            [format_rational(v.x), format_rational(v.y)] for v in diagram.shadow.vertices
        ],
        "assignments": {
            str(cid): diagram.assignment[cid].value
            for cid in sorted(diagram.assignment)
        },
    }
    return (json.dumps(document, indent=2) + "\n").encode("utf-8")


def read_shadow(data: Union[bytes, str]) -> Pseudodiagram:
    """Parse and validate a shadow document.

    Raises :class:`ParseError` for malformed JSON or fields and
    :class:`ValidationError` when the geometry or assignments violate the
    documented invariants.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"document is not valid UTF-8: {exc}") from exc
    try:
        document = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(document, dict):
        raise ParseError("document root must be an object")
    version = document.get("version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported version {version!r} (expected {FORMAT_VERSION})")

    raw_vertices = document.get("vertices")
    if not isinstance(raw_vertices, list):
        raise ParseError("vertices: expected a list of points")
    if len(raw_vertices) < 3:
        # well-formed but too small to be a polygon
        raise ValidationError("vertices: a closed polygon needs at least 3 points")
    vertices = []
    for i, raw in enumerate(raw_vertices):
        if not isinstance(raw, list) or len(raw) != 2:
            raise ParseError(f"vertices[{i}]: expected [x, y]")
        try:
            x = parse_rational(raw[0])
            y = parse_rational(raw[1])
        except ParseError as exc:
            raise ParseError(f"vertices[{i}]: {exc}") from exc
        vertices.append(PlanePoint(x, y))

    try:
        shadow = Shadow.from_vertices(vertices)
    except GeneralPositionViolation as exc:
        raise ValidationError(f"vertices violate general position: {exc}") from exc

    raw_assignments = document.get("assignments", {})
    if not isinstance(raw_assignments, dict):
        raise ParseError("assignments: expected an object")
    assignment = {}
    for key, raw_value in raw_assignments.items():
        try:
            cid = int(key)
        except ValueError as exc:
            raise ParseError(f"assignments: bad crossing id {key!r}") from exc
        if not 0 <= cid < len(shadow.crossings):
            raise ValidationError(
                f"assignments: crossing id {cid} out of range (diagram has "
                f"{len(shadow.crossings)} crossings)"
            )
        try:
            assignment[cid] = CrossingAssignment(raw_value)
        except ValueError as exc:
            raise ParseError(f"assignments[{key}]: bad value {raw_value!r}") from exc
    return Pseudodiagram(shadow, assignment)
