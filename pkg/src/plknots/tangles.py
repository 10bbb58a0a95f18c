"""Planar diagram codes for two-bridge knots, built from twist regions.

Every knot with at most seven crossings is two-bridge, so the reference
diagrams the classifier needs can all be produced by stacking twist regions
according to a positive continued fraction and closing the ends.  The
builder below keeps an explicit planar wiring (four boundary corners, plus
one 4-slot crossing per twist) and extracts an arc-numbered planar diagram
code by strand traversal, exactly like the geometric path does.

Conventions: a crossing's slots are numbered counterclockwise and the under
strand always occupies slots 0 and 2.  Handedness parameters choose which
diagonal is the under strand in each twist direction; the caller searches
the small variant space and keeps the diagram whose computed invariants
certify it (reduced alternating diagrams are certified by bracket span and
determinant).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .diagram import PDTuple

NW, NE, SE, SW = "NW", "NE", "SE", "SW"
Port = tuple  # (crossing index, slot) or a corner name


class _TangleBuilder:
    def __init__(self) -> None:
        self.mate: dict[Port, Port] = {NW: NE, NE: NW, SW: SE, SE: SW}
        self.crossings = 0

    def _connect(self, a: Port, b: Port) -> None:
        self.mate[a] = b
        self.mate[b] = a

    def _rewire_corner(self, corner: str, into: Port, fresh: Port) -> None:
        old = self.mate.pop(corner)
        self._connect(old, into)
        self._connect(corner, fresh)

    def add_horizontal(self, handedness: int) -> None:
        """Twist the two right-hand ends (corners NE and SE) once."""
        k = self.crossings
        self.crossings += 1
        if handedness == 0:
            lt, lb, rb, rt = (k, 0), (k, 1), (k, 2), (k, 3)
        else:
            lt, lb, rb, rt = (k, 3), (k, 0), (k, 1), (k, 2)
        old_top = self.mate.pop(NE)
        old_bottom = self.mate.pop(SE)
        self._connect(old_top, lt)
        self._connect(old_bottom, lb)
        self._connect(NE, rt)
        self._connect(SE, rb)

    def add_vertical(self, handedness: int) -> None:
        """Twist the two bottom ends (corners SW and SE) once."""
        k = self.crossings
        self.crossings += 1
        if handedness == 0:
            tl, bl, br, tr = (k, 0), (k, 1), (k, 2), (k, 3)
        else:
            tl, bl, br, tr = (k, 1), (k, 2), (k, 3), (k, 0)
        old_left = self.mate.pop(SW)
        old_right = self.mate.pop(SE)
        self._connect(old_left, tl)
        self._connect(old_right, tr)
        self._connect(SW, bl)
        self._connect(SE, br)

    def close(self, closure: str) -> None:
        if closure == "numerator":
            first, second = (NW, NE), (SW, SE)
        else:
            first, second = (NW, SW), (NE, SE)
        for c1, c2 in (first, second):
            p = self.mate.pop(c1)
            q = self.mate.pop(c2)
            self._connect(p, q)

    def extract_code(self) -> Optional[tuple[list[PDTuple], int]]:
        """Arc-numbered code and writhe, or None when the closure is a link."""
        c = self.crossings
        if c == 0:
            return None
        entries: list[Port] = []
        start = (0, 0)
        entry = start
        while True:
            entries.append(entry)
            exit_port = (entry[0], (entry[1] + 2) % 4)
            entry = self.mate[exit_port]
            if entry == start:
                break
            if len(entries) > 2 * c:
                raise AssertionError("traversal failed to close")
        if len(entries) != 2 * c:
            return None  # more than one component

        arc_at: dict[Port, int] = {}
        total = 2 * c
        for k, here in enumerate(entries):
            label = (k + 1) % total + 1  # wire leaving visit k
            exit_port = (here[0], (here[1] + 2) % 4)
            arc_at[exit_port] = label
            arc_at[self.mate[exit_port]] = label

        entry_slots: dict[int, list[int]] = {}
        for ci, slot in entries:
            entry_slots.setdefault(ci, []).append(slot)

        code: list[PDTuple] = []
        w = 0
        for ci in range(c):
            slots = entry_slots[ci]
            under = next(s for s in slots if s % 2 == 0)
            over = next(s for s in slots if s % 2 == 1)
            code.append(tuple(arc_at[(ci, (under + d) % 4)] for d in range(4)))
            w += 1 if over == (under + 3) % 4 else -1
        return code, w


def continued_fraction_numerator(parts: Sequence[int]) -> int:
    value = Fraction(parts[-1])
    for a in reversed(parts[:-1]):
        value = a + 1 / value
    return value.numerator


def compositions(total: int, max_parts: int = 4) -> Iterator[tuple[int, ...]]:
    """All ways to write ``total`` as an ordered sum of positive parts."""

    def rec(remaining: int, parts: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            if parts:
                yield parts
            return
        if len(parts) == max_parts:
            return
        for a in range(1, remaining + 1):
            yield from rec(remaining - a, parts + (a,))

    yield from rec(total, ())


def twist_region_candidates(parts: Sequence[int]) -> Iterator[tuple[list[PDTuple], int, str]]:
    """Every closure/handedness variant of the twist-region stack ``parts``.

    Regions alternate horizontal and vertical, starting horizontal.  Yields
    ``(pd code, writhe, variant label)`` for each knotted (one-component)
    result; the caller validates which variant is the alternating diagram.
    """
    for h_h, h_v, closure in product((0, 1), (0, 1), ("numerator", "denominator")):
        builder = _TangleBuilder()
        for depth, count in enumerate(parts):
            for _ in range(count):
                if depth % 2 == 0:
                    builder.add_horizontal(h_h)
                else:
                    builder.add_vertical(h_v)
        builder.close(closure)
        extracted = builder.extract_code()
        if extracted is None:
            continue
        code, w = extracted
        label = f"twists{tuple(parts)}-h{h_h}{h_v}-{closure[0]}"
        yield code, w, label
