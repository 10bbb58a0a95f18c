"""Knot invariants of resolutions: bracket polynomial, Jones fingerprint,
determinant, and classification against a small reference table.

The bracket is a state sum over smoothings.  Writing ``delta`` for the loop
value ``-A^2 - A^(-2)``, a state with ``a`` A-smoothings, ``b`` B-smoothings
and ``L`` loops contributes ``A^(a-b) * delta^(L-1)``.  The implementation
processes crossings one at a time and memoizes on the connection pattern of
the still-open strands, so equal partial smoothings are merged; an
independent brute-force enumeration lives in the test suite.

The Jones fingerprint of a resolution is ``(-A)^(-3w)`` times the bracket
(``w`` the writhe from exact cross products), normalized so that a diagram
and its mirror image agree: we keep the lexicographically smaller of
``f(A)`` and ``f(1/A)``.  The determinant is computed independently of the
bracket, from an integer matrix built out of the checkerboard coloring of
the planar diagram code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Mapping, Optional, Sequence

from .diagram import PDTuple, Pseudodiagram, pd_code, writhe
from .errors import PartialAssignmentError, ValidationError


class LaurentPolynomial:
    """Laurent polynomial in one variable ``A`` with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, int]] = None):
        cleaned = {}
        if coeffs:
            for exp, c in coeffs.items():
                if c != 0:
                    cleaned[int(exp)] = int(c)
        self.coeffs = cleaned

    @staticmethod
    def monomial(coefficient: int, exponent: int) -> "LaurentPolynomial":
        return LaurentPolynomial({exponent: coefficient})

    @staticmethod
    def zero() -> "LaurentPolynomial":
        return LaurentPolynomial()

    @staticmethod
    def one() -> "LaurentPolynomial":
        return LaurentPolynomial({0: 1})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            out[exp] = out.get(exp, 0) + c
        return LaurentPolynomial(out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(out)

    def times_monomial(self, coefficient: int, exponent: int) -> "LaurentPolynomial":
        return LaurentPolynomial(
            {e + exponent: c * coefficient for e, c in self.coeffs.items()}
        )

    def substitute_inverse(self) -> "LaurentPolynomial":
        """The image under ``A -> 1/A``."""
        return LaurentPolynomial({-e: c for e, c in self.coeffs.items()})

    def exact_div(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Exact division; raises if the divisor does not divide evenly."""
        if not divisor:
            raise ZeroDivisionError("division by zero polynomial")
        remainder = dict(self.coeffs)
        top_exp = max(divisor.coeffs)
        top_coeff = divisor.coeffs[top_exp]
        quotient: dict[int, int] = {}
        while remainder:
            e = max(remainder)
            c = remainder[e]
            if c % top_coeff != 0:
                raise ValueError("inexact polynomial division")
            q_exp = e - top_exp
            q_coeff = c // top_coeff
            quotient[q_exp] = quotient.get(q_exp, 0) + q_coeff
            for de, dc in divisor.coeffs.items():
                k = de + q_exp
                val = remainder.get(k, 0) - dc * q_coeff
                if val:
                    remainder[k] = val
                else:
                    remainder.pop(k, None)
        return LaurentPolynomial(quotient)

    def span(self) -> int:
        """Difference between the largest and smallest exponent (0 if empty)."""
        if not self.coeffs:
            return 0
        return max(self.coeffs) - min(self.coeffs)

    def sort_key(self) -> tuple:
        """Total order used for mirror normalization."""
        return tuple(sorted(self.coeffs.items()))

    def evaluate_at_fourth_root(self) -> int:
        """Evaluate under ``A^4 = -1``; requires all exponents in ``4Z``."""
        total = 0
        for e, c in self.coeffs.items():
            if e % 4 != 0:
                raise ValueError("exponent not a multiple of 4")
            total += c * (-1) ** ((e // 4) % 2)
        return total

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "A" if e == 1 else f"A^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = (first_sign if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    __repr__ = __str__


LOOP_VALUE = LaurentPolynomial({2: -1, -2: -1})  # -A^2 - A^(-2)


def _arc_occurrences(code: Sequence[PDTuple]) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, quad in enumerate(code):
        for slot, arc in enumerate(quad):
            occ.setdefault(arc, []).append((ci, slot))
    for arc, places in occ.items():
        if len(places) != 2:
            raise ValidationError(f"arc {arc} appears {len(places)} times in pd code")
    return occ


def bracket_from_pd(code: Sequence[PDTuple]) -> LaurentPolynomial:
    """Kauffman bracket of a planar diagram code.

    Crossing tuples are read counterclockwise from the incoming under-arc;
    the A-smoothing joins slots (0,1) and (2,3), the B-smoothing (0,3) and
    (1,2).  States are merged whenever their open-strand matchings agree.
    """
    if not code:
        return LaurentPolynomial.one()
    occ = _arc_occurrences(code)

    # Initial chains: each arc is a wire between its two occurrence slots.
    initial: dict[tuple[int, int], tuple[int, int]] = {}
    for places in occ.values():
        a, b = places
        initial[a] = b
        initial[b] = a

    def canonical(match: Mapping[tuple[int, int], tuple[int, int]]) -> frozenset:
        return frozenset(frozenset((a, b)) for a, b in match.items())

    states: dict[frozenset, tuple[dict, LaurentPolynomial]] = {
        canonical(initial): (initial, LaurentPolynomial.one())
    }

    for ci in range(len(code)):
        slots = [(ci, s) for s in range(4)]
        next_states: dict[frozenset, tuple[dict, LaurentPolynomial]] = {}
        for match, poly in states.values():
            for power, pairs in ((1, ((0, 1), (2, 3))), (-1, ((0, 3), (1, 2)))):
                new_match = dict(match)
                loops = 0
                for i, j in pairs:
                    e1, e2 = slots[i], slots[j]
                    a, b = new_match.pop(e1), new_match.pop(e2)
                    if a == e2:
                        loops += 1  # the chain closed on itself
                        continue
                    new_match[a] = b
                    new_match[b] = a
                contribution = poly.times_monomial(1, power)
                for _ in range(loops):
                    contribution = contribution * LOOP_VALUE
                key = canonical(new_match)
                if key in next_states:
                    kept_match, kept_poly = next_states[key]
                    next_states[key] = (kept_match, kept_poly + contribution)
                else:
                    next_states[key] = (new_match, contribution)
        states = next_states

    total = LaurentPolynomial.zero()
    for match, poly in states.values():
        assert not match, "open strands left after all crossings were smoothed"
        total = total + poly
    # Each state carried delta^loops; the bracket wants delta^(loops-1).
    return total.exact_div(LOOP_VALUE)


def kauffman_bracket(resolution: Pseudodiagram) -> LaurentPolynomial:
    """Bracket polynomial of a resolution (1 for a crossing-free diagram)."""
    if not resolution.is_resolution():
        raise PartialAssignmentError("bracket needs a total assignment")
    if not resolution.shadow.crossings:
        return LaurentPolynomial.one()
    return bracket_from_pd(pd_code(resolution))


# --- determinant from the checkerboard coloring --------------------------


def _faces(code: Sequence[PDTuple]) -> list[list[tuple[int, int]]]:
    """Faces of the 4-valent planar map, as orbits of rotate-then-jump."""
    occ = _arc_occurrences(code)
    other_end: dict[tuple[int, int], tuple[int, int]] = {}
    for places in occ.values():
        a, b = places
        other_end[a] = b
        other_end[b] = a

    def step(dart: tuple[int, int]) -> tuple[int, int]:
        ci, slot = other_end[dart]
        return (ci, (slot + 1) % 4)

    faces = []
    seen: set[tuple[int, int]] = set()
    for ci in range(len(code)):
        for slot in range(4):
            start = (ci, slot)
            if start in seen:
                continue
            face = []
            dart = start
            while True:
                face.append(dart)
                seen.add(dart)
                dart = step(dart)
                if dart == start:
                    break
            faces.append(face)
    assert len(faces) == len(code) + 2, "Euler check failed for the diagram's map"
    return faces


def _integer_determinant(matrix: list[list[int]]) -> int:
    """Fraction-free Bareiss elimination over the integers."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def determinant_from_pd(code: Sequence[PDTuple]) -> int:
    """Knot determinant via the Goeritz matrix of a checkerboard coloring.

    Integer arithmetic only; completely independent of the bracket.
    """
    if not code:
        return 1
    faces = _faces(code)
    face_of: dict[tuple[int, int], int] = {}
    for fi, face in enumerate(faces):
        for dart in face:
            face_of[dart] = fi

    # Around a crossing the four corners alternate colors, so assigning by
    # corner parity and spreading by BFS two-colors the map.
    color: dict[int, int] = {face_of[(0, 0)]: 0}
    queue = [face_of[(0, 0)]]
    adjacency: dict[int, set[int]] = {fi: set() for fi in range(len(faces))}
    for ci in range(len(code)):
        for slot in range(4):
            f1 = face_of[(ci, slot)]
            f2 = face_of[(ci, (slot + 1) % 4)]
            adjacency[f1].add(f2)
            adjacency[f2].add(f1)
    while queue:
        f = queue.pop()
        for g in adjacency[f]:
            if g not in color:
                color[g] = 1 - color[f]
                queue.append(g)
    if len(color) != len(faces):
        raise ValidationError("diagram is not connected")

    white = sorted(fi for fi in range(len(faces)) if color[fi] == 0)
    index = {fi: k for k, fi in enumerate(white)}
    size = len(white)
    matrix = [[0] * size for _ in range(size)]
    for ci in range(len(code)):
        corners = [face_of[(ci, slot)] for slot in range(4)]
        if color[corners[0]] == 0:
            pair = (corners[0], corners[2])
            eta = -1  # white quadrants follow the under-strand's entry
        else:
            pair = (corners[1], corners[3])
            eta = 1
        f1, f2 = pair
        if f1 == f2:
            continue  # both white corners in one region: no off-diagonal mass
        i, j = index[f1], index[f2]
        matrix[i][j] -= eta
        matrix[j][i] -= eta
        matrix[i][i] += eta
        matrix[j][j] += eta
    reduced = [row[1:] for row in matrix[1:]]
    return abs(_integer_determinant(reduced))


# --- fingerprints and classification --------------------------------------


@dataclass(frozen=True)
class KnotFingerprint:
    """Mirror-normalized Jones polynomial plus the knot determinant."""

    jones: LaurentPolynomial
    determinant: int

    def key(self) -> tuple:
        return (self.jones.sort_key(), self.determinant)

    def __str__(self) -> str:
        return f"det={self.determinant};jones={self.jones}"


@dataclass(frozen=True)
class KnotClass:
    name: str


def normalized_jones(bracket: LaurentPolynomial, writhe_value: int) -> LaurentPolynomial:
    """``(-A)^(-3w) * bracket``, then the smaller of the two mirror images."""
    sign = -1 if writhe_value % 2 else 1
    f = bracket.times_monomial(sign, -3 * writhe_value)
    g = f.substitute_inverse()
    canonical = f if f.sort_key() <= g.sort_key() else g
    for exponent in canonical.coeffs:
        if exponent % 4 != 0:
            raise AssertionError("knot Jones fingerprint has a non-4-divisible exponent")
    return canonical


def fingerprint_from_pd(code: Sequence[PDTuple], writhe_value: int) -> KnotFingerprint:
    jones = normalized_jones(bracket_from_pd(code), writhe_value)
    return KnotFingerprint(jones, determinant_from_pd(code))


def jones_fingerprint(resolution: Pseudodiagram) -> KnotFingerprint:
    """Fingerprint of a resolution; the writhe comes from exact geometry."""
    if not resolution.is_resolution():
        raise PartialAssignmentError("fingerprint needs a total assignment")
    if not resolution.shadow.crossings:
        return KnotFingerprint(LaurentPolynomial.one(), 1)
    return fingerprint_from_pd(pd_code(resolution), writhe(resolution))


def pd_writhe(code: Sequence[PDTuple]) -> int:
    """Writhe recovered from arc numbering (needs at least 2 crossings).

    The over-strand enters at the slot whose arc's successor sits at the
    opposite slot; entering at slot 3 makes the crossing positive under the
    same convention as the geometric sign.
    """
    if len(code) < 2:
        raise ValidationError("arc numbering cannot orient a 1-crossing code")
    total_arcs = 2 * len(code)

    def successor(arc: int) -> int:
        return arc % total_arcs + 1

    w = 0
    for quad in code:
        _, b, _, d = quad
        if successor(b) == d:
            w -= 1  # over-strand runs slot 1 -> slot 3
        elif successor(d) == b:
            w += 1  # over-strand runs slot 3 -> slot 1
        else:
            raise ValidationError(f"inconsistent arc numbering at {quad}")
    return w


UNKNOT = "0_1"
_REFERENCE_RESOURCE = "reference_pd_codes.json"


def _load_reference_entries() -> list[dict]:
    data = resources.files("plknots.data").joinpath(_REFERENCE_RESOURCE).read_text()
    return json.loads(data)["entries"]


class ReferenceTable:
    """Name lookup for fingerprints of the knots with at most 7 crossings.

    The table is shipped as planar diagram codes; fingerprints are
    recomputed on load, never stored.
    """

    def __init__(self, entries: Iterable[tuple[str, KnotFingerprint]]):
        self.by_key: dict[tuple, str] = {}
        self.fingerprints: dict[str, KnotFingerprint] = {}
        unknot = KnotFingerprint(LaurentPolynomial.one(), 1)
        self._add(UNKNOT, unknot)
        for name, fingerprint in entries:
            self._add(name, fingerprint)

    def _add(self, name: str, fingerprint: KnotFingerprint) -> None:
        jones_key = fingerprint.jones.sort_key()
        if jones_key in {k[0] for k in self.by_key}:
            raise AssertionError(f"Jones collision in reference table at {name}")
        self.by_key[fingerprint.key()] = name
        self.fingerprints[name] = fingerprint

    def lookup(self, fingerprint: KnotFingerprint) -> Optional[str]:
        return self.by_key.get(fingerprint.key())

    @staticmethod
    def load() -> "ReferenceTable":
        entries = []
        for item in _load_reference_entries():
            code = [tuple(quad) for quad in item["pd"]]
            fp = fingerprint_from_pd(code, pd_writhe(code))
            entries.append((item["name"], fp))
        return ReferenceTable(entries)


_TABLE: Optional[ReferenceTable] = None


def reference_table() -> ReferenceTable:
    global _TABLE
    if _TABLE is None:
        _TABLE = ReferenceTable.load()
    return _TABLE


def classify(resolution: Pseudodiagram) -> KnotClass:
    """Name the knot type of a resolution, or ``unknown:<fingerprint>``."""
    fingerprint = jones_fingerprint(resolution)
    name = reference_table().lookup(fingerprint)
    if name is None:
        return KnotClass(f"unknown:{fingerprint}")
    return KnotClass(name)
