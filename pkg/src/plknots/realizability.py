"""Exact realizability of pseudodiagrams via vertex heights.

A resolution is realizable exactly when heights ``z_i`` (one per polygon
vertex, the plane positions stay fixed) make the chosen over-strand strictly
higher than the under-strand at every assigned crossing.  Each crossing
yields one homogeneous strict inequality in four vertex heights; by scaling,
``row . z > 0`` for all rows is equivalent to ``row . z >= 1``, which a
phase-one simplex decides exactly over the rationals.

Everything here works on partial assignments: only assigned crossings
contribute rows, so feasibility of a pseudodiagram means "some resolution of
the remaining precrossings is realizable" is *not* implied -- it means the
assigned strands can already be lifted.  (A feasible partial system always
extends: perturb a witness off the unassigned height-equalities and read the
induced signs.)
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .diagram import CrossingAssignment, Pseudodiagram
from .errors import NotInfeasibleError
from .geometry import Rational

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ConstraintRow:
    """One assigned crossing's strict inequality ``sum(coeff * z) > 0``.

    Exactly four nonzero coefficients: ``1-s`` and ``s`` on the over edge's
    endpoints, ``-(1-t)`` and ``-t`` on the under edge's endpoints (with the
    roles of ``s``/``t`` swapped when the second edge is on top).
    """

    crossing_id: int
    coeffs: tuple[tuple[int, Fraction], ...]

    def value(self, heights: Sequence[Fraction]) -> Fraction:
        return sum((heights[idx] * c for idx, c in self.coeffs), start=ZERO)


@dataclass(frozen=True)
class ConstraintSystem:
    num_vars: int
    rows: tuple[ConstraintRow, ...]


class FeasibilityStatus(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class FeasibilityResult:
    status: FeasibilityStatus
    witness: Optional[tuple[Fraction, ...]]  # margins >= 1 on every row
    core: Optional[frozenset[int]] = None

    @property
    def feasible(self) -> bool:
        return self.status is FeasibilityStatus.FEASIBLE


def _row_for_crossing(diagram: Pseudodiagram, cid: int) -> ConstraintRow:
    crossing = diagram.shadow.crossings[cid]
    n = len(diagram.shadow.vertices)
    if diagram.assignment[cid] is CrossingAssignment.FIRST_OVER:
        over_edge, over_param = crossing.edge_a, crossing.s
        under_edge, under_param = crossing.edge_b, crossing.t
    else:
        over_edge, over_param = crossing.edge_b, crossing.t
        under_edge, under_param = crossing.edge_a, crossing.s
    coeffs = (
        (over_edge, ONE - over_param),
        ((over_edge + 1) % n, over_param),
        (under_edge, -(ONE - under_param)),
        ((under_edge + 1) % n, -under_param),
    )
    return ConstraintRow(cid, coeffs)


def build_constraints(diagram: Pseudodiagram) -> ConstraintSystem:
    """Rows for the assigned crossings, ascending by crossing id."""
    rows = tuple(_row_for_crossing(diagram, cid) for cid in sorted(diagram.assignment))
    return ConstraintSystem(len(diagram.shadow.vertices), rows)


def _phase_one_simplex(system: ConstraintSystem) -> Optional[list[Fraction]]:
    """Solve ``A z >= 1`` exactly; returns a witness or None if infeasible.

    Free variables are split ``z = u - v``; with surplus ``s`` and
    artificials ``a`` the tableau is ``A u - A v - s + a = 1``, minimizing
    ``sum(a)``.  Bland's least-index rule on both the entering and leaving
    choices prevents cycling.
    """
    m = len(system.rows)
    n = system.num_vars
    if m == 0:
        return [ZERO] * n

    width = 2 * n + m + m  # u, v, surplus, artificial
    art0 = 2 * n + m
    tableau: list[list[Fraction]] = []
    for r, row in enumerate(system.rows):
        line = [ZERO] * (width + 1)
        for idx, coeff in row.coeffs:
            line[idx] += coeff
            line[n + idx] -= coeff
        line[2 * n + r] = -ONE
        line[art0 + r] = ONE
        line[width] = ONE  # rhs
        tableau.append(line)
    basis = [art0 + r for r in range(m)]

    # Phase-one objective row: reduced costs of min sum(artificials).
    cost = [ZERO] * (width + 1)
    for line in tableau:
        for j in range(width + 1):
            cost[j] -= line[j]
    for r in range(m):
        cost[art0 + r] += ONE

    while True:
        entering = -1
        for j in range(width):
            if cost[j] < 0:
                entering = j
                break
        if entering < 0:
            break
        pivot_row = -1
        best_ratio: Optional[Fraction] = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][width] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[pivot_row])
                ):
                    best_ratio = ratio
                    pivot_row = i
        if pivot_row < 0:
            raise AssertionError("phase-one objective is bounded below by zero")
        pivot = tableau[pivot_row][entering]
        tableau[pivot_row] = [x / pivot for x in tableau[pivot_row]]
        for i in range(m):
            if i != pivot_row and tableau[i][entering] != 0:
                factor = tableau[i][entering]
                tableau[i] = [
                    x - factor * y for x, y in zip(tableau[i], tableau[pivot_row])
                ]
        if cost[entering] != 0:
            factor = cost[entering]
            cost = [x - factor * y for x, y in zip(cost, tableau[pivot_row])]
        basis[pivot_row] = entering

    objective = -cost[width]
    if objective != 0:
        return None
    values = [ZERO] * width
    for i, b in enumerate(basis):
        values[b] = tableau[i][width]
    return [values[i] - values[n + i] for i in range(n)]


def check_feasibility(system: ConstraintSystem) -> FeasibilityResult:
    """Exact strict feasibility; a FEASIBLE result carries a verified witness."""
    witness = _phase_one_simplex(system)
    if witness is None:
        return FeasibilityResult(FeasibilityStatus.INFEASIBLE, None)
    for row in system.rows:
        margin = row.value(witness)
        assert margin >= 1, f"witness violates row {row.crossing_id}"
    return FeasibilityResult(FeasibilityStatus.FEASIBLE, tuple(witness))


def minimal_infeasible_core(system: ConstraintSystem) -> frozenset[int]:
    """Minimal infeasible subset of rows, by the deletion filter.

    Rows are probed in ascending crossing id; a row is dropped whenever the
    remainder stays infeasible.  The result is minimal: removing any single
    retained row leaves a feasible system.
    """
    if check_feasibility(system).feasible:
        raise NotInfeasibleError("system is feasible; no infeasible core exists")
    kept = list(system.rows)
    for row in sorted(system.rows, key=lambda r: r.crossing_id):
        trial = [r for r in kept if r is not row]
        result = check_feasibility(ConstraintSystem(system.num_vars, tuple(trial)))
        if not result.feasible:
            kept = trial
    return frozenset(r.crossing_id for r in kept)


def _unassigned_gap(diagram: Pseudodiagram, cid: int, heights: Sequence[Fraction]) -> Fraction:
    """Height of the first edge's strand minus the second's at crossing ``cid``."""
    crossing = diagram.shadow.crossings[cid]
    n = len(diagram.shadow.vertices)
    a, b = crossing.edge_a, crossing.edge_b
    first = heights[a] * (ONE - crossing.s) + heights[(a + 1) % n] * crossing.s
    second = heights[b] * (ONE - crossing.t) + heights[(b + 1) % n] * crossing.t
    return first - second


_PERTURBATION_SEED = 0x5EED


def is_partial_realizable(
    diagram: Pseudodiagram,
) -> tuple[bool, Optional[tuple[Fraction, ...]]]:
    """Can the assigned strands be lifted?  Returns (answer, witness).

    The witness is nudged off every unassigned crossing's height-equality:
    a deterministic pseudorandom rational direction is added with a step
    that is halved until all assigned margins stay >= 1/2 and no unassigned
    crossing sees equal heights.  The signs the witness induces at the
    unassigned crossings therefore define a realizable completion.
    """
    system = build_constraints(diagram)
    result = check_feasibility(system)
    if not result.feasible:
        return False, None
    heights = list(result.witness)
    unassigned = diagram.precrossings()
    n = len(heights)

    for attempt in range(64):
        rng = random.Random(_PERTURBATION_SEED * 1031 + attempt)
        direction = [Fraction(rng.randint(1, 2**20), 2**20) for _ in range(n)]
        eps = ONE
        for _ in range(128):
            candidate = [h + eps * d for h, d in zip(heights, direction)]
            margins_ok = all(row.value(candidate) >= Fraction(1, 2) for row in system.rows)
            gaps_ok = all(
                _unassigned_gap(diagram, cid, candidate) != 0 for cid in unassigned
            )
            if margins_ok and gaps_ok:
                return True, tuple(candidate)
            if margins_ok and not gaps_ok:
                # A gap is stuck at zero iff both the witness and the
                # direction are on that hyperplane; shrinking eps cannot fix
                # it, a fresh direction can.
                stuck = any(
                    _unassigned_gap(diagram, cid, heights) == 0
                    and _unassigned_gap(diagram, cid, direction) == 0
                    for cid in unassigned
                )
                if stuck:
                    break
            eps /= 2
    raise AssertionError("perturbation failed to separate unassigned crossings")


def induced_completion(
    diagram: Pseudodiagram, witness: Sequence[Fraction]
) -> Pseudodiagram:
    """Resolve every precrossing by the sign of its witness height gap."""
    completed = dict(diagram.assignment)
    for cid in diagram.precrossings():
        gap = _unassigned_gap(diagram, cid, witness)
        if gap == 0:
            raise ValueError(f"witness does not separate crossing {cid}")
        completed[cid] = (
            CrossingAssignment.FIRST_OVER if gap > 0 else CrossingAssignment.SECOND_OVER
        )
    return Pseudodiagram(diagram.shadow, completed)


class PropagationStatus(enum.Enum):
    COMPLETED = "completed"      # nothing unassigned remains and the system is feasible
    STUCK = "stuck"              # every remaining precrossing still has both options
    CONTRADICTION = "contradiction"  # the given assignment is already unrealizable


@dataclass(frozen=True)
class PropagationOutcome:
    derived: tuple[tuple[int, CrossingAssignment], ...]
    status: PropagationStatus
    remaining: frozenset[int]


FeasibilityCache = dict[frozenset, bool]


def _feasible(
    diagram: Pseudodiagram, cache: Optional[FeasibilityCache]
) -> bool:
    if cache is None:
        return check_feasibility(build_constraints(diagram)).feasible
    key = frozenset(diagram.assignment.items())
    hit = cache.get(key)
    if hit is None:
        hit = check_feasibility(build_constraints(diagram)).feasible
        cache[key] = hit
    return hit


def propagate_forced(
    diagram: Pseudodiagram, cache: Optional[FeasibilityCache] = None
) -> PropagationOutcome:
    """Fixpoint of "the other option is unrealizable, so this one is forced".

    Scans precrossings in ascending id; whenever exactly one option of a
    crossing keeps the assigned system feasible, that option is recorded and
    the scan restarts.  ``cache`` (keyed by assignment) may be shared across
    calls on the same shadow.
    """
    current = diagram
    derived: list[tuple[int, CrossingAssignment]] = []
    if not _feasible(current, cache):
        return PropagationOutcome((), PropagationStatus.CONTRADICTION, frozenset(diagram.precrossings()))
    while True:
        remaining = current.precrossings()
        if not remaining:
            return PropagationOutcome(tuple(derived), PropagationStatus.COMPLETED, frozenset())
        progressed = False
        for cid in remaining:
            first_ok = _feasible(
                current.with_assignment(cid, CrossingAssignment.FIRST_OVER), cache
            )
            if not first_ok:
                # current system is feasible, so the other option must be
                forced = CrossingAssignment.SECOND_OVER
            else:
                second_ok = _feasible(
                    current.with_assignment(cid, CrossingAssignment.SECOND_OVER), cache
                )
                if second_ok:
                    continue  # both options open
                forced = CrossingAssignment.FIRST_OVER
            current = current.with_assignment(cid, forced)
            derived.append((cid, forced))
            progressed = True
            break
        if not progressed:
            return PropagationOutcome(
                tuple(derived), PropagationStatus.STUCK, frozenset(remaining)
            )
