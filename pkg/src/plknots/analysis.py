"""Diagram-level analysis: weighted resolution sets, forcing, and the
maximum number of simultaneously forced crossings.

The weighted resolution set (WeRe-set) of a pseudodiagram assigns each knot
class the exact fraction of completions that produce it.  In PL mode a
completion only counts if its resolution is realizable by vertex heights;
the unrealizable share is reported under the empty entry.  SMOOTH mode
skips the realizability filter and classifies every completion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Optional

from .diagram import CrossingAssignment, Pseudodiagram, Shadow
from .errors import BudgetExceededError, InvalidSetError, ValidationError
from .invariants import classify
from .realizability import (
    FeasibilityCache,
    PropagationOutcome,
    PropagationStatus,
    build_constraints,
    check_feasibility,
    propagate_forced,
)

EMPTY_ENTRY = "∅"  # the unrealizable share in PL mode


class WeReMode(enum.Enum):
    PL = "pl"          # piecewise-linear: completions must be realizable
    SMOOTH = "smooth"  # classify every completion


@dataclass(frozen=True)
class WeReSet:
    """Exact probability of each knot class over the completions."""

    mode: WeReMode
    entries: dict[str, Fraction]
    empty_prob: Fraction

    def total(self) -> Fraction:
        return sum(self.entries.values(), start=self.empty_prob)

    def as_strings(self) -> dict[str, str]:
        out = {name: str(prob) for name, prob in sorted(self.entries.items())}
        if self.empty_prob:
            out[EMPTY_ENTRY] = str(self.empty_prob)
        return out


ProgressHook = Optional[Callable[[int, int], None]]


def _as_diagram(source: Shadow | Pseudodiagram) -> Pseudodiagram:
    """Accept a bare shadow wherever a pseudodiagram is expected."""
    if isinstance(source, Shadow):
        return Pseudodiagram.bare(source)
    return source


def _completions(diagram: Pseudodiagram):
    """Deterministic enumeration of the total extensions of a pseudodiagram."""
    open_ids = diagram.precrossings()
    count = 2 ** len(open_ids)
    for word in range(count):
        extra = {
            cid: (
                CrossingAssignment.FIRST_OVER
                if (word >> position) & 1
                else CrossingAssignment.SECOND_OVER
            )
            for position, cid in enumerate(open_ids)
        }
        yield diagram.with_assignments(extra)


def were_set(
    diagram: Shadow | Pseudodiagram,
    mode: WeReMode = WeReMode.PL,
    progress: ProgressHook = None,
) -> WeReSet:
    """Exact WeRe-set of a pseudodiagram.

    Probabilities are reduced fractions with denominator dividing
    ``2^(number of precrossings)`` and always sum to exactly 1.
    """
    diagram = _as_diagram(diagram)
    open_count = len(diagram.precrossings())
    total = 2 ** open_count
    weight = Fraction(1, total)
    entries: dict[str, Fraction] = {}
    empty = Fraction(0)
    for done, resolution in enumerate(_completions(diagram)):
        if mode is WeReMode.PL:
            feasible = check_feasibility(build_constraints(resolution)).feasible
            if not feasible:
                empty += weight
                if progress:
                    progress(done + 1, total)
                continue
        name = classify(resolution).name
        entries[name] = entries.get(name, Fraction(0)) + weight
        if progress:
            progress(done + 1, total)
    result = WeReSet(mode, entries, empty)
    assert result.total() == 1
    return result


@dataclass(frozen=True)
class ForcingReport:
    """Witness data for the forcing number search.

    ``vacuous`` marks witnesses that assign every precrossing, where
    "forcing" reduces to the assignment merely being realizable.
    """

    forcing_number: Optional[int]
    witness_set: Optional[frozenset[int]]
    witness_assignment: Optional[dict[int, CrossingAssignment]]
    propagation_trace: Optional[PropagationOutcome]
    vacuous: bool = False


def forces(
    diagram: Shadow | Pseudodiagram,
    chosen: frozenset[int],
    assignment: dict[int, CrossingAssignment],
    cache: Optional[FeasibilityCache] = None,
) -> bool:
    """Does assigning ``chosen`` as given force every remaining precrossing?"""
    diagram = _as_diagram(diagram)
    open_ids = set(diagram.precrossings())
    if not set(chosen) <= open_ids:
        raise InvalidSetError("chosen set must consist of unassigned crossing ids")
    if set(assignment) != set(chosen):
        raise InvalidSetError("assignment must cover exactly the chosen set")
    extended = diagram.with_assignments(assignment)
    outcome = propagate_forced(extended, cache)
    return outcome.status is PropagationStatus.COMPLETED


def _assignments_for(ids: tuple[int, ...]):
    """All assignments of the given ids, in bit order (bit i = FIRST_OVER)."""
    for word in range(2 ** len(ids)):
        yield {
            cid: (
                CrossingAssignment.FIRST_OVER
                if (word >> position) & 1
                else CrossingAssignment.SECOND_OVER
            )
            for position, cid in enumerate(ids)
        }


def forcing_number(
    diagram: Shadow | Pseudodiagram,
    max_size: Optional[int] = None,
    progress: ProgressHook = None,
) -> ForcingReport:
    """Smallest number of precrossing choices that force the whole diagram.

    Searches subset sizes in ascending order, subsets lexicographically and
    assignments in bit order, so the witness is deterministic.  A witness
    that uses every precrossing is flagged vacuous.
    """
    diagram = _as_diagram(diagram)
    open_ids = diagram.precrossings()
    if not open_ids:
        raise ValidationError("forcing number needs at least one precrossing")
    cache: FeasibilityCache = {}
    limit = len(open_ids) if max_size is None else min(max_size, len(open_ids))
    candidates_done = 0
    total_candidates = sum(
        len(list(combinations(open_ids, k))) for k in range(1, limit + 1)
    )
    for size in range(1, limit + 1):
        for subset in combinations(open_ids, size):
            for assignment in _assignments_for(subset):
                if forces(diagram, frozenset(subset), assignment, cache):
                    extended = diagram.with_assignments(assignment)
                    trace = propagate_forced(extended, cache)
                    return ForcingReport(
                        forcing_number=size,
                        witness_set=frozenset(subset),
                        witness_assignment=assignment,
                        propagation_trace=trace,
                        vacuous=size == len(open_ids),
                    )
            candidates_done += 1
            if progress:
                progress(candidates_done, total_candidates)
    return ForcingReport(None, None, None, None)


@dataclass(frozen=True)
class MaxForcedReport:
    """Largest number of crossings forced by any partial assignment."""

    max_forced: int
    witness_assignment: dict[int, CrossingAssignment]
    states_examined: int
    complete: bool


def max_forced(
    diagram: Shadow | Pseudodiagram,
    budget: int = 600_000,
    progress: ProgressHook = None,
) -> MaxForcedReport:
    """Maximum of ``len(derived)`` in propagation over 3^c partial assignments.

    Enumeration order is deterministic (per crossing: unassigned, first
    over, second over).  When 3^c exceeds ``budget`` the scan stops and
    raises :class:`BudgetExceededError` carrying the partial result.
    """
    diagram = _as_diagram(diagram)
    open_ids = diagram.precrossings()
    total = 3 ** len(open_ids)
    cache: FeasibilityCache = {}
    best = -1
    best_assignment: dict[int, CrossingAssignment] = {}
    states = 0
    options = (None, CrossingAssignment.FIRST_OVER, CrossingAssignment.SECOND_OVER)
    for choices in product(options, repeat=len(open_ids)):
        if states >= budget:
            partial = MaxForcedReport(best, best_assignment, states, complete=False)
            raise BudgetExceededError(
                f"budget {budget} exhausted after {states} of {total} states",
                partial=partial,
            )
        assignment = {
            cid: value for cid, value in zip(open_ids, choices) if value is not None
        }
        outcome = propagate_forced(diagram.with_assignments(assignment), cache)
        states += 1
        if progress:
            progress(states, total)
        derived_count = len(outcome.derived)
        if outcome.status is not PropagationStatus.CONTRADICTION and derived_count > best:
            best = derived_count
            best_assignment = assignment
    return MaxForcedReport(max(best, 0), best_assignment, states, complete=True)


def core_catalog(diagram: Shadow | Pseudodiagram) -> set[frozenset[int]]:
    """Distinct minimal infeasible cores over all unrealizable completions."""
    from .realizability import minimal_infeasible_core

    diagram = _as_diagram(diagram)
    catalog: set[frozenset[int]] = set()
    for resolution in _completions(diagram):
        system = build_constraints(resolution)
        if not check_feasibility(system).feasible:
            catalog.add(minimal_infeasible_core(system))
    return catalog
