#!/usr/bin/env python3
"""Seeded search for small shadows with a prescribed PL WeRe-set.

Strategies:
  random    -- integer polygons from rejection sampling
  bent-star -- a pentagram with some edges subdivided and the new points
               jittered, keeping the 5-crossing combinatorics while raising
               the rank of the height-constraint system

The number of realizable resolutions of a shadow with c crossings is capped
by the number of cells that c concurrent hyperplanes cut in r-space, where
r is the rank of the constraint functionals: 2*sum(C(c-1,k), k<r).  The
search therefore skips any candidate whose rank is too small for the target
before touching the 2^c feasibility checks.

Every run appends a JSON log entry (parameters, counters, found instances)
whether or not it succeeds.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from plknots.analysis import EMPTY_ENTRY
from plknots.diagram import CrossingAssignment, Pseudodiagram, Shadow, resolution_from_bits
from plknots.errors import GeneralPositionViolation, PlknotsError
from plknots.generators import gen_star
from plknots.geometry import PlanePoint
from plknots.invariants import classify
from plknots.realizability import build_constraints, check_feasibility
from plknots.shadow_io import write_shadow


def parse_target(text: str) -> dict[str, Fraction]:
    """Parse "0_1=5/8,3_1=1/16,empty=1/4" into an exact distribution."""
    target: dict[str, Fraction] = {}
    for part in text.split(","):
        name, _, value = part.partition("=")
        if not value:
            raise SystemExit(f"bad target entry {part!r}")
        target[name.strip()] = Fraction(value.strip())
    if sum(target.values()) != 1:
        raise SystemExit("target probabilities must sum to 1")
    return target


def max_cells(crossings: int, rank: int) -> int:
    """Cells of `crossings` concurrent hyperplanes in rank-dimensional space."""
    return 2 * sum(math.comb(crossings - 1, k) for k in range(rank))


def min_rank_for(crossings: int, feasible_count: int) -> int:
    rank = 1
    while max_cells(crossings, rank) < feasible_count:
        rank += 1
    return rank


def constraint_rank(shadow: Shadow) -> int:
    """Rank over Q of the per-crossing height functionals."""
    total = {
        cid: CrossingAssignment.FIRST_OVER for cid in range(len(shadow.crossings))
    }
    rows = [dict(row.coeffs) for row in build_constraints(Pseudodiagram(shadow, total)).rows]
    rank = 0
    pivots: list[dict[int, Fraction]] = []
    for row in rows:
        current = dict(row)
        for pivot in pivots:
            lead = next(iter(pivot))
            if lead in current:
                factor = current[lead] / pivot[lead]
                for var, coeff in pivot.items():
                    value = current.get(var, Fraction(0)) - factor * coeff
                    if value:
                        current[var] = value
                    else:
                        current.pop(var, None)
        if current:
            pivots.append(current)
            rank += 1
    return rank


def random_candidates(rng: random.Random, vertices: int):
    span = 1000
    while True:
        points = [
            PlanePoint(Fraction(rng.randint(-span, span)), Fraction(rng.randint(-span, span)))
            for _ in range(vertices)
        ]
        try:
            yield Shadow.from_vertices(points)
        except (GeneralPositionViolation, PlknotsError, ValueError):
            yield None


def bent_star_candidates(rng: random.Random, vertices: int):
    """Pentagram with (vertices - 5) subdivided, jittered edges."""
    base = list(gen_star(5).vertices)
    bends = vertices - 5
    if not 1 <= bends <= 5:
        raise SystemExit("bent-star needs 6..10 vertices")
    while True:
        edges = sorted(rng.sample(range(5), bends), reverse=True)
        points = [PlanePoint(p.x, p.y) for p in base]
        try:
            for edge in edges:
                a = points[edge]
                b = points[(edge + 1) % len(points)]
                t = Fraction(rng.randint(20, 80), 100)
                mid = a + (b - a).scaled(t)
                # radial jitter keeps the subdivision off the chord
                offset = PlanePoint(
                    Fraction(rng.randint(-2500, 2500)), Fraction(rng.randint(-2500, 2500))
                )
                points.insert(edge + 1, mid + offset)
            yield Shadow.from_vertices(points)
        except (GeneralPositionViolation, PlknotsError, ValueError):
            yield None


def run_search(args: argparse.Namespace) -> dict:
    target = parse_target(args.target)
    empty_prob = target.get(EMPTY_ENTRY, target.get("empty", Fraction(0)))
    total = 2**args.crossings
    feasible_count = int((1 - empty_prob) * total)
    needed_rank = min_rank_for(args.crossings, feasible_count)

    rng = random.Random(args.seed)
    maker = (
        bent_star_candidates(rng, args.vertices)
        if args.strategy == "bent-star"
        else random_candidates(rng, args.vertices)
    )

    counters = {
        "attempts": 0,
        "invalid_geometry": 0,
        "wrong_crossing_count": 0,
        "rank_skips": 0,
        "feasible_count_mismatch": 0,
        "wereset_mismatch": 0,
    }
    found: list[dict] = []
    start = time.time()
    goal = dict(target)
    goal.pop("empty", None)
    goal.pop(EMPTY_ENTRY, None)

    for attempt in range(args.budget):
        counters["attempts"] = attempt + 1
        shadow = next(maker)
        if shadow is None:
            counters["invalid_geometry"] += 1
            continue
        if len(shadow.crossings) != args.crossings:
            counters["wrong_crossing_count"] += 1
            continue
        if constraint_rank(shadow) < needed_rank:
            counters["rank_skips"] += 1
            continue
        # Feasibility first: counting is much cheaper than classifying, and a
        # resolution shares its status and knot class with its bitwise
        # complement (negate the heights), so half the words suffice.
        half = [
            resolution
            for word in range(total // 2)
            for resolution in [resolution_from_bits(shadow, format(word, f"0{args.crossings}b"))]
            if check_feasibility(build_constraints(resolution)).feasible
        ]
        if 2 * len(half) != feasible_count:
            counters["feasible_count_mismatch"] += 1
            continue
        entries: dict[str, Fraction] = {}
        for resolution in half:
            name = classify(resolution).name
            entries[name] = entries.get(name, Fraction(0)) + Fraction(2, total)
        if entries != goal:
            counters["wereset_mismatch"] += 1
            continue
        found.append(
            {
                "attempt": attempt,
                "document": json.loads(write_shadow(Pseudodiagram.bare(shadow))),
                "wereset": {
                    **{k: str(v) for k, v in sorted(entries.items())},
                    "empty": str(empty_prob),
                },
            }
        )
        if args.first:
            break

    entry = {
        "strategy": args.strategy,
        "vertices": args.vertices,
        "crossings": args.crossings,
        "target": {k: str(v) for k, v in target.items()},
        "seed": args.seed,
        "budget": args.budget,
        "needed_rank": needed_rank,
        "counters": counters,
        "found": found,
        "elapsed_s": round(time.time() - start, 1),
    }
    return entry


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--strategy", choices=["random", "bent-star"], default="random")
    parser.add_argument("--vertices", type=int, required=True)
    parser.add_argument("--crossings", type=int, required=True)
    parser.add_argument("--target", required=True, help='e.g. "0_1=3/4,empty=1/4"')
    parser.add_argument("--budget", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--first", action="store_true", help="stop at the first hit")
    parser.add_argument("--log", required=True, help="append the run entry to this JSON file")
    args = parser.parse_args()

    entry = run_search(args)
    log_path = Path(args.log)
    existing = json.loads(log_path.read_text()) if log_path.exists() else {"runs": []}
    existing["runs"].append(entry)
    log_path.write_text(json.dumps(existing, indent=2) + "\n")

    status = "FOUND" if entry["found"] else "NOT FOUND"
    print(f"{status}: {entry['counters']}  elapsed {entry['elapsed_s']}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
