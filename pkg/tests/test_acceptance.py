"""End-to-end acceptance checks.

Each test covers one advertised guarantee and records a single pass/fail
line in the terminal summary.  Tests compute the verdict first, record it,
then assert, so the summary always shows one line per criterion.
"""

import json
import random
import time
from fractions import Fraction
from importlib import resources
from itertools import combinations, product
from pathlib import Path

from _acceptance_report import record
from oracles import brute_bracket, fm_feasible
from plknots.analysis import WeReMode, core_catalog, forces, forcing_number, were_set
from plknots.diagram import (
    CrossingAssignment,
    Pseudodiagram,
    mirror,
    pd_code,
    resolution_from_bits,
)
from plknots.generators import gen_torus
from plknots.invariants import (
    bracket_from_pd,
    classify,
    determinant_from_pd,
    reference_table,
)
from plknots.realizability import (
    ConstraintRow,
    ConstraintSystem,
    build_constraints,
    check_feasibility,
    is_partial_realizable,
    minimal_infeasible_core,
)
from plknots.shadow_io import read_shadow

F = Fraction
FIRST = CrossingAssignment.FIRST_OVER
SECOND = CrossingAssignment.SECOND_OVER
EMPTY = "∅"

REPO_ROOT = Path(__file__).resolve().parent.parent


def _criterion(label: str, passed: bool, detail: str = ""):
    record(passed, label)
    assert passed, detail or label


def _distribution(diagram, mode) -> dict[str, Fraction]:
    ws = were_set(diagram, mode)
    out = dict(ws.entries)
    if ws.empty_prob:
        out[EMPTY] = ws.empty_prob
    return out


def _all_resolutions(shadow):
    c = len(shadow.crossings)
    for word in range(2**c):
        bits = format(word, f"0{c}b") if c else ""
        yield resolution_from_bits(shadow, bits)


def test_c01_pentagram_pl_wereset(pentagram):
    start = time.perf_counter()
    got = _distribution(pentagram, WeReMode.PL)
    elapsed = time.perf_counter() - start
    expected = {"0_1": F(5, 8), EMPTY: F(3, 8)}
    _criterion(
        "pentagram PL WeRe-set is {0_1: 5/8, ∅: 3/8} in < 5 s",
        got == expected and elapsed < 5.0,
        f"got {got} in {elapsed:.2f}s",
    )


def test_c02_pentagram_smooth_wereset(pentagram):
    got = _distribution(pentagram, WeReMode.SMOOTH)
    expected = {"0_1": F(5, 8), "3_1": F(5, 16), "5_1": F(1, 16)}
    _criterion(
        "pentagram SMOOTH WeRe-set is {0_1: 5/8, 3_1: 5/16, 5_1: 1/16}",
        got == expected,
        f"got {got}",
    )


def _cascade_shape(shadow, assignment) -> tuple[int, ...]:
    """Round-parallel forcing: how many crossings become forced per round."""
    current = dict(assignment)
    open_ids = set(range(len(shadow.crossings))) - set(current)
    shape = []
    while open_ids:
        forced_now = {}
        for cid in sorted(open_ids):
            options = [
                value
                for value in (FIRST, SECOND)
                if is_partial_realizable(
                    Pseudodiagram.bare(shadow).with_assignments({**current, cid: value})
                )[0]
            ]
            if len(options) == 1:
                forced_now[cid] = options[0]
        if not forced_now:
            break
        shape.append(len(forced_now))
        current.update(forced_now)
        open_ids -= set(forced_now)
    return tuple(shape)


def test_c03_pentagram_forcing_number(pentagram):
    start = time.perf_counter()
    report = forcing_number(pentagram)
    number_ok = report.forcing_number == 2

    # The claim asks for a witness whose propagation derives two crossings
    # in one round and the last in a second round; accept any forcing pair.
    shapes = set()
    for subset in combinations(range(5), 2):
        for values in product((FIRST, SECOND), repeat=2):
            assignment = dict(zip(subset, values))
            if forces(pentagram, frozenset(subset), assignment):
                shapes.add(_cascade_shape(pentagram, assignment))
    elapsed = time.perf_counter() - start
    _criterion(
        "pentagram forcing number is 2 with a 2-then-1 cascade in < 60 s",
        number_ok and (2, 1) in shapes and elapsed < 60.0,
        f"forcing_number={report.forcing_number}, cascade shapes={sorted(shapes)}, "
        f"elapsed {elapsed:.1f}s",
    )


def test_c04_torus_resolutions_all_feasible():
    start = time.perf_counter()
    verdict = True
    for n in (7, 9):
        shadow = gen_torus(n, 2)
        for d in _all_resolutions(shadow):
            if not check_feasibility(build_constraints(d)).feasible:
                verdict = False
    elapsed = time.perf_counter() - start
    _criterion(
        "(7,2) and (9,2) torus shadows: all 128 + 512 resolutions feasible in < 60 s",
        verdict and elapsed < 60.0,
        f"elapsed {elapsed:.1f}s",
    )


def test_c05_stick_bound(corpus):
    verdict = True
    detail = []
    for name, shadow in corpus:
        if shadow.num_edges > 5:
            continue
        for d in _all_resolutions(shadow):
            if len(shadow.crossings) and not check_feasibility(
                build_constraints(d)
            ).feasible:
                continue
            knot = classify(d)
            if knot.name != "0_1":
                verdict = False
                detail.append((name, knot.name))
    _criterion(
        "stick bound: every feasible resolution of a ≤ 5-edge shadow is an unknot",
        verdict,
        f"non-trivial classes found: {detail}",
    )


def test_c06_dominance(corpus):
    verdict = True
    detail = []
    for name, shadow in corpus:
        if len(shadow.crossings) > 10:
            continue
        pl = were_set(shadow, WeReMode.PL)
        smooth = were_set(shadow, WeReMode.SMOOTH)
        deficit = F(0)
        for cls, p_smooth in smooth.entries.items():
            p_pl = pl.entries.get(cls, F(0))
            if p_pl > p_smooth:
                verdict = False
                detail.append((name, cls))
            deficit += p_smooth - p_pl
        if deficit != pl.empty_prob:
            verdict = False
            detail.append((name, "deficit"))
    _criterion(
        "dominance: classwise PL ≤ SMOOTH and the deficit equals the ∅ mass",
        verdict,
        f"violations: {detail}",
    )


def _random_system(rng: random.Random) -> ConstraintSystem:
    num_vars = rng.randint(2, 6)
    rows = []
    for rid in range(rng.randint(2, 8)):
        support = rng.sample(range(num_vars), rng.randint(2, min(4, num_vars)))
        coeffs = tuple(
            (v, Fraction(rng.randint(-9, 9), rng.randint(1, 4))) for v in sorted(support)
        )
        rows.append(ConstraintRow(rid, coeffs))
    return ConstraintSystem(num_vars, tuple(rows))


def test_c07_oracle_agreement(pentagram):
    rng = random.Random(0xACCE5)
    verdict = all(
        check_feasibility(s).feasible == fm_feasible(s)
        for s in (_random_system(rng) for _ in range(500))
    )
    for shadow in (pentagram, gen_torus(7, 2), gen_torus(9, 2)):
        for d in _all_resolutions(shadow):
            system = build_constraints(d)
            if check_feasibility(system).feasible != fm_feasible(system):
                verdict = False
    _criterion(
        "simplex feasibility agrees with Fourier-Motzkin on 500 random systems "
        "and every pentagram/torus system",
        verdict,
    )


def test_c08_forcing_equivalence(corpus):
    verdict = True
    detail = []
    for name, shadow in corpus:
        c = len(shadow.crossings)
        if not 1 <= c <= 6:
            continue
        feasible_words = [
            fm_feasible(build_constraints(d)) for d in _all_resolutions(shadow)
        ]

        def unique_completion(assignment: dict[int, CrossingAssignment]) -> bool:
            hits = 0
            for word in range(2**c):
                consistent = all(
                    (word >> (c - 1 - cid)) & 1 == (1 if value is FIRST else 0)
                    for cid, value in assignment.items()
                )
                if consistent and feasible_words[word]:
                    hits += 1
            return hits == 1

        for size in range(1, c + 1):
            for subset in combinations(range(c), size):
                for values in product((FIRST, SECOND), repeat=size):
                    assignment = dict(zip(subset, values))
                    got = forces(shadow, frozenset(subset), assignment)
                    want = unique_completion(assignment)
                    if got != want:
                        verdict = False
                        detail.append((name, assignment))
    _criterion(
        "forcing predicate ⇔ unique realizable completion "
        "(exhaustive on ≤ 6-crossing shadows)",
        verdict,
        f"mismatches: {detail[:5]}",
    )


def test_c09_mirror_invariance(corpus):
    verdict = True
    detail = []
    for name, shadow in corpus:
        bare = Pseudodiagram.bare(shadow)
        reflected = mirror(bare)
        for mode in (WeReMode.PL, WeReMode.SMOOTH):
            if _distribution(bare, mode) != _distribution(reflected, mode):
                verdict = False
                detail.append((name, f"wereset {mode.value}"))
        if core_catalog(bare) != core_catalog(reflected):
            verdict = False
            detail.append((name, "core catalog"))
        for d in _all_resolutions(shadow):
            m = mirror(d)
            feas_d = check_feasibility(build_constraints(d))
            feas_m = check_feasibility(build_constraints(m))
            if feas_d.feasible != feas_m.feasible:
                verdict = False
                detail.append((name, "feasibility"))
                continue
            if not feas_d.feasible:
                if minimal_infeasible_core(
                    build_constraints(d)
                ) != minimal_infeasible_core(build_constraints(m)):
                    verdict = False
                    detail.append((name, "core"))
            elif len(shadow.crossings) and classify(d) != classify(m):
                verdict = False
                detail.append((name, "classification"))
    _criterion(
        "mirror invariance of feasibility, cores, WeRe-sets and classification "
        "(full corpus)",
        verdict,
        f"violations: {detail[:5]}",
    )


def test_c10_invariant_engine(corpus):
    verdict = True
    detail = []
    for name, shadow in corpus:
        c = len(shadow.crossings)
        if not 1 <= c <= 8:
            continue
        for d in _all_resolutions(shadow):
            code = pd_code(d)
            if bracket_from_pd(code) != brute_bracket(code):
                verdict = False
                detail.append((name, "bracket"))

    table = reference_table()
    canonical = {
        "0_1": 1, "3_1": 3, "4_1": 5, "5_1": 5, "5_2": 7,
        "6_1": 9, "6_2": 11, "6_3": 13, "7_1": 7, "7_2": 11,
        "7_3": 13, "7_4": 15, "7_5": 17, "7_6": 19, "7_7": 21,
    }
    if set(table.fingerprints) != set(canonical):
        verdict = False
        detail.append(("table", "names"))
    for knot, fp in table.fingerprints.items():
        if fp.determinant != canonical[knot]:
            verdict = False
            detail.append((knot, "determinant"))
        if abs(fp.jones.evaluate_at_fourth_root()) != fp.determinant:
            verdict = False
            detail.append((knot, "jones-vs-determinant"))

    # Recompute the advertised determinants from the stored diagrams via the
    # integer-matrix route; nothing here reuses the table's own numbers.
    stored = json.loads(
        resources.files("plknots.data").joinpath("reference_pd_codes.json").read_text()
    )
    pds = {item["name"]: [tuple(q) for q in item["pd"]] for item in stored["entries"]}
    for knot, want in (("3_1", 3), ("4_1", 5), ("5_1", 5)):
        if determinant_from_pd(pds[knot]) != want:
            verdict = False
            detail.append((knot, "recomputed determinant"))

    _criterion(
        "memoized bracket equals brute-force state sum (≤ 8 crossings) and the "
        "determinant cross-check passes for every table entry",
        verdict,
        f"failures: {detail[:5]}",
    )


def test_c11_bundled_search_artifact():
    raw = json.loads(
        resources.files("plknots.data")
        .joinpath("searched_5edge_3crossing.json")
        .read_text()
    )
    diagram = read_shadow(json.dumps(raw["document"]))
    shadow = diagram.shadow
    got = _distribution(shadow, WeReMode.PL)
    expected = {"0_1": F(3, 4), EMPTY: F(1, 4)}
    stored = {
        ("∅" if key == "empty" else key): Fraction(value)
        for key, value in raw["wereset_pl"].items()
    }
    _criterion(
        "bundled 5-edge 3-crossing reconstruction has PL WeRe-set {0_1: 3/4, ∅: 1/4}",
        raw.get("reconstruction") is True
        and shadow.num_edges == 5
        and len(shadow.crossings) == 3
        and got == expected
        and stored == expected,
        f"got {got}",
    )


def test_c12_five_crossing_target_searches():
    harness = REPO_ROOT / "scripts" / "search_wereset.py"
    log_path = resources.files("plknots.data").joinpath("wereset_search_log.json")
    log = json.loads(log_path.read_text())

    target_b = {"0_1": "5/8", "3_1": "1/16", "∅": "5/16"}
    target_c = {"0_1": "5/8", "3_1": "5/16", "∅": "1/16"}
    runs_b = [r for r in log["runs"] if r["target"] == target_b and r["crossings"] == 5]
    runs_c = [r for r in log["runs"] if r["target"] == target_c and r["crossings"] == 5]

    # Whatever the searches found must recompute to the target it claims.
    found_ok = True
    for run in log["runs"]:
        want = {
            ("∅" if k == "empty" else k): Fraction(v) for k, v in run["target"].items()
        }
        for hit in run["found"]:
            diagram = read_shadow(json.dumps(hit["document"]))
            if _distribution(diagram.shadow, WeReMode.PL) != want:
                found_ok = False

    # The easier of the two targets was found and is bundled; verify it.
    bundled = json.loads(
        resources.files("plknots.data")
        .joinpath("searched_7edge_5crossing.json")
        .read_text()
    )
    shadow = read_shadow(json.dumps(bundled["document"])).shadow
    bundled_ok = (
        bundled.get("reconstruction") is True
        and shadow.num_edges == 7
        and len(shadow.crossings) == 5
        and _distribution(shadow, WeReMode.PL)
        == {"0_1": F(5, 8), "3_1": F(5, 16), EMPTY: F(1, 16)}
    )

    _criterion(
        "5-crossing target searches: harness committed, log covers both targets, "
        "every hit verifies",
        harness.is_file() and bool(runs_b) and bool(runs_c) and found_ok and bundled_ok,
        f"runs_b={len(runs_b)}, runs_c={len(runs_c)}, found_ok={found_ok}, "
        f"bundled_ok={bundled_ok}",
    )
