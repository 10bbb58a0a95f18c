"""Batch command line: generate shadows, analyze them, serve the API.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 enumeration budget
exceeded.  ``--format json`` output is machine-stable: keys are sorted and
identical invocations produce byte-identical text.  Bit strings map to
crossing ids in ascending id order; character ``1`` puts the lower-numbered
edge on top.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .analysis import (
    EMPTY_ENTRY,
    WeReMode,
    WeReSet,
    forcing_number,
    max_forced,
    were_set,
)
from .diagram import (
    CrossingAssignment,
    Pseudodiagram,
    resolution_from_bits,
)
from .errors import (
    BudgetExceededError,
    DegenerateIntersection,
    ExhaustedRetriesError,
    GeneralPositionViolation,
    ParseError,
    ValidationError,
)
from .generators import gen_random, gen_star, gen_torus
from .realizability import (
    build_constraints,
    check_feasibility,
    is_partial_realizable,
    minimal_infeasible_core,
)
from .shadow_io import read_shadow, write_shadow

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; the contract here wants 1
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError(message)


def _emit_json(payload) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _load(path: str) -> Pseudodiagram:
    return read_shadow(Path(path).read_bytes())


def _write_document(diagram: Pseudodiagram, out: Optional[str]) -> None:
    data = write_shadow(diagram)
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _apply_bits(diagram: Pseudodiagram, bits: Optional[str]) -> Pseudodiagram:
    if bits is None:
        return diagram
    return resolution_from_bits(diagram.shadow, bits)


def _assignment_strings(assignment) -> dict[str, str]:
    return {str(cid): value.value for cid, value in sorted(assignment.items())}


def _were_payload(were: WeReSet) -> dict:
    entries = {name: str(prob) for name, prob in were.entries.items()}
    return {
        "mode": were.mode.value,
        "entries": entries,
        "empty": str(were.empty_prob),
    }


def _print_were_table(were: WeReSet) -> None:
    for name, prob in sorted(were.entries.items()):
        print(f"{name} = {prob}")
    if were.empty_prob:
        print(f"{EMPTY_ENTRY} = {were.empty_prob}")


def cmd_gen(args: argparse.Namespace) -> int:
    if args.shape == "star":
        shadow = gen_star(args.n)
    elif args.shape == "torus":
        shadow = gen_torus(args.n, args.subdiv)
    else:
        shadow = gen_random(args.vertices, args.seed)
    _write_document(Pseudodiagram.bare(shadow), args.output)
    return EXIT_OK


def cmd_crossings(args: argparse.Namespace) -> int:
    diagram = _load(args.file)
    shadow = diagram.shadow
    rows = []
    for cid, c in enumerate(shadow.crossings):
        rows.append(
            {
                "id": cid,
                "edge_a": c.edge_a,
                "edge_b": c.edge_b,
                "s": str(c.s),
                "t": str(c.t),
                "point": [str(c.point.x), str(c.point.y)],
                "assignment": diagram.assignment.get(cid, None),
            }
        )
    if args.format == "json":
        payload = [
            {**row, "assignment": row["assignment"].value if row["assignment"] else None}
            for row in rows
        ]
        _emit_json({"crossings": payload})
    else:
        print(f"{'id':>3}  {'edges':>8}  {'s':>12}  {'t':>12}  assignment")
        for row in rows:
            value = row["assignment"].value if row["assignment"] else "-"
            edges = f"({row['edge_a']},{row['edge_b']})"
            print(f"{row['id']:>3}  {edges:>8}  {row['s']:>12}  {row['t']:>12}  {value}")
    return EXIT_OK


def cmd_realizable(args: argparse.Namespace) -> int:
    diagram = _apply_bits(_load(args.file), args.bits)
    if diagram.is_resolution():
        system = build_constraints(diagram)
        result = check_feasibility(system)
        feasible = result.feasible
        witness = result.witness
        core = None if feasible else minimal_infeasible_core(system)
    else:
        # partial assignment: decide whether some completion embeds
        feasible, witness = is_partial_realizable(diagram)
        core = None
        if not feasible:
            core = minimal_infeasible_core(build_constraints(diagram))
    if args.format == "json":
        payload = {
            "status": "feasible" if feasible else "infeasible",
            "witness": (
                {str(i): str(h) for i, h in enumerate(witness)} if witness else None
            ),
            "core": sorted(core) if core is not None else None,
        }
        _emit_json(payload)
    else:
        print("FEASIBLE" if feasible else "INFEASIBLE")
        if witness:
            for i, h in enumerate(witness):
                print(f"z{i} = {h}")
        if core is not None:
            print("core:", " ".join(str(c) for c in sorted(core)))
    return EXIT_OK


def cmd_were(args: argparse.Namespace) -> int:
    diagram = _load(args.file)
    mode = WeReMode.SMOOTH if args.smooth else WeReMode.PL
    were = were_set(diagram, mode)
    if args.format == "json":
        _emit_json(_were_payload(were))
    else:
        _print_were_table(were)
    if args.plot:
        from .plotting import plot_were

        plot_were(were, args.plot)
    return EXIT_OK


def cmd_forcing(args: argparse.Namespace) -> int:
    diagram = _load(args.file)
    report = forcing_number(diagram, max_size=args.max_size)
    if args.format == "json":
        payload = {
            "forcing_number": report.forcing_number,
            "witness_set": sorted(report.witness_set) if report.witness_set else None,
            "witness_assignment": (
                _assignment_strings(report.witness_assignment)
                if report.witness_assignment
                else None
            ),
            "derived": (
                [[cid, value.value] for cid, value in report.propagation_trace.derived]
                if report.propagation_trace
                else None
            ),
            "vacuous": report.vacuous,
        }
        _emit_json(payload)
    else:
        if report.forcing_number is None:
            print("forcing number: none")
        else:
            print(f"forcing number: {report.forcing_number}")
            print("witness set:", " ".join(str(c) for c in sorted(report.witness_set)))
            witness = " ".join(
                f"{cid}={value.value}"
                for cid, value in sorted(report.witness_assignment.items())
            )
            print(f"witness: {witness}")
            derived = " ".join(
                f"{cid}={value.value}" for cid, value in report.propagation_trace.derived
            )
            print(f"derived: {derived or '-'}")
            if report.vacuous:
                print("vacuous: true")
    return EXIT_OK


def cmd_maxforced(args: argparse.Namespace) -> int:
    diagram = _load(args.file)
    try:
        report = max_forced(diagram, budget=args.budget)
    except BudgetExceededError as exc:
        report = exc.partial
        _print_maxforced(report, args.format)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _print_maxforced(report, args.format)
    return EXIT_OK


def _print_maxforced(report, fmt: str) -> None:
    if fmt == "json":
        payload = {
            "max_forced": report.max_forced,
            "witness_assignment": _assignment_strings(report.witness_assignment),
            "states_examined": report.states_examined,
            "complete": report.complete,
        }
        _emit_json(payload)
    else:
        print(f"max forced: {report.max_forced}")
        witness = " ".join(
            f"{cid}={value.value}"
            for cid, value in sorted(report.witness_assignment.items())
        )
        print(f"witness: {witness or '-'}")
        print(f"states examined: {report.states_examined}")
        print(f"complete: {'true' if report.complete else 'false'}")


def cmd_iis(args: argparse.Namespace) -> int:
    diagram = _apply_bits(_load(args.file), args.bits)
    core = minimal_infeasible_core(build_constraints(diagram))
    if args.format == "json":
        _emit_json({"core": sorted(core)})
    else:
        print("core:", " ".join(str(c) for c in sorted(core)))
    return EXIT_OK


def _parse_assignment_value(text: str) -> Optional[CrossingAssignment]:
    if text == "none":
        return None
    try:
        return CrossingAssignment(text)
    except ValueError:
        raise ValidationError(
            f"bad assignment value {text!r}; use first_over, second_over or none"
        ) from None


def cmd_assign(args: argparse.Namespace) -> int:
    diagram = _load(args.file)
    for item in args.set or []:
        for pair in item.split(","):
            if "=" not in pair:
                raise ValidationError(f"bad --set entry {pair!r}; expected id=value")
            cid_text, value_text = pair.split("=", 1)
            try:
                cid = int(cid_text)
            except ValueError:
                raise ValidationError(f"bad crossing id {cid_text!r}") from None
            diagram = diagram.with_assignment(cid, _parse_assignment_value(value_text))
    for item in args.clear or []:
        for cid_text in item.split(","):
            try:
                cid = int(cid_text)
            except ValueError:
                raise ValidationError(f"bad crossing id {cid_text!r}") from None
            diagram = diagram.with_assignment(cid, None)
    _write_document(diagram, args.output)
    return EXIT_OK


def cmd_draw(args: argparse.Namespace) -> int:
    from .plotting import draw_diagram

    diagram = _apply_bits(_load(args.file), args.bits)
    draw_diagram(diagram, args.output)
    print(args.output)
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    from .plotting import draw_diagram, plot_were

    diagram = _load(args.file)
    mode = WeReMode.SMOOTH if args.smooth else WeReMode.PL
    were = were_set(diagram, mode)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)

    csv_path = outdir / "report.csv"
    with csv_path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["class", "probability"])
        for name, prob in sorted(were.entries.items()):
            writer.writerow([name, str(prob)])
        if were.empty_prob:
            writer.writerow([EMPTY_ENTRY, str(were.empty_prob)])

    diagram_path = draw_diagram(diagram, outdir / "diagram.png")
    were_path = plot_were(were, outdir / "wereset.png")
    for path in (csv_path, diagram_path, were_path):
        print(path)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        inline_threshold=args.inline_threshold, static_dir=args.static_dir
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="plknots",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a shadow document")
    gen_sub = gen.add_subparsers(dest="shape", required=True)
    star = gen_sub.add_parser("star", help="{n/2} star polygon, n odd >= 5")
    star.add_argument("--n", type=int, required=True)
    star.set_defaults(func=cmd_gen, shape="star")
    torus = gen_sub.add_parser("torus", help="(n,2) torus pattern with subdivided edges")
    torus.add_argument("--n", type=int, required=True)
    torus.add_argument("--subdiv", type=int, required=True)
    torus.set_defaults(func=cmd_gen, shape="torus")
    rand = gen_sub.add_parser("random", help="seeded random polygon in general position")
    rand.add_argument("--vertices", type=int, required=True)
    rand.add_argument("--seed", type=int, required=True)
    rand.set_defaults(func=cmd_gen, shape="random")
    for p in (star, torus, rand):
        p.add_argument("-o", "--output", help="write the document here (default stdout)")

    def common(p, bits=False, fmt=True):
        p.add_argument("file", help="shadow document")
        if bits:
            p.add_argument(
                "--bits",
                help="total assignment, one 0/1 char per crossing id ascending; 1 = lower edge on top",
            )
        if fmt:
            p.add_argument("--format", choices=["table", "json"], default="table")

    crossings = sub.add_parser("crossings", help="list crossings with exact parameters")
    common(crossings)
    crossings.set_defaults(func=cmd_crossings)

    realizable = sub.add_parser("realizable", help="decide strict height feasibility")
    common(realizable, bits=True)
    realizable.set_defaults(func=cmd_realizable)

    were = sub.add_parser("were", help="exact WeRe-set over all completions")
    common(were)
    were.add_argument("--smooth", action="store_true", help="classify every completion")
    were.add_argument("--plot", help="also write a bar chart PNG here")
    were.set_defaults(func=cmd_were)

    forcing = sub.add_parser("forcing", help="minimum choices that force the rest")
    common(forcing)
    forcing.add_argument("--max-size", type=int, default=None)
    forcing.set_defaults(func=cmd_forcing)

    maxforced = sub.add_parser("maxforced", help="most crossings forced by any partial assignment")
    common(maxforced)
    maxforced.add_argument("--budget", type=int, default=600_000)
    maxforced.set_defaults(func=cmd_maxforced)

    iis = sub.add_parser("iis", help="minimal infeasible core of an unrealizable assignment")
    common(iis, bits=True)
    iis.set_defaults(func=cmd_iis)

    assign = sub.add_parser("assign", help="set or clear assignments in a document")
    assign.add_argument("file", help="shadow document")
    assign.add_argument("--set", action="append", metavar="ID=VALUE[,ID=VALUE...]")
    assign.add_argument("--clear", action="append", metavar="ID[,ID...]")
    assign.add_argument("-o", "--output", help="write the document here (default stdout)")
    assign.set_defaults(func=cmd_assign)

    draw = sub.add_parser("draw", help="render the diagram to an image")
    draw.add_argument("file", help="shadow document")
    draw.add_argument("--bits", help="render this resolution instead of the stored one")
    draw.add_argument("-o", "--output", required=True, help="image path (.png)")
    draw.set_defaults(func=cmd_draw)

    report = sub.add_parser(
        "report", help="write report.csv plus diagram and WeRe-set figures to a directory"
    )
    report.add_argument("file", help="shadow document")
    report.add_argument("--smooth", action="store_true")
    report.add_argument("-o", "--output", required=True, help="output directory")
    report.set_defaults(func=cmd_report)

    serve = sub.add_parser("serve", help="run the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--static-dir", default=None, help="serve this directory at /")
    serve.add_argument(
        "--inline-threshold",
        type=int,
        default=12,
        help="run queries with at most this many precrossings synchronously",
    )
    serve.set_defaults(func=cmd_serve)

    return parser


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except _UsageError:
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (
        ParseError,
        ValidationError,
        GeneralPositionViolation,
        DegenerateIntersection,
        ExhaustedRetriesError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entry_point() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    entry_point()
