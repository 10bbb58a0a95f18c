import json
from importlib import resources

import pytest

import _acceptance_report
from plknots.diagram import Pseudodiagram, Shadow
from plknots.generators import gen_random, gen_star, gen_torus
from plknots.shadow_io import read_shadow


def load_bundled_shadow(resource: str) -> Pseudodiagram:
    text = resources.files("plknots.data").joinpath(resource).read_text()
    return read_shadow(json.dumps(json.loads(text)["document"]))


def _corpus() -> list[tuple[str, Shadow]]:
    """The shadows most tests quantify over.

    Mix of the canonical generators, seeded random polygons and the bundled
    searched instances; crossing counts range from 0 to 9.
    """
    shadows = [
        ("star5", gen_star(5)),
        ("star7", gen_star(7)),
        ("torus32", gen_torus(3, 2)),
        ("torus33", gen_torus(3, 3)),
        ("torus52", gen_torus(5, 2)),
        ("torus72", gen_torus(7, 2)),
        ("torus92", gen_torus(9, 2)),
        ("searched53", load_bundled_shadow("searched_5edge_3crossing.json").shadow),
        ("searched75", load_bundled_shadow("searched_7edge_5crossing.json").shadow),
    ]
    for vertices, seed in [(4, 1), (5, 2), (5, 9), (6, 3), (6, 11), (7, 4), (8, 5)]:
        shadows.append((f"rand{vertices}s{seed}", gen_random(vertices, seed)))
    return shadows


@pytest.fixture(scope="session")
def corpus() -> list[tuple[str, Shadow]]:
    return _corpus()


@pytest.fixture(scope="session")
def pentagram() -> Shadow:
    return gen_star(5)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_report.LINES:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_report.LINES:
            terminalreporter.write_line(line)
