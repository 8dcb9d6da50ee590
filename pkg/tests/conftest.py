from fractions import Fraction

import pytest

from stackprice.core.io import instance_from_dict


def example_a_doc(cost="5"):
    return {
        "game": "edge",
        "vertices": ["s", "t"],
        "items": [
            {"id": "f1", "kind": "fixed", "cost": cost, "u": "s", "v": "t"},
            {"id": "e1", "kind": "priceable", "u": "s", "v": "t"},
        ],
        "followers": [{"type": "shortest_path", "source": "s", "sink": "t"}],
    }


def instance_c_doc():
    return {
        "game": "vertex",
        "vertices": ["a1", "a2", "b1", "b2"],
        "items": [
            {"id": "a1", "kind": "priceable"},
            {"id": "a2", "kind": "fixed", "cost": "3"},
            {"id": "b1", "kind": "fixed", "cost": "2"},
            {"id": "b2", "kind": "fixed", "cost": "4"},
        ],
        "edges": [
            {"id": "a1b1", "u": "a1", "v": "b1"},
            {"id": "a1b2", "u": "a1", "v": "b2"},
            {"id": "a2b2", "u": "a2", "v": "b2"},
        ],
        "followers": [{"type": "vertex_cover", "edges": ["a1b1", "a1b2", "a2b2"]}],
    }


@pytest.fixture
def example_a():
    return instance_from_dict(example_a_doc())


@pytest.fixture
def instance_c():
    return instance_from_dict(instance_c_doc())


def F(x):
    return Fraction(x)


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
