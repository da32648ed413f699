from pathlib import Path

import pytest

from nilgraph.graph import load_graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# vertex names used by the worked square examples
ALPHA, BETA, GAMMA, DELTA = range(4)


def cycle(*cycles, n=4):
    """Permutation images from cycle notation, e.g. cycle((0, 2), (1, 3))."""
    images = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            images[a] = b
    return tuple(images)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def ex23():
    return load_graph(FIXTURES / "example23.json")


@pytest.fixture
def ex25():
    return load_graph(FIXTURES / "example25.json")


@pytest.fixture
def ex41():
    return load_graph(FIXTURES / "example41.json")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
