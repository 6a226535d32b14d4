import numpy as np
import pytest

from semitsp.graph import build_graph

G3_W = [[0, 1, 4], [1, 0, 1], [4, 1, 0]]
G4_W = [[0, 1, 10, 1], [1, 0, 1, 10], [10, 1, 0, 1], [1, 10, 1, 0]]


def ones(n):
    return build_graph(np.ones((n, n)) - np.eye(n))


def random_graph(rng, n, lo=0.01, hi=1.0):
    w = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    w[iu] = rng.uniform(lo, hi, size=len(iu[0]))
    return build_graph(w + w.T)


@pytest.fixture
def g3():
    return build_graph(G3_W)


@pytest.fixture
def g4():
    return build_graph(G4_W)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
