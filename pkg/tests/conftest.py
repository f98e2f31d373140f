import numpy as np
import pytest

from fixpoint.core import Graph, System, empty_graph, path_graph
from fixpoint.functions import AND2, ID1, NOT1, XOR2, Lookup


def sys_not() -> System:
    return System(empty_graph(1), [NOT1])


def sys_id() -> System:
    return System(empty_graph(1), [ID1])


def sys_xor2() -> System:
    return System(path_graph(2), [XOR2, AND2])


def identity_system(G: Graph) -> System:
    """Every vertex copies its own state."""
    funcs = []
    for v in G.vertices:
        nb = G.closed_neighborhood(v)
        k = len(nb)
        pos = nb.index(v)
        rows = np.arange(1 << k)
        funcs.append(Lookup(((rows >> (k - 1 - pos)) & 1).astype(np.uint8)))
    return System(G, funcs)


@pytest.fixture
def SYS_NOT():
    return sys_not()


@pytest.fixture
def SYS_ID():
    return sys_id()


@pytest.fixture
def SYS_XOR2():
    return sys_xor2()


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
