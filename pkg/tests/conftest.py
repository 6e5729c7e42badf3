from importlib import resources

import pytest

from resist.digraph import parse_edge_list


def load_graph(name):
    return parse_edge_list(resources.files("resist").joinpath("graphs", name).read_text())


@pytest.fixture
def example1():
    return load_graph("example1.graph")


@pytest.fixture
def example4():
    return load_graph("example4.graph")


@pytest.fixture
def cycle3():
    return load_graph("cycle3.graph")


@pytest.fixture
def pair():
    return load_graph("pair.graph")


@pytest.fixture
def example2():
    return load_graph("example2.graph")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
