from __future__ import annotations

import pytest

from antifactor.graph import DegreeConstraints, Instance, MultiGraph


def complete(n: int) -> MultiGraph:
    return MultiGraph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def path(n: int) -> MultiGraph:
    return MultiGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def uniform(g: MultiGraph, ex) -> Instance:
    return Instance(g, DegreeConstraints.uniform(g.n, ex))


@pytest.fixture
def k3_cover() -> Instance:
    return uniform(complete(3), [0])


@pytest.fixture
def k4_matching() -> Instance:
    return uniform(complete(4), [0, 2, 3])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[num])
