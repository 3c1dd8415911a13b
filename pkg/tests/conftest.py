from __future__ import annotations

from importlib import resources

import pytest

from dusub import analyze, load


def data_path(name: str):
    return resources.files("dusub") / "data" / name


@pytest.fixture(scope="session")
def max_json_path():
    return str(data_path("max.json"))


@pytest.fixture(scope="session")
def max_cfg_path():
    return str(data_path("max.cfg"))


@pytest.fixture(scope="session")
def max_doc(max_json_path):
    return load(max_json_path)


@pytest.fixture(scope="session")
def max_graph(max_doc):
    return max_doc.graph


@pytest.fixture(scope="session")
def max_analysis(max_doc):
    return analyze(max_doc.graph, max_doc.annotations, max_doc.name)


@pytest.fixture(scope="session")
def max_universe(max_analysis):
    return max_analysis.universe


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
