from __future__ import annotations

import sys
from pathlib import Path

import networkx as nx
import pytest

from tilecross.graph import Multigraph

FIXTURES = Path(__file__).parent / "fixtures"


def from_nx(g: nx.Graph) -> Multigraph:
    return Multigraph.from_edges([(f"v{u}", f"v{v}") for u, v in g.edges()], [f"v{u}" for u in g.nodes()])


def complete(n: int) -> Multigraph:
    return from_nx(nx.complete_graph(n))


def complete_bipartite(a: int, b: int) -> Multigraph:
    return from_nx(nx.complete_bipartite_graph(a, b))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
