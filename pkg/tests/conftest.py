# tests/conftest.py
"""
Shared fixtures: tool instances wired like the server does, and small graphs.
"""
import logging
from pathlib import Path
from typing import Optional

import networkx as nx
import pytest

from atomic_tools.baseline_solvers import BaselineSolvers
from atomic_tools.diffusion_solver import DiffusionSolver
from atomic_tools.evaluation import EvaluationTools
from atomic_tools.graph_tools import GraphTools
from atomic_tools.reporting import ReportingTools
from models.graph_models import Graph, IntervalRequest
from services.worker_pool_service import WorkerPoolService
from workflows.benchmark import BenchmarkWorkflow

logging.basicConfig(level=logging.INFO)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


# =================================================================
# TOOLS
# =================================================================

@pytest.fixture
def graph_tools() -> GraphTools:
    return GraphTools()


@pytest.fixture
def evaluation() -> EvaluationTools:
    return EvaluationTools()


@pytest.fixture
def diffusion(evaluation) -> DiffusionSolver:
    return DiffusionSolver(evaluation)


@pytest.fixture
def baselines(evaluation) -> BaselineSolvers:
    return BaselineSolvers(evaluation)


@pytest.fixture
def reporting(evaluation) -> ReportingTools:
    return ReportingTools(evaluation)


@pytest.fixture
def workflow(graph_tools) -> BenchmarkWorkflow:
    pool = WorkerPoolService(max_workers=1)
    yield BenchmarkWorkflow(graph_tools, pool)
    pool.shutdown()


# =================================================================
# GRAPHS
# =================================================================

@pytest.fixture
def make_graph(graph_tools):
    """Convert a networkx graph into a Graph."""
    def _make(nx_graph: nx.Graph, name: Optional[str] = None) -> Graph:
        return graph_tools.from_networkx(nx_graph, name=name)
    return _make


@pytest.fixture
def k2(make_graph) -> Graph:
    return make_graph(nx.complete_graph(2), "k2")


@pytest.fixture
def k3(make_graph) -> Graph:
    return make_graph(nx.complete_graph(3), "k3")


@pytest.fixture
def k4(make_graph) -> Graph:
    return make_graph(nx.complete_graph(4), "k4")


@pytest.fixture
def k5(make_graph) -> Graph:
    return make_graph(nx.complete_graph(5), "k5")


@pytest.fixture
def c5(make_graph) -> Graph:
    return make_graph(nx.cycle_graph(5), "c5")


@pytest.fixture
def c6(make_graph) -> Graph:
    return make_graph(nx.cycle_graph(6), "c6")


@pytest.fixture
def petersen(make_graph) -> Graph:
    return make_graph(nx.petersen_graph(), "petersen")


@pytest.fixture
def star4(make_graph) -> Graph:
    """Center 0 with four leaves."""
    return make_graph(nx.star_graph(4), "star4")


@pytest.fixture
def edgeless10() -> Graph:
    return Graph(n=10, edges=(), name="edgeless10")


@pytest.fixture
def bipartite20(make_graph) -> Graph:
    """Random bipartite graph on 10 + 10 vertices."""
    return make_graph(nx.bipartite.random_graph(10, 10, 0.3, seed=7), "bipartite20")


@pytest.fixture
def fig1_requests():
    """Six resource requests of the interval-graph example."""
    return [
        IntervalRequest(id=1, start=2, end=4),
        IntervalRequest(id=2, start=10, end=14),
        IntervalRequest(id=3, start=2, end=8),
        IntervalRequest(id=4, start=10, end=20),
        IntervalRequest(id=5, start=6, end=17),
        IntervalRequest(id=6, start=18, end=24),
    ]
