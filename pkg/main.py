# main.py - Graph Coloring MCP Server
"""
Graph Coloring MCP Server
Provides granular, composable graph coloring tools for AI agents:
DIMACS ingestion, heat diffusion / greedy / TabuCol solvers, an exact
oracle and the clash-percent benchmark harness.
"""
import asyncio
import logging
from typing import Any, Dict, List, Optional

from mcp.server.fastmcp import FastMCP

# Atomic tool imports
from atomic_tools.graph_tools import GraphTools
from atomic_tools.evaluation import EvaluationTools
from atomic_tools.reporting import ReportingTools

# Workflow and service imports
from services.worker_pool_service import WorkerPoolService
from workflows.benchmark import BenchmarkWorkflow, RunTask, solve_task

# Configuration
from config.settings import Settings
from models.graph_models import Coloring, IntervalRequest
from models.solver_models import DiffusionConfig, TabuConfig

# Set up logging to stderr (MCP requirement)
logging.basicConfig(
    level=Settings.LOG_LEVEL,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[logging.StreamHandler()]
)
logger = logging.getLogger(__name__)

# Initialize FastMCP server
mcp = FastMCP("graph-coloring-server")

# Initialize atomic tool classes in dependency order
logger.info("Initializing graph coloring MCP server...")
graph_tools = GraphTools()
evaluation_tools = EvaluationTools()
reporting_tools = ReportingTools(evaluation_tools)
worker_pool = WorkerPoolService()
benchmark_workflow = BenchmarkWorkflow(graph_tools, worker_pool)

logger.info("Atomic tools initialized successfully")


def _graph_summary(graph) -> Dict[str, Any]:
    return {
        "name": graph.name,
        "n": graph.n,
        "m": graph.m,
        "max_degree": max((len(nbrs) for nbrs in graph.adjacency), default=0),
    }

# =============================================================================
# GRAPH TOOLS
# =============================================================================

@mcp.tool()
async def parse_graph(dimacs_text: str, name: Optional[str] = None) -> Dict[str, Any]:
    """
    Parse DIMACS `.col` text and summarize the graph.

    Args:
        dimacs_text: Contents of a `.col` file
        name: Optional graph label

    Returns:
        {"name": str, "n": int, "m": int, "max_degree": int}
    """
    try:
        return _graph_summary(graph_tools.parse_dimacs(dimacs_text, name=name))
    except Exception as e:
        logger.error("parse_graph failed: %s", e)
        raise

@mcp.tool()
async def serialize_graph(dimacs_text: str) -> str:
    """
    Canonicalize DIMACS text (sorted, deduplicated, 1-indexed edges).

    Args:
        dimacs_text: Contents of a `.col` file

    Returns:
        Canonical DIMACS text
    """
    try:
        return graph_tools.serialize_dimacs(graph_tools.parse_dimacs(dimacs_text))
    except Exception as e:
        logger.error("serialize_graph failed: %s", e)
        raise

@mcp.tool()
async def interval_graph(requests: List[Dict[str, Any]]) -> Dict[str, Any]:
    """
    Build the overlap graph of resource requests and assign resources.

    Args:
        requests: [{"id": label, "start": float, "end": float}, ...]

    Returns:
        {"dimacs": str, "edges": [[id, id], ...], "resources": {"A": [ids], ...}}
    """
    try:
        parsed = [IntervalRequest(id=r["id"], start=float(r["start"]), end=float(r["end"])) for r in requests]
        graph = graph_tools.build_interval_graph(parsed)
        coloring = graph_tools.color_intervals(parsed)
        return {
            "dimacs": graph_tools.serialize_dimacs(graph),
            "edges": [[parsed[u].id, parsed[v].id] for u, v in graph.edges],
            "resources": graph_tools.assign_resources(parsed, coloring),
        }
    except Exception as e:
        logger.error("interval_graph failed: %s", e)
        raise

@mcp.tool()
async def vertex_degree(dimacs_text: str, vertex: int) -> int:
    """
    Degree of a vertex (1-indexed, as in DIMACS).

    Args:
        dimacs_text: Contents of a `.col` file
        vertex: 1-indexed vertex number

    Returns:
        Number of neighbors
    """
    try:
        return graph_tools.degree(graph_tools.parse_dimacs(dimacs_text), vertex - 1)
    except Exception as e:
        logger.error("vertex_degree failed: %s", e)
        raise

# =============================================================================
# SOLVER TOOLS
# =============================================================================

@mcp.tool()
async def solve_coloring(
    dimacs_text: str,
    solver: str,
    k: int,
    seed: int = 0,
    T: Optional[int] = None,
    alpha: Optional[float] = None,
    eta: Optional[float] = None,
    tau0: Optional[float] = None,
    tau_min: Optional[float] = None,
    schedule: Optional[str] = None,
    max_iters: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Color a graph with one solver and score the result.

    Args:
        dimacs_text: Contents of a `.col` file
        solver: heat, greedy or tabucol
        k: Color budget
        seed: PRNG seed (ignored by greedy)
        T, alpha, eta, tau0, tau_min, schedule: heat diffusion overrides
        max_iters: TabuCol iteration budget override

    Returns:
        {"coloring": [1-indexed colors, 0 = dummy], "clashing_edges": int,
         "clash_percent": float or None when the graph has no edges,
         "iterations": int, "config": dict}
    """
    try:
        graph = graph_tools.parse_dimacs(dimacs_text, name="input")
        task = RunTask(
            graph=graph,
            solver_tag=solver,
            k=k,
            seed=None if solver == "greedy" else seed,
            diffusion_config=DiffusionConfig.from_settings(
                k=k, seed=seed, T=T, alpha=alpha, eta=eta, tau0=tau0, tau_min=tau_min, schedule=schedule,
            ),
            tabu_config=TabuConfig.from_settings(seed=seed, max_iters=max_iters),
        )
        coloring, summary = await asyncio.to_thread(solve_task, task)
        return {
            "coloring": [c + 1 for c in coloring.assignment],
            "clashing_edges": summary["clashing_edges"],
            "clash_percent": summary["clash_percent"],
            "iterations": summary["iterations_used"],
            "config": summary["config"],
        }
    except Exception as e:
        logger.error("solve_coloring failed: %s", e)
        raise

# =============================================================================
# EVALUATION TOOLS
# =============================================================================

@mcp.tool()
async def clash_report(dimacs_text: str, colors: List[int], k: int) -> Dict[str, Any]:
    """
    Score a coloring by its percentage of clashing edges.

    Args:
        dimacs_text: Contents of a `.col` file
        colors: 1-indexed color per vertex, 0 for the dummy color
        k: Color budget

    Returns:
        {"clashing_edges": int, "total_edges": int, "clash_percent": float}
    """
    try:
        graph = graph_tools.parse_dimacs(dimacs_text)
        coloring = Coloring(assignment=tuple(c - 1 for c in colors), k=k, solver_tag="external")
        report = evaluation_tools.clash_report(graph, coloring)
        return {
            "clashing_edges": report.clashing_edges,
            "total_edges": report.total_edges,
            "clash_percent": report.clash_percent,
        }
    except Exception as e:
        logger.error("clash_report failed: %s", e)
        raise

@mcp.tool()
async def check_colorable(dimacs_text: str, k: int) -> Dict[str, Any]:
    """
    Decide exactly whether a small graph is k-colorable.

    Args:
        dimacs_text: Contents of a `.col` file (at most ORACLE_MAX_VERTICES vertices)
        k: Color budget

    Returns:
        {"colorable": bool, "witness": [1-indexed colors] or None}
    """
    try:
        graph = graph_tools.parse_dimacs(dimacs_text)
        colorable, witness = evaluation_tools.exact_k_colorable(graph, k)
        return {
            "colorable": colorable,
            "witness": [c + 1 for c in witness.assignment] if witness else None,
        }
    except Exception as e:
        logger.error("check_colorable failed: %s", e)
        raise

@mcp.tool()
async def chromatic_number(dimacs_text: str) -> int:
    """
    Exact chromatic number of a small graph.

    Args:
        dimacs_text: Contents of a `.col` file (at most ORACLE_MAX_VERTICES vertices)

    Returns:
        Smallest k admitting a clash-free coloring
    """
    try:
        return evaluation_tools.chromatic_number(graph_tools.parse_dimacs(dimacs_text))
    except Exception as e:
        logger.error("chromatic_number failed: %s", e)
        raise

# =============================================================================
# BENCHMARK TOOLS
# =============================================================================

@mcp.tool()
async def run_benchmark(
    graph_dir: str,
    manifest_path: str,
    out_dir: str,
    solvers: List[str],
    seeds: List[int],
) -> Dict[str, Any]:
    """
    Run the clash-percent benchmark and write the report files.

    Args:
        graph_dir: Directory of `.col` files
        manifest_path: CSV with header `graph,k`
        out_dir: Directory for runs.csv, runs.json, fig2.csv, fig3.csv
        solvers: Subset of heat, greedy, tabucol
        seeds: Seeds for the stochastic solvers

    Returns:
        {"runs": int, "files": {name: path}, "summary": [per-solver stats]}
    """
    try:
        manifest = benchmark_workflow.load_manifest(manifest_path)
        records = await asyncio.to_thread(
            benchmark_workflow.run_benchmark, graph_dir, manifest, solvers, seeds
        )
        files = reporting_tools.write_report(records, out_dir)
        return {
            "runs": len(records),
            "files": {name: str(path) for name, path in files.items()},
            "summary": [stats.to_dict() for stats in evaluation_tools.aggregate(records)],
        }
    except Exception as e:
        logger.error("run_benchmark failed: %s", e)
        raise

@mcp.tool()
async def render_plots(in_dir: str, out_dir: str) -> Dict[str, str]:
    """
    Render fig2.svg and fig3.svg from a report directory.

    Args:
        in_dir: Directory containing fig2.csv and fig3.csv
        out_dir: Directory for the SVG files

    Returns:
        {"fig2_svg": path, "fig3_svg": path}
    """
    try:
        fig2, fig3 = reporting_tools.load_report(in_dir)
        files = reporting_tools.emit_plots(fig2, fig3, out_dir)
        return {name: str(path) for name, path in files.items()}
    except Exception as e:
        logger.error("render_plots failed: %s", e)
        raise

# =============================================================================
# SERVER STARTUP
# =============================================================================

@mcp.prompt()
async def coloring_workflow_guide():
    """
    Graph Coloring Tools Workflow Guide

    All graph inputs are DIMACS `.col` text: `p edge N M` then `e u v` lines (1-indexed).

    SINGLE GRAPH:
    1. parse_graph(text) -> check n and m
    2. solve_coloring(text, 'heat' | 'greedy' | 'tabucol', k) -> coloring and clash percent
    3. clash_report(text, colors, k) -> score any externally produced coloring

    SMALL GRAPHS (ground truth):
    - chromatic_number(text) or check_colorable(text, k) for exact answers

    RESOURCE ALLOCATION:
    - interval_graph([{id, start, end}, ...]) -> overlap graph and resource letters

    BENCHMARK:
    1. run_benchmark(graph_dir, manifest_path, out_dir, ['heat', 'greedy', 'tabucol'], [0, 1, 2, 3, 4])
    2. render_plots(out_dir, out_dir) -> fig2.svg scatter, fig3.svg boxplot

    Greedy never exceeds k colors; vertices it cannot place get a dummy color
    (reported as 0) and every edge touching them counts as clashing.
    """


if __name__ == "__main__":
    logger.info("Starting Graph Coloring MCP Server")
    logger.info("All atomic tools ready for agent use")
    mcp.run(transport='stdio')
