# workflows/benchmark.py
"""
Benchmark workflow composing the atomic tools.
Runs every requested solver over a directory of DIMACS graphs with known
chromatic numbers and returns one RunRecord per run.
"""
import csv
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from atomic_tools.baseline_solvers import BaselineSolvers
from atomic_tools.diffusion_solver import DiffusionSolver
from atomic_tools.evaluation import EvaluationTools
from atomic_tools.graph_tools import GraphTools
from config.settings import Settings
from models.graph_models import Coloring, Graph
from models.solver_models import DiffusionConfig, Manifest, RunRecord, TabuConfig
from security.allowlists import ALLOWED_GRAPH_SUFFIXES, ALLOWED_SOLVERS
from services.worker_pool_service import WorkerPoolService

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunTask:
    """One (graph, solver, seed) unit of work."""
    graph: Graph
    solver_tag: str
    k: int
    seed: Optional[int]
    diffusion_config: DiffusionConfig
    tabu_config: TabuConfig


def solve_task(task: RunTask) -> Tuple[Coloring, Dict[str, Any]]:
    """
    Execute a single run and summarize it.

    Works on any graph; on an edgeless graph clashing_edges is 0 and
    clash_percent is None.

    Returns:
        (Coloring, summary with the RunRecord field names)
    """
    evaluation = EvaluationTools()
    graph = task.graph
    started = time.perf_counter()

    if task.solver_tag == "greedy":
        coloring = BaselineSolvers(evaluation).greedy_largest_first(graph, task.k)
        config = {"k": task.k}
        rng_name = "none"
        iterations = 1
    elif task.solver_tag == "tabucol":
        cfg = task.tabu_config.with_seed(task.seed)
        coloring, trace = BaselineSolvers(evaluation).tabucol_traced(graph, task.k, cfg)
        config = {"k": task.k, **cfg.to_dict()}
        rng_name = Settings.RNG_NAME
        iterations = trace.iterations
    elif task.solver_tag == "heat":
        cfg = task.diffusion_config.with_run(task.k, task.seed)
        coloring, trace = DiffusionSolver(evaluation).solve(graph, cfg)
        config = cfg.to_dict()
        rng_name = Settings.RNG_NAME
        iterations = trace.iterations
    else:
        raise UnknownSolverError(f"Unknown solver '{task.solver_tag}', expected one of {ALLOWED_SOLVERS}")

    wall_time_ms = (time.perf_counter() - started) * 1000.0
    if graph.m:
        report = evaluation.clash_report(graph, coloring)
        clashing_edges, clash_percent = report.clashing_edges, report.clash_percent
    else:
        logger.info("%s has no edges; clash percent left undefined", graph)
        clashing_edges, clash_percent = 0, None

    summary = {
        "graph_name": graph.name or "graph",
        "n": graph.n,
        "m": graph.m,
        "k_used": task.k,
        "solver_tag": task.solver_tag,
        "seed": task.seed,
        "rng": rng_name,
        "config": config,
        "clash_percent": clash_percent,
        "clashing_edges": clashing_edges,
        "wall_time_ms": wall_time_ms,
        "iterations_used": iterations,
    }
    return coloring, summary


def run_solver(task: RunTask) -> Tuple[Coloring, RunRecord]:
    """
    Execute a single benchmark run and score it.

    Module-level so it can be shipped to worker processes.

    Raises:
        ValueError: the graph has no edges, so the run cannot be scored
    """
    coloring, summary = solve_task(task)
    if summary["clash_percent"] is None:
        raise ValueError(f"Clash percent is undefined for edgeless graph {summary['graph_name']}")
    return coloring, RunRecord(**summary)


def _run_record(task: RunTask) -> RunRecord:
    return run_solver(task)[1]


class BenchmarkWorkflow:
    """Benchmark orchestration over a directory of `.col` graphs."""

    def __init__(self, graph_tools: GraphTools, worker_pool: WorkerPoolService):
        self.graph_tools = graph_tools
        self.worker_pool = worker_pool

    def load_manifest(self, path: Union[str, Path]) -> Manifest:
        """
        Read the chromatic-number manifest.

        Args:
            path: CSV file with header `graph,k` and one row per graph

        Returns:
            Manifest mapping graph name to k

        Raises:
            ManifestError: missing file, malformed row or duplicate graph name
        """
        path = Path(path)
        if not path.is_file():
            raise ManifestError(f"Manifest file not found: {path}")

        entries = {}
        with path.open("r", encoding="utf-8", newline="") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or tuple(cell.strip() for cell in header) != Settings.MANIFEST_HEADER:
                raise ManifestError(f"{path}: expected header 'graph,k', got {header}")

            for row in reader:
                line_number = reader.line_num
                if not row or all(not cell.strip() for cell in row):
                    continue
                if len(row) != 2:
                    raise ManifestError(f"{path} line {line_number}: expected 2 fields, got {len(row)}")
                name, raw_k = row[0].strip(), row[1].strip()
                if not name:
                    raise ManifestError(f"{path} line {line_number}: empty graph name")
                try:
                    k = int(raw_k)
                except ValueError:
                    raise ManifestError(f"{path} line {line_number}: k '{raw_k}' is not an integer") from None
                if k < 1:
                    raise ManifestError(f"{path} line {line_number}: k must be at least 1, got {k}")
                if name in entries:
                    raise ManifestError(f"{path} line {line_number}: duplicate graph '{name}'")
                entries[name] = k

        logger.info("Loaded manifest with %d graphs from %s", len(entries), path)
        return Manifest(entries=entries)

    def discover_graphs(self, graph_dir: Union[str, Path], manifest: Manifest) -> List[Graph]:
        """Load every manifest-listed `.col` graph in graph_dir, sorted by name."""
        graph_dir = Path(graph_dir)
        if not graph_dir.is_dir():
            raise ValueError(f"Graph directory not found: {graph_dir}")

        graphs = []
        for path in sorted(graph_dir.iterdir()):
            if path.suffix not in ALLOWED_GRAPH_SUFFIXES or not path.is_file():
                continue
            if path.stem not in manifest:
                logger.warning("Skipping %s: not listed in the manifest", path.name)
                continue
            graph = self.graph_tools.load_graph(path)
            if graph.m == 0:
                logger.warning("Skipping %s: no edges, clash percent undefined", path.name)
                continue
            graphs.append(graph)

        found = {graph.name for graph in graphs}
        for name in manifest.names:
            if name not in found:
                logger.warning("Manifest lists %s but no usable graph file was found", name)
        return graphs

    def run_benchmark(
        self,
        graph_dir: Union[str, Path],
        manifest: Manifest,
        solvers: Sequence[str],
        seeds: Sequence[int],
        diffusion_config: Optional[DiffusionConfig] = None,
        tabu_config: Optional[TabuConfig] = None,
    ) -> List[RunRecord]:
        """
        Run each solver on each graph with k taken from the manifest.

        Greedy runs once per graph (seed recorded as empty); heat and tabucol
        run once per seed.

        Returns:
            RunRecords sorted by (graph name, solver, seed)
        """
        unknown = [tag for tag in solvers if tag not in ALLOWED_SOLVERS]
        if unknown:
            raise UnknownSolverError(f"Unknown solver(s) {unknown}, expected a subset of {ALLOWED_SOLVERS}")
        if not solvers:
            raise ValueError("No solvers requested")
        stochastic = [tag for tag in solvers if tag != "greedy"]
        if stochastic and not seeds:
            raise ValueError(f"Solvers {stochastic} need at least one seed")

        graphs = self.discover_graphs(graph_dir, manifest)
        if not graphs:
            raise ValueError(f"No benchmark graphs found in {graph_dir}")

        diffusion_config = diffusion_config or DiffusionConfig.from_settings(k=1)
        tabu_config = tabu_config or TabuConfig.from_settings()

        tasks = []
        for graph in graphs:
            k = manifest[graph.name]
            for tag in sorted(set(solvers)):
                run_seeds = [None] if tag == "greedy" else sorted(set(seeds))
                for seed in run_seeds:
                    tasks.append(RunTask(graph, tag, k, seed, diffusion_config, tabu_config))

        logger.info(
            "Benchmark: %d graphs, solvers %s, %d seeds -> %d runs",
            len(graphs), sorted(set(solvers)), len(set(seeds)), len(tasks),
        )
        records = self.worker_pool.map(_run_record, tasks)
        records.sort(key=lambda record: record.sort_key)
        return records


class ManifestError(ValueError):
    """Raised when the manifest file is missing or malformed."""
    pass


class UnknownSolverError(ValueError):
    """Raised when a solver tag is not in the allowlist."""
    pass
