# atomic_tools/baseline_solvers.py
"""
Baseline coloring atomic tools for MCP server.
Greedy largest-first with a dummy color, and TabuCol local search.
"""
import logging
from typing import Tuple

import numpy as np

from atomic_tools.evaluation import EvaluationTools
from models.graph_models import DUMMY, Coloring, Graph
from models.solver_models import TabuConfig, TabuTrace

logger = logging.getLogger(__name__)


class BaselineSolvers:
    """Comparison methods: greedy largest-first and TabuCol."""

    def __init__(self, evaluation: EvaluationTools):
        self.evaluation = evaluation

    def greedy_largest_first(self, graph: Graph, k: int) -> Coloring:
        """
        Greedy coloring in order of decreasing degree.

        Each vertex takes the smallest of the k colors unused by its colored
        neighbors; when all k are blocked it gets the dummy color. Equal
        degrees are visited in ascending vertex order.

        Args:
            graph: Graph to color
            k: Color budget (the known chromatic number in benchmarks)

        Returns:
            Coloring that may contain DUMMY entries
        """
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")

        order = sorted(range(graph.n), key=lambda v: (-len(graph.adjacency[v]), v))
        colors = [DUMMY] * graph.n
        colored = [False] * graph.n

        for vertex in order:
            blocked = {colors[u] for u in graph.adjacency[vertex] if colored[u]}
            colors[vertex] = next((c for c in range(k) if c not in blocked), DUMMY)
            colored[vertex] = True

        coloring = Coloring(assignment=tuple(colors), k=k, solver_tag="greedy")
        logger.info("Greedy on %s with k=%d left %d dummy vertices", graph, k, coloring.dummy_count)
        return coloring

    def tabucol(self, graph: Graph, k: int, cfg: TabuConfig) -> Coloring:
        """TabuCol search; returns the best assignment found."""
        coloring, _ = self.tabucol_traced(graph, k, cfg)
        return coloring

    def tabucol_traced(self, graph: Graph, k: int, cfg: TabuConfig) -> Tuple[Coloring, TabuTrace]:
        """
        TabuCol search with its incumbent history.

        Starts from a uniform random assignment and repeatedly recolors one
        conflicting vertex. The best non-tabu move is taken (ties broken at
        random); a tabu move is allowed when it beats the best objective so
        far. After moving v away from color c, (v, c) stays tabu for
        tenure_base + floor(tenure_scale * conflicts) iterations.

        Returns:
            (best Coloring, TabuTrace)
        """
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")

        rng = np.random.default_rng(cfg.seed)
        n = graph.n
        colors = rng.integers(0, k, size=n)

        # gamma[v, c] = number of neighbors of v colored c
        gamma = np.zeros((n, k), dtype=np.int64)
        if graph.m:
            u, v = graph.edge_array[:, 0], graph.edge_array[:, 1]
            np.add.at(gamma, (u, colors[v]), 1)
            np.add.at(gamma, (v, colors[u]), 1)

        conflicts = self.evaluation.count_conflicts(graph, colors)
        tabu_until = np.zeros((n, k), dtype=np.int64)
        trace = TabuTrace(initial_conflicts=conflicts)
        best_conflicts = conflicts
        best_colors = colors.copy()
        neighbors = graph.neighbor_arrays
        vertex_index = np.arange(n)
        # larger than any real move delta
        no_move = n + 1

        iteration = 0
        while iteration < cfg.max_iters and best_conflicts > 0 and k > 1:
            iteration += 1

            conflicted = np.flatnonzero(gamma[vertex_index, colors] > 0)
            own = gamma[conflicted, colors[conflicted]]
            delta = gamma[conflicted] - own[:, None]
            delta[np.arange(len(conflicted)), colors[conflicted]] = no_move

            allowed = (tabu_until[conflicted] < iteration) | (conflicts + delta < best_conflicts)
            allowed[np.arange(len(conflicted)), colors[conflicted]] = False
            if not allowed.any():
                # every move is tabu and none aspirates: fall back to the whole neighborhood
                allowed = delta < no_move

            candidate_delta = np.where(allowed, delta, no_move)
            best_delta = candidate_delta.min()
            rows, cols = np.nonzero(candidate_delta == best_delta)
            pick = rng.integers(len(rows))
            vertex, new_color = int(conflicted[rows[pick]]), int(cols[pick])
            old_color = int(colors[vertex])

            colors[vertex] = new_color
            nbrs = neighbors[vertex]
            gamma[nbrs, old_color] -= 1
            gamma[nbrs, new_color] += 1
            conflicts += int(best_delta)

            tabu_until[vertex, old_color] = iteration + cfg.tenure_base + int(cfg.tenure_scale * conflicts)

            if conflicts < best_conflicts:
                best_conflicts = conflicts
                best_colors = colors.copy()
            trace.best_history.append(best_conflicts)

        trace.iterations = iteration
        coloring = Coloring(assignment=tuple(int(c) for c in best_colors), k=k, solver_tag="tabucol")
        logger.info(
            "TabuCol on %s with k=%d: %d conflicts after %d iterations (seed=%d)",
            graph, k, best_conflicts, iteration, cfg.seed,
        )
        return coloring, trace
