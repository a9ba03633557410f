# atomic_tools/evaluation.py
"""
Evaluation atomic tools for MCP server.
Clash metrics, an exact colorability oracle for small graphs and
aggregate statistics over benchmark runs.
"""
import logging
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.settings import Settings
from models.graph_models import DUMMY, ClashReport, Coloring, Graph, SolverStats
from models.solver_models import RunRecord

logger = logging.getLogger(__name__)

Assignment = Union[Sequence[int], np.ndarray]


class EvaluationTools:
    """Clash scoring, exact oracle and run aggregation."""

    def __init__(self, max_oracle_vertices: Optional[int] = None):
        self.max_oracle_vertices = (
            Settings.ORACLE_MAX_VERTICES if max_oracle_vertices is None else max_oracle_vertices
        )

    def count_conflicts(self, graph: Graph, assignment: Assignment) -> int:
        """
        Count clashing edges of an assignment.

        An edge clashes when both endpoints share a color or either endpoint
        is on the dummy color; each edge counts at most once.
        """
        colors = np.asarray(assignment, dtype=np.int64)
        if colors.shape != (graph.n,):
            raise ValueError(f"Assignment has {colors.size} entries, graph has {graph.n} vertices")
        if graph.m == 0:
            return 0
        left = colors[graph.edge_array[:, 0]]
        right = colors[graph.edge_array[:, 1]]
        clashing = (left == right) | (left == DUMMY) | (right == DUMMY)
        return int(np.count_nonzero(clashing))

    def clash_report(self, graph: Graph, coloring: Coloring) -> ClashReport:
        """
        Score a coloring by the percentage of clashing edges.

        Args:
            graph: Graph with at least one edge
            coloring: One color (or DUMMY) per vertex

        Returns:
            ClashReport with clashing edge count and percentage
        """
        if len(coloring) != graph.n:
            raise ValueError(f"Coloring has {len(coloring)} entries, graph has {graph.n} vertices")
        if graph.m == 0:
            raise ValueError(f"Clash percent is undefined for edgeless graph {graph.name or ''}".strip())

        clashing = self.count_conflicts(graph, coloring.assignment)
        return ClashReport.from_counts(clashing, graph.m)

    def exact_k_colorable(self, graph: Graph, k: int) -> Tuple[bool, Optional[Coloring]]:
        """
        Decide k-colorability by exhaustive backtracking.

        Vertices are colored in index order; a vertex may only open the next
        unused color, which fixes vertex 0 to color 0 and removes color
        permutation symmetry.

        Returns:
            (True, witness coloring) or (False, None)

        Raises:
            OracleLimitError: graph larger than the configured vertex bound
        """
        if graph.n > self.max_oracle_vertices:
            raise OracleLimitError(
                f"Oracle limited to {self.max_oracle_vertices} vertices, graph has {graph.n}"
            )
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")

        colors = [DUMMY] * graph.n

        def place(vertex: int, highest: int) -> bool:
            if vertex == graph.n:
                return True
            blocked = {colors[u] for u in graph.adjacency[vertex]}
            for color in range(min(highest + 2, k)):
                if color in blocked:
                    continue
                colors[vertex] = color
                if place(vertex + 1, max(highest, color)):
                    return True
            colors[vertex] = DUMMY
            return False

        if not place(0, -1):
            logger.debug("%s is not %d-colorable", graph, k)
            return False, None

        witness = Coloring(assignment=tuple(colors), k=k, solver_tag="oracle")
        if self.count_conflicts(graph, witness.assignment) != 0:
            raise RuntimeError("Oracle produced a witness with clashes")
        logger.debug("%s is %d-colorable", graph, k)
        return True, witness

    def chromatic_number(self, graph: Graph) -> int:
        """Smallest k for which the graph is k-colorable."""
        k = 1
        while True:
            colorable, _ = self.exact_k_colorable(graph, k)
            if colorable:
                logger.info("Chromatic number of %s is %d", graph, k)
                return k
            k += 1

    def aggregate(self, records: Sequence[RunRecord]) -> List[SolverStats]:
        """
        Per-solver statistics of clash percent.

        Quartiles use linear interpolation between order statistics.

        Returns:
            One SolverStats per solver tag, sorted by tag
        """
        if not records:
            raise ValueError("Cannot aggregate an empty record list")

        by_solver: Dict[str, List[float]] = defaultdict(list)
        for record in records:
            by_solver[record.solver_tag].append(record.clash_percent)

        stats = []
        for tag in sorted(by_solver):
            values = np.asarray(by_solver[tag], dtype=np.float64)
            q1, median, q3 = np.percentile(values, [25, 50, 75], method="linear")
            stats.append(SolverStats(
                solver_tag=tag,
                mean=float(values.mean()),
                median=float(median),
                quartile1=float(q1),
                quartile3=float(q3),
                minimum=float(values.min()),
                maximum=float(values.max()),
                count=len(values),
            ))
        return stats


class OracleLimitError(ValueError):
    """Raised when a graph exceeds the exact oracle's size bound."""
    pass
