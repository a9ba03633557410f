# atomic_tools/graph_tools.py
"""
Graph atomic tools for MCP server.
Provides DIMACS ingestion/serialization, interval graphs and graph queries.
"""
import heapq
import logging
import string
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, TextIO, Tuple, Union

import networkx as nx

from models.graph_models import DUMMY, Coloring, Graph, IntervalRequest

logger = logging.getLogger(__name__)

TextSource = Union[str, TextIO, Iterable[str]]


class GraphTools:
    """Graph construction, DIMACS codec and simple graph queries."""

    def parse_dimacs(self, text: TextSource, name: Optional[str] = None) -> Graph:
        """
        Parse a DIMACS `.col` edge file.

        Args:
            text: File contents as a string, an open text file or an iterable of lines
            name: Optional label for the resulting graph

        Returns:
            Graph with 0-indexed, deduplicated edges

        Raises:
            DimacsFormatError: missing problem line, bad vertex index, self-loop
                or an unparseable line (the message carries the line number)
        """
        lines = text.splitlines() if isinstance(text, str) else text

        n = None
        declared_m = None
        seen: Set[Tuple[int, int]] = set()
        duplicates = 0

        for line_number, raw_line in enumerate(lines, start=1):
            line = raw_line.strip()
            if not line or line.startswith("c"):
                continue

            parts = line.split()
            kind = parts[0]

            if kind == "p":
                if n is not None:
                    raise DimacsFormatError(line_number, "second problem line")
                if len(parts) != 4 or parts[1] not in ("edge", "col"):
                    raise DimacsFormatError(line_number, f"malformed problem line '{line}'")
                try:
                    n, declared_m = int(parts[2]), int(parts[3])
                except ValueError:
                    raise DimacsFormatError(line_number, f"non-integer sizes in '{line}'") from None
                if n < 1 or declared_m < 0:
                    raise DimacsFormatError(line_number, f"invalid sizes n={n}, m={declared_m}")

            elif kind == "e":
                if n is None:
                    raise DimacsFormatError(line_number, "edge line before problem line")
                if len(parts) != 3:
                    raise DimacsFormatError(line_number, f"malformed edge line '{line}'")
                try:
                    u, v = int(parts[1]), int(parts[2])
                except ValueError:
                    raise DimacsFormatError(line_number, f"non-integer vertex in '{line}'") from None
                for vertex in (u, v):
                    if not 1 <= vertex <= n:
                        raise DimacsFormatError(line_number, f"vertex {vertex} outside 1..{n}")
                if u == v:
                    raise DimacsFormatError(line_number, f"self-loop on vertex {u}")

                pair = (min(u, v) - 1, max(u, v) - 1)
                if pair in seen:
                    duplicates += 1
                else:
                    seen.add(pair)

            else:
                raise DimacsFormatError(line_number, f"unparseable line '{line}'")

        if n is None:
            raise DimacsFormatError(0, "missing problem line 'p edge N M'")

        if duplicates:
            logger.warning("Collapsed %d duplicate edge line(s) in %s", duplicates, name or "input")
        if len(seen) != declared_m:
            logger.warning(
                "Problem line of %s declares %d edges, found %d distinct",
                name or "input", declared_m, len(seen),
            )

        graph = Graph(n=n, edges=tuple(seen), name=name)
        logger.debug("Parsed %s", graph)
        return graph

    def serialize_dimacs(self, graph: Graph) -> str:
        """
        Serialize a graph to canonical DIMACS text.

        Returns:
            `p edge n m` followed by 1-indexed edges sorted by (min, max) endpoint
        """
        lines = [f"p edge {graph.n} {graph.m}"]
        lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges)
        return "\n".join(lines)

    def load_graph(self, path: Union[str, Path]) -> Graph:
        """Read a `.col` file; the graph is named after the file stem."""
        path = Path(path)
        try:
            with path.open("r", encoding="utf-8") as handle:
                return self.parse_dimacs(handle, name=path.stem)
        except UnicodeDecodeError as e:
            logger.error("Graph file %s is not UTF-8 text: %s", path, e)
            raise DimacsFormatError(0, "not valid UTF-8 text") from e
        except DimacsFormatError as e:
            logger.error("Failed to parse %s: %s", path, e)
            raise
        except OSError as e:
            logger.error("Failed to read graph file %s: %s", path, e)
            raise RuntimeError(f"Unable to read graph file {path}") from e

    def save_graph(self, graph: Graph, path: Union[str, Path]) -> Path:
        """Write the canonical serialization of a graph to disk."""
        path = Path(path)
        path.write_text(self.serialize_dimacs(graph) + "\n", encoding="utf-8")
        logger.info("Wrote %s to %s", graph, path)
        return path

    def build_interval_graph(self, requests: Sequence[IntervalRequest], name: str = "intervals") -> Graph:
        """
        Build the conflict graph of resource requests.

        Args:
            requests: Requests in vertex order

        Returns:
            Graph with an edge for every pair of overlapping open intervals
            (touching endpoints do not conflict)
        """
        if not requests:
            raise ValueError("Cannot build an interval graph from an empty request list")

        edges = []
        for i, first in enumerate(requests):
            for j in range(i + 1, len(requests)):
                second = requests[j]
                if first.start < second.end and second.start < first.end:
                    edges.append((i, j))

        logger.debug("Interval graph over %d requests has %d overlaps", len(requests), len(edges))
        return Graph(n=len(requests), edges=tuple(edges), name=name)

    def color_intervals(self, requests: Sequence[IntervalRequest]) -> Coloring:
        """
        Color the conflict graph of resource requests with as few colors as possible.

        Requests are visited by start time and take the smallest color not
        held by an overlapping earlier request. On interval graphs this uses
        exactly the chromatic number of colors, at any size.

        Returns:
            Coloring aligned with the request order
        """
        if not requests:
            raise ValueError("Cannot color an empty request list")

        colors = [DUMMY] * len(requests)
        active: List[Tuple[float, int]] = []  # (end, color) of requests still open
        free: List[int] = []
        used = 0
        for index in sorted(range(len(requests)), key=lambda i: (requests[i].start, i)):
            request = requests[index]
            while active and active[0][0] <= request.start:
                heapq.heappush(free, heapq.heappop(active)[1])
            if free:
                color = heapq.heappop(free)
            else:
                color = used
                used += 1
            colors[index] = color
            heapq.heappush(active, (request.end, color))

        logger.debug("Colored %d requests with %d resources", len(requests), used)
        return Coloring(assignment=tuple(colors), k=used, solver_tag="interval")

    def assign_resources(
        self,
        requests: Sequence[IntervalRequest],
        coloring: Coloring,
    ) -> Dict[str, List]:
        """
        Decode a colored interval graph into resource assignments.

        Resources are labelled A, B, C, ... in order of the first request
        (by start time) that uses each color.

        Returns:
            {"A": [request ids], ...}
        """
        if len(coloring) != len(requests):
            raise ValueError(
                f"Coloring covers {len(coloring)} vertices but there are {len(requests)} requests"
            )
        if DUMMY in coloring.assignment:
            raise ValueError("Requests on the dummy color have no resource")

        labels: Dict[int, str] = {}
        members: Dict[str, List[int]] = {}
        order = sorted(range(len(requests)), key=lambda i: (requests[i].start, i))
        for index in order:
            color = coloring.assignment[index]
            if color not in labels:
                labels[color] = _resource_label(len(labels))
                members[labels[color]] = []
            members[labels[color]].append(index)

        # ids listed in request order within each resource
        return {label: [requests[i].id for i in sorted(indices)] for label, indices in members.items()}

    def degree(self, graph: Graph, vertex: int) -> int:
        """Number of neighbors of a vertex."""
        if not 0 <= vertex < graph.n:
            raise ValueError(f"Vertex {vertex} outside 0..{graph.n - 1}")
        return len(graph.adjacency[vertex])

    def from_networkx(self, nx_graph: nx.Graph, name: Optional[str] = None) -> Graph:
        """Convert a networkx graph, relabelling nodes 0..n-1 in sorted order."""
        nodes = sorted(nx_graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        edges = {(min(index[u], index[v]), max(index[u], index[v])) for u, v in nx_graph.edges()}
        return Graph(n=len(nodes), edges=tuple(edges), name=name or nx_graph.name or None)

    def to_networkx(self, graph: Graph) -> nx.Graph:
        """Convert to a networkx graph with integer nodes 0..n-1."""
        nx_graph = nx.Graph(name=graph.name or "")
        nx_graph.add_nodes_from(range(graph.n))
        nx_graph.add_edges_from(graph.edges)
        return nx_graph


def _resource_label(index: int) -> str:
    """A, B, ..., Z, AA, AB, ..."""
    letters = string.ascii_uppercase
    label = ""
    index += 1
    while index:
        index, remainder = divmod(index - 1, 26)
        label = letters[remainder] + label
    return label


class DimacsFormatError(ValueError):
    """Raised when DIMACS input is malformed."""

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")
