"""
Data models for graphs, colorings and clash metrics.
Provides type-safe, validated data structures.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple, Any

import numpy as np
from scipy import sparse

# Sentinel color for vertices the greedy solver could not place
DUMMY: int = -1

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """
    Immutable undirected simple graph.

    Edges are stored 0-indexed as (min, max) pairs in sorted order, so two
    graphs with the same vertex count and edge set compare equal.
    """
    n: int
    edges: Tuple[Edge, ...]
    name: Optional[str] = field(default=None, compare=False)
    adjacency: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        """Validate and canonicalize edges, then build adjacency lists."""
        if self.n < 1:
            raise ValueError(f"Graph needs at least one vertex, got n={self.n}")

        canonical = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"Self-loop on vertex {u} is not allowed")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"Edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            pair = (min(u, v), max(u, v))
            if pair in canonical:
                raise ValueError(f"Duplicate edge {pair}")
            canonical.add(pair)

        neighbors: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in canonical:
            neighbors[u].append(v)
            neighbors[v].append(u)

        object.__setattr__(self, "edges", tuple(sorted(canonical)))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(nbrs)) for nbrs in neighbors))

    @property
    def m(self) -> int:
        """Number of undirected edges."""
        return len(self.edges)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) integer array."""
        if not self.edges:
            return np.zeros((0, 2), dtype=np.int64)
        return np.asarray(self.edges, dtype=np.int64)

    @cached_property
    def adjacency_matrix(self) -> sparse.csr_matrix:
        """Symmetric 0/1 adjacency matrix with zero diagonal."""
        rows = np.concatenate([self.edge_array[:, 0], self.edge_array[:, 1]])
        cols = np.concatenate([self.edge_array[:, 1], self.edge_array[:, 0]])
        data = np.ones(len(rows), dtype=np.float64)
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    @cached_property
    def neighbor_arrays(self) -> Tuple[np.ndarray, ...]:
        """Adjacency lists as integer arrays, for fancy indexing."""
        return tuple(np.asarray(nbrs, dtype=np.int64) for nbrs in self.adjacency)

    def __str__(self) -> str:
        label = self.name or "graph"
        return f"{label} (n={self.n}, m={self.m})"


@dataclass(frozen=True)
class IntervalRequest:
    """A resource request occupying the open time interval (start, end)."""
    id: Any
    start: float
    end: float

    def __post_init__(self):
        """Validate interval bounds."""
        if not self.end > self.start:
            raise ValueError(f"Request {self.id}: end ({self.end}) must be after start ({self.start})")


@dataclass(frozen=True)
class Coloring:
    """Per-vertex color assignment over {0..k-1} plus the DUMMY sentinel."""
    assignment: Tuple[int, ...]
    k: int
    solver_tag: str = "unknown"

    def __post_init__(self):
        """Validate color values against the budget."""
        if self.k < 1:
            raise ValueError(f"Color budget must be at least 1, got {self.k}")
        values = tuple(int(c) for c in self.assignment)
        for vertex, color in enumerate(values):
            if color != DUMMY and not (0 <= color < self.k):
                raise ValueError(f"Vertex {vertex} has color {color} outside 0..{self.k - 1}")
        object.__setattr__(self, "assignment", values)

    def __len__(self) -> int:
        return len(self.assignment)

    @property
    def dummy_count(self) -> int:
        """Number of vertices left on the dummy color."""
        return sum(1 for c in self.assignment if c == DUMMY)

    @property
    def colors_used(self) -> int:
        """Distinct real colors in use."""
        return len({c for c in self.assignment if c != DUMMY})

    def as_array(self) -> np.ndarray:
        return np.asarray(self.assignment, dtype=np.int64)


@dataclass(frozen=True)
class ClashReport:
    """Clashing-edge count and percentage for one coloring."""
    clashing_edges: int
    total_edges: int
    clash_percent: float

    def __post_init__(self):
        if self.total_edges <= 0:
            raise ValueError("Clash percent is undefined for a graph without edges")
        if not (0 <= self.clashing_edges <= self.total_edges):
            raise ValueError(
                f"Clashing edges ({self.clashing_edges}) must lie in 0..{self.total_edges}"
            )

    @classmethod
    def from_counts(cls, clashing_edges: int, total_edges: int) -> "ClashReport":
        if total_edges <= 0:
            raise ValueError("Clash percent is undefined for a graph without edges")
        return cls(
            clashing_edges=clashing_edges,
            total_edges=total_edges,
            clash_percent=100.0 * clashing_edges / total_edges,
        )


@dataclass(frozen=True)
class SolverStats:
    """Boxplot statistics of clash percent for one solver."""
    solver_tag: str
    mean: float
    median: float
    quartile1: float
    quartile3: float
    minimum: float
    maximum: float
    count: int

    def __post_init__(self):
        if not (self.minimum <= self.quartile1 <= self.median <= self.quartile3 <= self.maximum):
            raise ValueError(f"Statistics for {self.solver_tag} are not ordered")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "solver": self.solver_tag,
            "mean": self.mean,
            "median": self.median,
            "q1": self.quartile1,
            "q3": self.quartile3,
            "min": self.minimum,
            "max": self.maximum,
            "count": self.count,
        }
