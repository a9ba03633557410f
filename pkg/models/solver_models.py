"""
Data models for solver configuration, solver state and benchmark runs.
"""
from dataclasses import dataclass, field, asdict, replace
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from config.settings import Settings
from security.allowlists import (
    ALLOWED_SCHEDULES,
    ALLOWED_TARGET_INPUTS,
    ALLOWED_THETA_INIT,
)


@dataclass(frozen=True)
class DiffusionConfig:
    """Complete hyperparameter record for one heat diffusion solve."""
    k: int
    T: int = 1000
    tau0: float = 1.0
    tau_min: float = 0.01
    schedule: str = "linear"
    alpha: float = 1.0
    eta: float = 0.5
    M: int = 1
    seed: int = 0
    theta_init: str = "uniform"
    target_input: str = "smoothed"
    early_stop: bool = False

    def __post_init__(self):
        """Validate hyperparameters."""
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.T < 1:
            raise ValueError(f"T must be at least 1, got {self.T}")
        if not self.tau0 >= self.tau_min > 0:
            raise ValueError(f"Need tau0 >= tau_min > 0, got tau0={self.tau0}, tau_min={self.tau_min}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.eta < 0:
            raise ValueError(f"eta must be nonnegative, got {self.eta}")
        if self.M < 1:
            raise ValueError(f"M must be at least 1, got {self.M}")
        if self.schedule not in ALLOWED_SCHEDULES:
            raise ValueError(f"Unknown schedule '{self.schedule}', expected one of {ALLOWED_SCHEDULES}")
        if self.theta_init not in ALLOWED_THETA_INIT:
            raise ValueError(f"Unknown theta_init '{self.theta_init}', expected one of {ALLOWED_THETA_INIT}")
        if self.target_input not in ALLOWED_TARGET_INPUTS:
            raise ValueError(
                f"Unknown target_input '{self.target_input}', expected one of {ALLOWED_TARGET_INPUTS}"
            )

    @classmethod
    def from_settings(cls, k: int, seed: int = 0, **overrides: Any) -> "DiffusionConfig":
        """Build a config from Settings defaults, with explicit overrides."""
        params = Settings.get_diffusion_defaults()
        params.update({key: value for key, value in overrides.items() if value is not None})
        return cls(k=k, seed=seed, **params)

    def with_run(self, k: int, seed: int) -> "DiffusionConfig":
        return replace(self, k=k, seed=seed)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class TabuConfig:
    """TabuCol parameters: iteration budget and tenure L + floor(lambda * conflicts)."""
    max_iters: int = 100000
    tenure_base: int = 7
    tenure_scale: float = 0.6
    seed: int = 0

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be at least 1, got {self.max_iters}")
        if self.tenure_base < 0 or self.tenure_scale < 0:
            raise ValueError("Tenure parameters must be nonnegative")

    @classmethod
    def from_settings(cls, seed: int = 0, **overrides: Any) -> "TabuConfig":
        params = Settings.get_tabu_defaults()
        params.update({key: value for key, value in overrides.items() if value is not None})
        return cls(seed=seed, **params)

    def with_seed(self, seed: int) -> "TabuConfig":
        return replace(self, seed=seed)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class ThetaState:
    """Solver location theta (n x k, entries in [0, 1]) with iteration metadata."""
    theta: np.ndarray
    iteration: int
    tau: float

    def __post_init__(self):
        if self.theta.ndim != 2:
            raise ValueError(f"theta must be a matrix, got shape {self.theta.shape}")
        if self.theta.size and (self.theta.min() < 0.0 or self.theta.max() > 1.0):
            raise ValueError("theta entries must lie in [0, 1]")
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.theta.shape


@dataclass
class SolveTrace:
    """
    Per-iteration target values and decoded clash counts of a diffusion solve.

    Entry t pairs the target value and the clash count of the same theta,
    the one step t starts from (entry 0 is the initial theta).
    """
    values: List[float] = field(default_factory=list)
    clash_counts: List[int] = field(default_factory=list)
    best_clashes: Optional[int] = None
    best_iteration: Optional[int] = None

    def record(self, iteration: int, value: float, clashes: int) -> bool:
        """Append one iteration; return True when it sets a new best (earliest wins ties)."""
        self.values.append(float(value))
        self.clash_counts.append(int(clashes))
        if self.best_clashes is None or clashes < self.best_clashes:
            self.best_clashes = int(clashes)
            self.best_iteration = iteration
            return True
        return False

    @property
    def iterations(self) -> int:
        return len(self.clash_counts)


@dataclass
class TabuTrace:
    """Incumbent conflict history of a TabuCol search."""
    initial_conflicts: int = 0
    best_history: List[int] = field(default_factory=list)
    iterations: int = 0

    @property
    def best_conflicts(self) -> int:
        return self.best_history[-1] if self.best_history else self.initial_conflicts


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one solver x graph x seed run."""
    graph_name: str
    n: int
    m: int
    k_used: int
    solver_tag: str
    seed: Optional[int]
    rng: str
    config: Dict[str, Any]
    clash_percent: float
    clashing_edges: int
    wall_time_ms: float
    iterations_used: int

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError(f"Run on {self.graph_name} has no edges to score")
        expected = 100.0 * self.clashing_edges / self.m
        if abs(expected - self.clash_percent) > 1e-9:
            raise ValueError(
                f"clash_percent {self.clash_percent} inconsistent with {self.clashing_edges}/{self.m}"
            )

    @property
    def sort_key(self) -> Tuple[str, str, int]:
        return (self.graph_name, self.solver_tag, -1 if self.seed is None else self.seed)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class Manifest:
    """Mapping from benchmark graph name to its known chromatic number."""
    entries: Dict[str, int]

    def __post_init__(self):
        for name, k in self.entries.items():
            if k < 1:
                raise ValueError(f"Manifest entry {name} has k={k}; k must be at least 1")

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __getitem__(self, name: str) -> int:
        return self.entries[name]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def names(self) -> List[str]:
        return sorted(self.entries)
