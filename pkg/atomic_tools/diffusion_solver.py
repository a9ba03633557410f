# atomic_tools/diffusion_solver.py
"""
Heat diffusion atomic tools for MCP server.
Gradient-based iterative coloring: erf smoothing of the location theta,
row-wise softmax clash target, Monte-Carlo gradient and projected descent.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.special import erf

from atomic_tools.evaluation import EvaluationTools
from models.graph_models import Coloring, Graph
from models.solver_models import DiffusionConfig, SolveTrace, ThetaState

logger = logging.getLogger(__name__)

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


class DiffusionSolver:
    """Heat diffusion solver for k-coloring."""

    def __init__(self, evaluation: EvaluationTools):
        self.evaluation = evaluation

    # -----------------------------------------------------------------
    # Target function pieces
    # -----------------------------------------------------------------

    def heat_smooth(self, theta: np.ndarray, x: np.ndarray, tau: float) -> np.ndarray:
        """G = erf((theta - x) / sqrt(2 tau)), elementwise."""
        if tau <= 0:
            raise ValueError(f"Diffusion time tau must be positive, got {tau}")
        if theta.shape != x.shape:
            raise ValueError(f"Shape mismatch: theta {theta.shape} vs x {x.shape}")
        return erf((theta - x) / math.sqrt(2.0 * tau))

    def row_softmax(self, G: np.ndarray, alpha: float) -> np.ndarray:
        """Row-wise softmax of G / alpha, computed with max subtraction."""
        if alpha <= 0:
            raise ValueError(f"Softmax temperature alpha must be positive, got {alpha}")
        scaled = G / alpha
        scaled = scaled - scaled.max(axis=1, keepdims=True)
        weights = np.exp(scaled)
        return weights / weights.sum(axis=1, keepdims=True)

    def target_value(self, graph: Graph, S: np.ndarray) -> float:
        """
        Soft clash count f = sum_ij A_ij <S_i, S_j>.

        A is the full symmetric adjacency matrix, so every undirected edge
        contributes 2 <S_u, S_v>. For one-hot rows f equals twice the number
        of clashing edges.
        """
        if S.shape[0] != graph.n:
            raise ValueError(f"S has {S.shape[0]} rows, graph has {graph.n} vertices")
        if graph.m == 0:
            return 0.0
        u, v = graph.edge_array[:, 0], graph.edge_array[:, 1]
        return float(2.0 * np.sum(S[u] * S[v]))

    def target_gradient(
        self,
        graph: Graph,
        theta: np.ndarray,
        x: np.ndarray,
        tau: float,
        alpha: float,
        target_input: str = "smoothed",
    ) -> np.ndarray:
        """
        Exact gradient of theta -> f(softmax(erf((theta - x) / sqrt(2 tau)) / alpha)).

        With target_input="raw" the erf transform is skipped and the softmax
        is applied to theta directly (x and tau unused).

        Returns:
            n x k gradient matrix
        """
        _, gradient = self._value_and_gradient(graph, theta, x, tau, alpha, target_input)
        return gradient

    def _value_and_gradient(
        self,
        graph: Graph,
        theta: np.ndarray,
        x: Optional[np.ndarray],
        tau: float,
        alpha: float,
        target_input: str,
    ) -> Tuple[float, np.ndarray]:
        if alpha <= 0:
            raise ValueError(f"Softmax temperature alpha must be positive, got {alpha}")
        if theta.shape[0] != graph.n:
            raise ValueError(f"theta has {theta.shape[0]} rows, graph has {graph.n} vertices")

        if target_input == "raw":
            G = theta
            dG = np.ones_like(theta)
        else:
            if tau <= 0:
                raise ValueError(f"Diffusion time tau must be positive, got {tau}")
            scale = 1.0 / math.sqrt(2.0 * tau)
            z = (theta - x) * scale
            G = erf(z)
            dG = _TWO_OVER_SQRT_PI * np.exp(-z * z) * scale

        S = self.row_softmax(G, alpha)
        if graph.m == 0:
            return 0.0, np.zeros_like(theta)

        neighbor_sum = np.asarray(graph.adjacency_matrix @ S)
        value = float(np.sum(S * neighbor_sum))

        # df/dS_i = 2 sum_{j in adj(i)} S_j, then back through the softmax
        grad_S = 2.0 * neighbor_sum
        grad_logits = S * (grad_S - np.sum(grad_S * S, axis=1, keepdims=True))
        return value, (grad_logits / alpha) * dG

    # -----------------------------------------------------------------
    # Iteration
    # -----------------------------------------------------------------

    def init_theta(
        self,
        n: int,
        k: int,
        cfg: DiffusionConfig,
        rng: Optional[np.random.Generator] = None,
    ) -> ThetaState:
        """
        Initial location: uniform over [0, 1]^{n x k}, or constant 0.5.

        Uses a generator seeded from cfg.seed unless one is passed in.
        """
        if n < 1 or k < 1:
            raise ValueError(f"Need n >= 1 and k >= 1, got n={n}, k={k}")
        if cfg.theta_init == "constant_half":
            theta = np.full((n, k), 0.5)
        else:
            rng = rng if rng is not None else np.random.default_rng(cfg.seed)
            theta = rng.random((n, k))
        return ThetaState(theta=theta, iteration=0, tau=self.tau_schedule(cfg, 0))

    def tau_schedule(self, cfg: DiffusionConfig, t: int) -> float:
        """Diffusion time at iteration t, cooling from tau0 to tau_min over T iterations."""
        if cfg.T == 1:
            return cfg.tau0
        t = min(max(t, 0), cfg.T - 1)
        fraction = t / (cfg.T - 1)
        if cfg.schedule == "geometric":
            return cfg.tau0 * (cfg.tau_min / cfg.tau0) ** fraction
        return cfg.tau0 + (cfg.tau_min - cfg.tau0) * fraction

    def step(
        self,
        graph: Graph,
        state: ThetaState,
        cfg: DiffusionConfig,
        rng: np.random.Generator,
    ) -> ThetaState:
        """
        One projected gradient step.

        Samples x uniformly over [0, 1]^{n x k} (averaging over M samples),
        moves theta against the gradient and clips back into [0, 1].
        """
        next_state, _ = self._advance(graph, state, cfg, rng)
        return next_state

    def _advance(
        self,
        graph: Graph,
        state: ThetaState,
        cfg: DiffusionConfig,
        rng: np.random.Generator,
    ) -> Tuple[ThetaState, float]:
        theta = state.theta
        gradient = np.zeros_like(theta)
        value = 0.0
        for _ in range(cfg.M):
            x = rng.random(theta.shape) if cfg.target_input == "smoothed" else None
            sample_value, sample_gradient = self._value_and_gradient(
                graph, theta, x, state.tau, cfg.alpha, cfg.target_input
            )
            value += sample_value
            gradient += sample_gradient
        gradient /= cfg.M
        value /= cfg.M

        updated = np.clip(theta - cfg.eta * gradient, 0.0, 1.0)
        iteration = state.iteration + 1
        next_state = ThetaState(
            theta=updated,
            iteration=iteration,
            tau=self.tau_schedule(cfg, iteration),
        )
        return next_state, value

    def decode(self, theta: np.ndarray, solver_tag: str = "heat") -> Coloring:
        """Argmax over each row; ties go to the lowest color index."""
        colors = np.argmax(theta, axis=1)
        return Coloring(assignment=tuple(int(c) for c in colors), k=theta.shape[1], solver_tag=solver_tag)

    def solve(self, graph: Graph, cfg: DiffusionConfig) -> Tuple[Coloring, SolveTrace]:
        """
        Run the heat diffusion solver for cfg.T iterations.

        Returns:
            The best decoded coloring seen (fewest clashes, earliest on ties)
            and the per-iteration trace; entry t describes the theta the
            t-th step starts from, so the initial theta is a candidate
        """
        logger.info(
            "Heat diffusion on %s with k=%d, T=%d, seed=%d", graph, cfg.k, cfg.T, cfg.seed
        )
        rng = np.random.default_rng(cfg.seed)
        state = self.init_theta(graph.n, cfg.k, cfg, rng)
        trace = SolveTrace()
        best_colors = None

        for _ in range(cfg.T):
            # value, decoding and clash count all refer to the pre-step theta
            iteration, tau = state.iteration, state.tau
            colors = np.argmax(state.theta, axis=1)
            clashes = self.evaluation.count_conflicts(graph, colors)
            state, value = self._advance(graph, state, cfg, rng)
            if trace.record(iteration, value, clashes):
                best_colors = colors

            if iteration % 100 == 0:
                logger.debug(
                    "iteration %d: tau=%.4f f=%.4f clashes=%d best=%d",
                    iteration, tau, value, clashes, trace.best_clashes,
                )
            if cfg.early_stop and clashes == 0:
                break

        coloring = Coloring(assignment=tuple(int(c) for c in best_colors), k=cfg.k, solver_tag="heat")
        logger.info(
            "Heat diffusion on %s finished: best %d clashes at iteration %d",
            graph, trace.best_clashes, trace.best_iteration,
        )
        return coloring, trace
