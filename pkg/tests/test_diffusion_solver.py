# tests/test_diffusion_solver.py
"""
Tests for the heat diffusion solver: smoothing, softmax, target, gradient,
schedule, projected step, decoding and full solves.
"""
import itertools
import math

import networkx as nx
import numpy as np
import pytest

from models.graph_models import Graph
from models.solver_models import DiffusionConfig, ThetaState


def _target(diffusion, graph, theta, x, tau, alpha, target_input):
    G = theta if target_input == "raw" else diffusion.heat_smooth(theta, x, tau)
    return diffusion.target_value(graph, diffusion.row_softmax(G, alpha))


class TestTargetPieces:
    """heat_smooth, row_softmax and target_value."""

    def test_heat_smooth_value(self, diffusion):
        G = diffusion.heat_smooth(np.array([[1.0]]), np.array([[0.0]]), 0.5)
        assert G[0, 0] == pytest.approx(0.8427007929, abs=1e-9)

    def test_heat_smooth_range_and_sign(self, diffusion):
        rng = np.random.default_rng(3)
        theta, x = rng.random((6, 3)), rng.random((6, 3))
        G = diffusion.heat_smooth(theta, x, 0.2)
        assert np.all(np.abs(G) < 1.0)
        assert np.all(np.sign(G) == np.sign(theta - x))

    def test_heat_smooth_limits(self, diffusion):
        theta = np.array([[0.4, 1.0, 0.0]])
        x = np.array([[0.4, 0.0, 1.0]])
        G = diffusion.heat_smooth(theta, x, 0.01)
        assert G[0, 0] == 0.0
        # |z| = 1 / sqrt(0.02) > 6
        assert G[0, 1] == pytest.approx(1.0, abs=1e-9)
        assert G[0, 2] == pytest.approx(-1.0, abs=1e-9)

    def test_row_softmax_cold_limit(self, diffusion):
        S = diffusion.row_softmax(np.array([[1.0, 0.0]]), 0.01)
        assert S[0] == pytest.approx([1.0, 0.0], abs=1e-12)

    def test_heat_smooth_rejects_bad_tau(self, diffusion):
        with pytest.raises(ValueError):
            diffusion.heat_smooth(np.zeros((1, 1)), np.zeros((1, 1)), 0.0)

    def test_row_softmax_values(self, diffusion):
        S = diffusion.row_softmax(np.array([[1.0, 0.0]]), 1.0)
        e = math.e
        assert S[0] == pytest.approx([e / (e + 1), 1 / (e + 1)])

    def test_row_softmax_is_stochastic_and_stable(self, diffusion):
        G = np.array([[1000.0, 999.0, -1000.0], [0.0, 0.0, 0.0]])
        S = diffusion.row_softmax(G, 0.5)
        assert np.all(np.isfinite(S))
        assert np.allclose(S.sum(axis=1), 1.0)
        assert S[1] == pytest.approx([1 / 3] * 3)

    def test_target_monochrome_triangle(self, diffusion, k3):
        S = np.tile([1.0, 0.0, 0.0], (3, 1))
        assert diffusion.target_value(k3, S) == pytest.approx(6.0)

    def test_target_uniform_rows(self, diffusion, petersen):
        k = 3
        S = np.full((petersen.n, k), 1.0 / k)
        assert diffusion.target_value(petersen, S) == pytest.approx(2 * petersen.m / k)

    def test_target_on_one_hot_is_twice_conflicts(self, diffusion, evaluation, graph_tools):
        for nx_graph in nx.graph_atlas_g():
            if not 1 <= nx_graph.number_of_nodes() <= 5:
                continue
            graph = graph_tools.from_networkx(nx_graph)
            for k in (2, 3):
                for assignment in itertools.product(range(k), repeat=graph.n):
                    S = np.eye(k)[list(assignment)]
                    expected = 2 * evaluation.count_conflicts(graph, assignment)
                    assert diffusion.target_value(graph, S) == pytest.approx(expected)

    def test_target_of_edgeless_graph(self, diffusion, edgeless10):
        assert diffusion.target_value(edgeless10, np.full((10, 2), 0.5)) == 0.0


class TestGradient:
    """target_gradient against central finite differences."""

    @pytest.mark.parametrize("target_input", ["smoothed", "raw"])
    def test_matches_finite_differences(self, diffusion, graph_tools, target_input):
        rng = np.random.default_rng(2024)
        step = 1e-6
        checked = 0
        for instance in range(50):
            n = int(rng.integers(3, 13))
            k = int(rng.integers(2, 5))
            nx_graph = nx.gnp_random_graph(n, 0.5, seed=instance)
            if nx_graph.number_of_edges() == 0:
                nx_graph.add_edge(0, 1)
            graph = graph_tools.from_networkx(nx_graph)
            theta = rng.random((n, k))
            x = rng.random((n, k))
            tau = float(rng.uniform(0.05, 2.0))
            alpha = float(rng.uniform(0.2, 2.0))

            analytic = diffusion.target_gradient(graph, theta, x, tau, alpha, target_input)
            numeric = np.zeros_like(theta)
            for i, c in itertools.product(range(n), range(k)):
                bump = np.zeros_like(theta)
                bump[i, c] = step
                numeric[i, c] = (
                    _target(diffusion, graph, theta + bump, x, tau, alpha, target_input)
                    - _target(diffusion, graph, theta - bump, x, tau, alpha, target_input)
                ) / (2 * step)

            # entries near zero are compared against a floor instead of themselves
            floor = max(1e-3 * np.abs(numeric).max(), 1e-2)
            relative = np.abs(analytic - numeric) / np.maximum(np.abs(numeric), floor)
            assert relative.max() <= 1e-5, f"instance {instance}: n={n} k={k} tau={tau:.3f} alpha={alpha:.3f}"
            checked += 1
        assert checked == 50

    def test_symmetric_on_single_edge(self, diffusion, k2):
        theta = np.array([[0.3, 0.8], [0.3, 0.8]])
        gradient = diffusion.target_gradient(k2, theta, theta.copy(), 0.5, 1.0)
        assert np.allclose(gradient[0], gradient[1])

    def test_zero_on_edgeless_graph(self, diffusion, edgeless10):
        theta = np.full((10, 3), 0.3)
        gradient = diffusion.target_gradient(edgeless10, theta, np.full((10, 3), 0.6), 0.5, 1.0)
        assert np.all(gradient == 0.0)


class TestSchedule:
    """tau_schedule endpoints and interpolation."""

    def test_linear_two_steps(self, diffusion):
        cfg = DiffusionConfig(k=2, T=2, tau0=1.0, tau_min=0.01)
        assert diffusion.tau_schedule(cfg, 0) == pytest.approx(1.0)
        assert diffusion.tau_schedule(cfg, 1) == pytest.approx(0.01)

    def test_geometric_midpoint(self, diffusion):
        cfg = DiffusionConfig(k=2, T=3, tau0=1.0, tau_min=0.01, schedule="geometric")
        assert diffusion.tau_schedule(cfg, 1) == pytest.approx(0.1)
        assert diffusion.tau_schedule(cfg, 2) == pytest.approx(0.01)

    def test_single_iteration_uses_tau0(self, diffusion):
        cfg = DiffusionConfig(k=2, T=1, tau0=0.7, tau_min=0.01)
        assert diffusion.tau_schedule(cfg, 0) == pytest.approx(0.7)

    @pytest.mark.parametrize("schedule", ["linear", "geometric"])
    def test_monotone_and_clamped(self, diffusion, schedule):
        cfg = DiffusionConfig(k=2, T=50, schedule=schedule)
        taus = [diffusion.tau_schedule(cfg, t) for t in range(60)]
        assert all(a >= b for a, b in zip(taus, taus[1:]))
        assert taus[-1] == pytest.approx(cfg.tau_min)
        assert min(taus) > 0

    def test_invalid_config(self):
        with pytest.raises(ValueError):
            DiffusionConfig(k=2, tau0=0.01, tau_min=1.0)
        with pytest.raises(ValueError):
            DiffusionConfig(k=2, schedule="cosine")
        with pytest.raises(ValueError):
            DiffusionConfig(k=0)


class TestStep:
    """init_theta, step and decode."""

    def test_init_theta_ranges(self, diffusion):
        state = diffusion.init_theta(7, 3, DiffusionConfig(k=3, seed=1))
        assert state.shape == (7, 3)
        assert state.iteration == 0
        assert np.all((state.theta >= 0) & (state.theta <= 1))

    def test_init_theta_constant(self, diffusion):
        state = diffusion.init_theta(4, 2, DiffusionConfig(k=2, theta_init="constant_half"))
        assert np.all(state.theta == 0.5)

    def test_zero_learning_rate_keeps_theta(self, diffusion, petersen):
        cfg = DiffusionConfig(k=3, eta=0.0)
        rng = np.random.default_rng(0)
        state = diffusion.init_theta(petersen.n, 3, cfg, rng)
        next_state = diffusion.step(petersen, state, cfg, rng)
        assert np.array_equal(next_state.theta, state.theta)
        assert next_state.iteration == 1

    def test_edgeless_graph_does_not_move(self, diffusion, edgeless10):
        cfg = DiffusionConfig(k=2)
        rng = np.random.default_rng(5)
        state = diffusion.init_theta(10, 2, cfg, rng)
        assert np.array_equal(diffusion.step(edgeless10, state, cfg, rng).theta, state.theta)

    def test_step_stays_in_unit_box(self, diffusion, k5):
        cfg = DiffusionConfig(k=2, eta=1000.0, M=3)
        rng = np.random.default_rng(9)
        state = diffusion.init_theta(k5.n, 2, cfg, rng)
        for _ in range(5):
            state = diffusion.step(k5, state, cfg, rng)
            assert np.all((state.theta >= 0.0) & (state.theta <= 1.0))

    def test_theta_state_validates_range(self):
        with pytest.raises(ValueError):
            ThetaState(theta=np.array([[1.5]]), iteration=0, tau=1.0)

    def test_decode_breaks_ties_low(self, diffusion):
        coloring = diffusion.decode(np.array([[0.5, 0.5, 0.2], [0.1, 0.9, 0.9], [0.0, 0.0, 1.0]]))
        assert coloring.assignment == (0, 1, 2)
        assert coloring.k == 3
        assert coloring.dummy_count == 0


class TestSolve:
    """Full solver runs."""

    def test_deterministic_for_fixed_seed(self, diffusion, petersen):
        cfg = DiffusionConfig(k=3, T=60, seed=11)
        first, first_trace = diffusion.solve(petersen, cfg)
        second, second_trace = diffusion.solve(petersen, cfg)
        assert first == second
        assert first_trace.values == second_trace.values
        assert first_trace.clash_counts == second_trace.clash_counts

    def test_returns_best_iteration(self, diffusion, evaluation, c5):
        cfg = DiffusionConfig(k=3, T=40, seed=4)
        coloring, trace = diffusion.solve(c5, cfg)
        assert trace.iterations == 40
        assert trace.best_clashes == min(trace.clash_counts)
        assert trace.best_iteration == trace.clash_counts.index(trace.best_clashes)
        assert evaluation.count_conflicts(c5, coloring.assignment) == trace.best_clashes
        assert coloring.solver_tag == "heat"
        assert coloring.dummy_count == 0

    def test_early_stop(self, diffusion, k4):
        cfg = DiffusionConfig(k=4, T=500, seed=0, early_stop=True)
        _, trace = diffusion.solve(k4, cfg)
        if trace.best_clashes == 0:
            assert trace.clash_counts[-1] == 0
            assert trace.iterations == trace.best_iteration + 1
        else:
            assert trace.iterations == 500

    def test_edgeless_graph_has_no_clashes(self, diffusion, edgeless10):
        _, trace = diffusion.solve(edgeless10, DiffusionConfig(k=3, T=5))
        assert trace.best_clashes == 0
        assert trace.best_iteration == 0

    @pytest.mark.parametrize("seed", [0, 5, 9])
    def test_trace_pairs_value_and_clashes_of_same_theta(self, diffusion, evaluation, petersen, seed):
        cfg = DiffusionConfig(k=3, T=1, seed=seed, alpha=0.7, target_input="raw")
        coloring, trace = diffusion.solve(petersen, cfg)
        initial = np.random.default_rng(seed).random((petersen.n, 3))
        expected_value = diffusion.target_value(petersen, diffusion.row_softmax(initial, 0.7))
        expected_colors = np.argmax(initial, axis=1)

        assert trace.values[0] == pytest.approx(expected_value, rel=1e-9)
        assert trace.clash_counts[0] == evaluation.count_conflicts(petersen, expected_colors)
        assert coloring.assignment == tuple(int(c) for c in expected_colors)
        assert trace.best_iteration == 0

    def test_single_edge_two_colors(self, diffusion, evaluation, k2):
        solved = 0
        for seed in range(10):
            coloring, _ = diffusion.solve(k2, DiffusionConfig(k=2, T=200, seed=seed))
            solved += evaluation.count_conflicts(k2, coloring.assignment) == 0
        assert solved >= 9

    def test_raw_target_input_runs(self, diffusion, c6):
        cfg = DiffusionConfig(k=2, T=30, seed=2, target_input="raw")
        coloring, trace = diffusion.solve(c6, cfg)
        assert len(coloring) == 6
        assert trace.iterations == 30

    def test_from_settings_overrides(self):
        cfg = DiffusionConfig.from_settings(k=3, seed=7, T=25, alpha=None)
        assert cfg.T == 25
        assert cfg.alpha == 1.0
        assert cfg.with_run(4, 8).to_dict()["k"] == 4

    @pytest.mark.slow
    @pytest.mark.parametrize("fixture, k", [
        ("k4", 4), ("c5", 3), ("petersen", 3), ("bipartite20", 2),
    ])
    def test_colors_easy_graphs(self, diffusion, evaluation, request, fixture, k):
        graph: Graph = request.getfixturevalue(fixture)
        solved = 0
        for seed in range(10):
            coloring, _ = diffusion.solve(graph, DiffusionConfig(k=k, seed=seed))
            solved += evaluation.count_conflicts(graph, coloring.assignment) == 0
        assert solved >= 9
