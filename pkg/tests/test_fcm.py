"""Tests for cognitive map construction, linguistic weights and dynamics."""

import math

import numpy as np
import pytest

from firecast.common.errors import DimensionError, DomainError, InputError, MapValidationError, UnknownTermError
from firecast.config import FcmConfig
from firecast.fcm import (
    DEFAULT_SCALE,
    Concept,
    LinguisticScale,
    Verdict,
    as_activation,
    fcm_build,
    fcm_run,
    fcm_step,
    resolve_linguistic,
    scenario_compare,
)
from firecast.fcm.dynamics import _classify
from tests.conftest import SANITARY_WEIGHTS


def _concepts(n):
    return [Concept(id=i, name=f"c{i}") for i in range(n)]


def _map(weights, **config):
    weights = np.asarray(weights, dtype=float)
    return fcm_build(_concepts(weights.shape[0]), weights, FcmConfig(**config))


def _oracle_trajectory(weights, initial, eps, max_iters):
    """Plain-Python Kosko iteration with the same stopping rule for fixed points."""
    n = len(initial)
    states = [list(initial)]
    for _ in range(max_iters):
        state = states[-1]
        nxt = [1.0 / (1.0 + math.exp(-sum(state[i] * weights[i][j] for i in range(n)))) for j in range(n)]
        states.append(nxt)
        if max(abs(a - b) for a, b in zip(nxt, state)) < eps:
            break
    return states


def _contractive_weights(rng, n):
    weights = rng.uniform(-0.5, 0.5, size=(n, n))
    np.fill_diagonal(weights, 0.0)
    return weights


class TestBuild:
    def test_sanitary_map(self, sanitary_map):
        assert sanitary_map.n == 7
        assert sanitary_map.names[4] == "wildfire_frequency"
        assert sanitary_map.weight(4, 5) == -0.9
        assert sanitary_map.weight(1, 0) == 1.0
        np.testing.assert_array_equal(sanitary_map.weights, SANITARY_WEIGHTS)

    def test_weights_are_read_only(self, sanitary_map):
        with pytest.raises(ValueError):
            sanitary_map.weights[0, 1] = 0.5

    def test_concepts_sorted_by_id(self):
        fcm = fcm_build([Concept(1, "b"), Concept(0, "a")], [[0, 0.3], [0.2, 0]])
        assert fcm.names == ["a", "b"]

    def test_out_of_range_weight_reports_position(self):
        with pytest.raises(MapValidationError) as exc_info:
            _map([[0, 1.5], [0, 0]])
        assert (exc_info.value.row, exc_info.value.col, exc_info.value.value) == (0, 1, 1.5)

    def test_nan_weight(self):
        with pytest.raises(MapValidationError):
            _map([[0, float("nan")], [0, 0]])

    def test_diagonal_needs_self_loops(self):
        with pytest.raises(MapValidationError) as exc_info:
            _map([[0, 0], [0, 0.4]])
        assert exc_info.value.row == exc_info.value.col == 1
        assert _map([[0, 0], [0, 0.4]], allow_self_loops=True).weight(1, 1) == 0.4

    @pytest.mark.parametrize(
        "concepts,weights",
        [
            (_concepts(2), [[0, 0.1, 0.2], [0, 0, 0]]),
            (_concepts(3), [[0, 0.1], [0.2, 0]]),
            ([Concept(0, "a"), Concept(2, "b")], [[0, 0.1], [0.2, 0]]),
            ([Concept(0, "a"), Concept(0, "b")], [[0, 0.1], [0.2, 0]]),
            ([], []),
        ],
    )
    def test_structural_errors(self, concepts, weights):
        with pytest.raises(MapValidationError):
            fcm_build(concepts, weights)

    def test_blank_concept_name(self):
        with pytest.raises(MapValidationError):
            Concept(0, "  ")

    def test_random_matrices_accepted_exactly_when_valid(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 6))
            weights = np.round(rng.uniform(-1.3, 1.3, size=(n, n)), 2)
            if rng.random() < 0.5:
                np.fill_diagonal(weights, 0.0)
            valid = bool(np.all(np.abs(weights) <= 1.0) and np.all(np.diag(weights) == 0.0))
            if valid:
                assert _map(weights).n == n
            else:
                with pytest.raises(MapValidationError):
                    _map(weights)

    def test_index_of(self, sanitary_map):
        assert sanitary_map.index_of("disease_rate") == 5
        assert sanitary_map.index_of("5") == 5
        assert sanitary_map.index_of(4) == 4
        with pytest.raises(MapValidationError):
            sanitary_map.index_of("rainfall")
        with pytest.raises(MapValidationError):
            sanitary_map.index_of(7)


class TestLinguisticScale:
    @pytest.mark.parametrize(
        "term,value",
        [
            ("extremely weak", 0.1),
            ("weak", 0.3),
            ("moderately", 0.5),
            ("stronger than usual", 0.7),
            ("strong", 0.9),
            ("negative:strong", -0.9),
        ],
    )
    def test_default_terms(self, term, value):
        assert resolve_linguistic(DEFAULT_SCALE, term) == value

    def test_unknown_term_lists_available(self):
        with pytest.raises(UnknownTermError) as exc_info:
            resolve_linguistic(DEFAULT_SCALE, "Strong")
        assert "strong" in exc_info.value.available

    def test_empty_scale(self):
        with pytest.raises(ValueError):
            resolve_linguistic(LinguisticScale({}), "strong")

    def test_merged_overrides(self):
        scale = DEFAULT_SCALE.merged({"strong": 0.95, "very strong": 1.0})
        assert resolve_linguistic(scale, "strong") == 0.95
        assert resolve_linguistic(scale, "very strong") == 1.0
        assert resolve_linguistic(DEFAULT_SCALE, "strong") == 0.9

    def test_value_out_of_range(self):
        with pytest.raises(MapValidationError):
            LinguisticScale({"huge": 2.0})


class TestStep:
    def test_positive_influence(self):
        nxt = fcm_step(_map([[0, 0.9], [0, 0]]), [1.0, 0.0])
        assert nxt[0] == pytest.approx(0.5, abs=1e-12)
        assert nxt[1] == pytest.approx(1 / (1 + math.exp(-0.9)), abs=1e-12)

    def test_negative_influence(self):
        nxt = fcm_step(_map([[0, -0.9], [0, 0]]), [1.0, 0.0])
        assert nxt[1] == pytest.approx(1 / (1 + math.exp(0.9)), abs=1e-12)

    def test_wildfire_only_state(self, sanitary_map):
        nxt = fcm_step(sanitary_map, [0, 0, 0, 0, 1, 0, 0])
        np.testing.assert_allclose(nxt[:5], [0.5] * 5, atol=1e-12)
        assert nxt[5] == pytest.approx(1 / (1 + math.exp(0.9)), abs=1e-12)
        assert nxt[6] == pytest.approx(1 / (1 + math.exp(-0.9)), abs=1e-12)
        assert nxt[5] == pytest.approx(0.28905, abs=1e-5)

    def test_lambda_scales_input(self):
        nxt = fcm_step(_map([[0, 0.5], [0, 0]], **{"lambda": 2.0}), [1.0, 0.0])
        assert nxt[1] == pytest.approx(1 / (1 + math.exp(-1.0)), abs=1e-12)

    def test_modified_rule_adds_own_activity(self):
        nxt = fcm_step(_map(np.zeros((2, 2)), update_rule="modified_kosko"), [0.2, 0.8])
        np.testing.assert_allclose(nxt, [1 / (1 + math.exp(-0.2)), 1 / (1 + math.exp(-0.8))], atol=1e-12)

    def test_results_strictly_inside_unit_interval(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 8))
            weights = rng.uniform(-1, 1, size=(n, n))
            np.fill_diagonal(weights, 0.0)
            nxt = fcm_step(_map(weights, **{"lambda": 50.0}), rng.random(n))
            assert np.all((nxt > 0) & (nxt < 1))

    def test_permutation_equivariance(self, sanitary_map, rng):
        for _ in range(20):
            order = rng.permutation(sanitary_map.n)
            state = rng.random(sanitary_map.n)
            permuted = sanitary_map.permuted(order)
            np.testing.assert_allclose(fcm_step(permuted, state[order]), fcm_step(sanitary_map, state)[order], atol=1e-12)

    def test_bad_state(self, sanitary_map):
        with pytest.raises(DimensionError):
            fcm_step(sanitary_map, [0.5] * 6)
        with pytest.raises(DomainError):
            fcm_step(sanitary_map, [0.5] * 6 + [1.2])
        with pytest.raises(DomainError):
            fcm_step(sanitary_map, [0.5] * 6 + [float("nan")])


class TestRun:
    @pytest.mark.parametrize("initial", [[0.5] * 7, [0.5, 0.5, 0.5, 0.5, 1.0, 0.5, 0.5]])
    def test_matches_plain_iteration(self, sanitary_map, initial):
        trajectory = fcm_run(sanitary_map, initial)
        expected = _oracle_trajectory(SANITARY_WEIGHTS, initial, eps=1e-6, max_iters=100)
        assert trajectory.verdict is Verdict.FIXED_POINT
        assert len(trajectory.states) == len(expected)
        for state, oracle in zip(trajectory.states, expected):
            np.testing.assert_allclose(state, oracle, rtol=0, atol=1e-9)

    def test_initial_state_included(self, sanitary_map):
        trajectory = fcm_run(sanitary_map, [0.5] * 7)
        np.testing.assert_array_equal(trajectory.states[0], [0.5] * 7)
        assert trajectory.iterations == len(trajectory.states) - 1

    def test_deterministic(self, sanitary_map):
        first = fcm_run(sanitary_map, [0.3] * 7)
        second = fcm_run(sanitary_map, [0.3] * 7)
        assert first.iterations == second.iterations
        for a, b in zip(first.states, second.states):
            np.testing.assert_array_equal(a, b)

    def test_fixed_points_are_sound(self, rng):
        for _ in range(100):
            n = int(rng.integers(2, 6))
            fcm = _map(_contractive_weights(rng, n))
            trajectory = fcm_run(fcm, rng.random(n))
            assert trajectory.verdict is Verdict.FIXED_POINT
            assert np.max(np.abs(fcm_step(fcm, trajectory.final) - trajectory.final)) < fcm.config.eps

    def test_permuted_map_reaches_permuted_fixed_point(self, sanitary_map, rng):
        order = rng.permutation(sanitary_map.n)
        initial = rng.random(sanitary_map.n)
        base = fcm_run(sanitary_map, initial)
        permuted = fcm_run(sanitary_map.permuted(order), initial[order])
        np.testing.assert_allclose(permuted.final, base.final[order], atol=1e-5)

    def test_zero_matrix_settles_at_half(self):
        fcm = _map(np.zeros((3, 3)))
        from_half = fcm_run(fcm, [0.5, 0.5, 0.5])
        assert from_half.verdict is Verdict.FIXED_POINT and from_half.iterations == 1
        from_zero = fcm_run(fcm, [0.0, 0.0, 0.0])
        assert from_zero.iterations == 2
        np.testing.assert_array_equal(from_zero.final, [0.5, 0.5, 0.5])

    def test_zero_budget(self, sanitary_map):
        fcm = fcm_build(sanitary_map.concepts, sanitary_map.weights, FcmConfig(max_iters=0))
        trajectory = fcm_run(fcm, [0.5] * 7)
        assert trajectory.verdict is Verdict.EXHAUSTED
        assert trajectory.iterations == 0

    def test_exhausted_budget(self, sanitary_map):
        fcm = fcm_build(sanitary_map.concepts, sanitary_map.weights, FcmConfig(max_iters=3))
        trajectory = fcm_run(fcm, [0.5] * 7)
        assert trajectory.verdict is Verdict.EXHAUSTED
        assert trajectory.iterations == 3
        assert not trajectory.converged
        assert trajectory.to_dict()["verdict"] == "exhausted"

    def test_clamped_concept_held(self, sanitary_map):
        initial = [0.5, 0.5, 0.5, 0.5, 1.0, 0.5, 0.5]
        trajectory = fcm_run(sanitary_map, initial, clamped=[4])
        assert all(state[4] == 1.0 for state in trajectory.states)
        assert trajectory.verdict is Verdict.FIXED_POINT

    def test_clamp_out_of_range(self, sanitary_map):
        with pytest.raises(InputError):
            fcm_run(sanitary_map, [0.5] * 7, clamped=[7])

    def test_to_dict(self, sanitary_map):
        data = fcm_run(sanitary_map, [0.5] * 7).to_dict()
        assert set(data) == {"states", "verdict", "period", "iterations"}
        assert data["verdict"] == "fixed_point" and data["period"] is None
        assert len(data["states"]) == data["iterations"] + 1


class TestClassify:
    def test_fixed_point(self):
        states = [np.array([0.1, 0.2]), np.array([0.1, 0.2 + 1e-8])]
        assert _classify(states, 1e-6) == (Verdict.FIXED_POINT, None)

    def test_period_two(self):
        a, b = np.array([0.2, 0.8]), np.array([0.8, 0.2])
        assert _classify([a, b, a.copy()], 1e-6) == (Verdict.LIMIT_CYCLE, 2)

    def test_period_three(self):
        a, b, c = np.array([0.1]), np.array([0.5]), np.array([0.9])
        assert _classify([c, a, b, c.copy()], 1e-6) == (Verdict.LIMIT_CYCLE, 3)

    def test_still_moving(self):
        assert _classify([np.array([0.1]), np.array([0.4]), np.array([0.7])], 1e-6) is None


class TestScenarioCompare:
    def test_deltas(self, sanitary_map):
        baseline = [0.5] * 7
        perturbed = [0.5, 0.5, 0.5, 0.5, 1.0, 0.5, 0.5]
        comparison = scenario_compare(sanitary_map, baseline, perturbed)
        assert comparison.comparable
        np.testing.assert_allclose(comparison.deltas, comparison.scenario.final - comparison.baseline.final)
        data = comparison.to_dict()
        assert data["verdicts"] == {"baseline": "fixed_point", "scenario": "fixed_point"}

    def test_identical_vectors_give_zero_deltas(self, sanitary_map):
        comparison = scenario_compare(sanitary_map, [0.4] * 7, [0.4] * 7)
        np.testing.assert_array_equal(comparison.deltas, np.zeros(7))

    def test_not_comparable_when_exhausted(self, sanitary_map):
        fcm = fcm_build(sanitary_map.concepts, sanitary_map.weights, FcmConfig(max_iters=2))
        comparison = scenario_compare(fcm, [0.5] * 7, [0.9] * 7)
        assert not comparison.comparable
        assert comparison.to_dict()["comparable"] is False


def test_as_activation_is_read_only():
    values = as_activation([0.0, 1.0], 2)
    with pytest.raises(ValueError):
        values[0] = 0.5
