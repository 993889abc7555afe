"""Tests for the HW greedy, its threshold search and the exact oracles."""

import numpy as np
import pytest

from src.core.baselines import (
    brute_force_opt,
    brute_force_opt_power,
    default_power_grid,
    hw_binary_search,
    hw_constant,
    hw_greedy,
)
from src.core.instances import gen_linear_tight, gen_random
from src.core.metric import build_euclidean, build_instance
from src.core.sinr import assign_power, interference_model, is_feasible
from src.models.errors import FormulaDomainError, OracleSizeError
from src.models.experiment import GenConfig
from src.models.sinr import SINRParams


def replay_greedy(instance, power, params, c):
    """Step-by-step admission replay computed from pairwise affectances."""
    model = interference_model(instance, power, params)
    order = sorted(range(instance.n), key=lambda v: (instance.lengths[v], v))
    chosen = []
    for v in order:
        if sum(model.affectance[u, v] for u in chosen) <= c:
            chosen.append(v)
    return sorted(chosen)


class TestHWConstant:

    def test_alpha_three(self):
        expected = 1.0 / (2.0 + max(2.0, 384 ** (1.0 / 3.0))) ** 3
        assert hw_constant(3.0, 1.0) == pytest.approx(expected)

    def test_simulation_parameters(self):
        inner = (2 ** 6 * 3 * 0.5 * 1.1 / 0.1) ** (1 / 2.1)
        assert hw_constant(2.1, 0.5) == pytest.approx(1.0 / (2.0 + inner) ** 2.1)

    def test_shrinks_towards_two(self):
        assert hw_constant(2.05, 1.0) < hw_constant(3.0, 1.0)

    @pytest.mark.parametrize("alpha", [1.5, 2.0])
    def test_domain(self, alpha):
        with pytest.raises(FormulaDomainError):
            hw_constant(alpha, 1.0)


class TestHWGreedy:

    def test_single_link(self, single_link, unit_params):
        result = hw_greedy(single_link, assign_power("uniform", single_link, unit_params), unit_params, 0.01)
        assert result.active == (0,)
        assert result.feasible

    def test_matches_replay(self):
        params = SINRParams()
        for seed in range(5):
            instance = gen_random(GenConfig(n=8, d_max=10, world=15, seed=seed))
            power = assign_power("uniform", instance, params)
            result = hw_greedy(instance, power, params, 1.0)
            assert list(result.active) == replay_greedy(instance, power, params, 1.0)
            assert result.feasible == is_feasible(instance, result.active, power, params)

    def test_row(self, single_link, unit_params):
        row = hw_greedy(single_link, assign_power("uniform", single_link, unit_params), unit_params, 0.5).to_row()
        assert row == {"algorithm": "hw", "c": 0.5, "active_count": 1, "feasible": True}

    def test_threshold_positive(self, single_link, unit_params):
        with pytest.raises(ValueError):
            hw_greedy(single_link, assign_power("uniform", single_link, unit_params), unit_params, 0.0)


class TestHWBinarySearch:

    def test_non_interfering_links(self, make_collinear, unit_params):
        instance = make_collinear([1, 2, 3, 4], spacing=1e6)
        result = hw_binary_search(instance, assign_power("uniform", instance, unit_params), unit_params)
        assert result.active == (0, 1, 2, 3)

    def test_result_feasible(self):
        params = SINRParams()
        for seed in range(10):
            instance = gen_random(GenConfig(n=30, d_max=10, world=30, seed=seed))
            power = assign_power("mean", instance, params)
            result = hw_binary_search(instance, power, params)
            assert result.feasible
            assert is_feasible(instance, result.active, power, params)

    def test_at_least_hw_constant(self):
        params = SINRParams(alpha=3.1, beta=1.0)
        c = hw_constant(params.alpha, params.beta)
        for seed in range(20):
            instance = gen_random(GenConfig(n=40, d_max=10, world=40, seed=seed))
            power = assign_power("uniform", instance, params)
            greedy = hw_greedy(instance, power, params, c)
            searched = hw_binary_search(instance, power, params)
            if greedy.feasible:
                assert searched.size >= greedy.size

    def test_bounded_by_optimum(self):
        params = SINRParams()
        for seed in range(10):
            instance = gen_random(GenConfig(n=12, d_max=10, world=25, seed=seed))
            power = assign_power("uniform", instance, params)
            assert hw_binary_search(instance, power, params).size <= brute_force_opt(instance, power, params).size


class TestBruteForce:

    def test_single_link(self, single_link, unit_params):
        assert brute_force_opt(single_link, assign_power("uniform", single_link, unit_params), unit_params).active == (0,)

    def test_crossing_pair(self, crossing_pair, unit_params):
        result = brute_force_opt(crossing_pair, assign_power("uniform", crossing_pair, unit_params), unit_params)
        assert result.active == (0,)

    def test_matches_exhaustive_enumeration(self):
        params = SINRParams(alpha=2.1, beta=1.0)
        for seed in range(5):
            instance = gen_random(GenConfig(n=9, d_max=10, world=15, seed=seed))
            power = assign_power("uniform", instance, params)
            best = 0
            for bits in range(1 << instance.n):
                links = [v for v in range(instance.n) if bits >> v & 1]
                if len(links) > best and is_feasible(instance, links, power, params):
                    best = len(links)
            result = brute_force_opt(instance, power, params)
            assert result.size == best
            assert is_feasible(instance, result.active, power, params)

    def test_tight_instance_path_loss(self, unit_params):
        instance = gen_linear_tight(9.0, 2.0)
        result = brute_force_opt(instance, assign_power("path_loss", instance, unit_params), unit_params)
        assert result.active == tuple(range(1, 10))

    def test_tight_instance_linear(self, unit_params):
        instance = gen_linear_tight(9.0, 2.0)
        assert brute_force_opt(instance, assign_power("linear", instance, unit_params), unit_params).size == 10

    def test_size_limit(self):
        instance = gen_random(GenConfig(n=21, seed=1))
        params = SINRParams()
        with pytest.raises(OracleSizeError):
            brute_force_opt(instance, assign_power("uniform", instance, params), params)


class TestPowerOracle:

    def test_default_grid(self, unit_params):
        grid = default_power_grid(unit_params)
        assert len(grid) == 11
        assert grid[0] == 1.0
        assert grid[-1] == 2.0 ** -10

    def test_single_link(self, single_link, unit_params):
        assert brute_force_opt_power(single_link, unit_params).size == 1

    def test_unequal_powers_beat_uniform(self, unit_params):
        space = build_euclidean([[0, 0], [8, 0], [-3.5, 0], [-1.5, 0]])
        instance = build_instance(space, [(0, 1), (2, 3)])
        uniform = brute_force_opt(instance, assign_power("uniform", instance, unit_params), unit_params)
        result = brute_force_opt_power(instance, unit_params)
        assert uniform.size == 1
        assert result.active == (0, 1)
        assert result.power.powers == (0.5, 1.0)
        assert is_feasible(instance, result.active, result.power, unit_params)

    def test_at_least_uniform_optimum(self):
        params = SINRParams()
        for seed in range(5):
            instance = gen_random(GenConfig(n=5, d_max=10, world=10, seed=seed))
            uniform = brute_force_opt(instance, assign_power("uniform", instance, params), params)
            result = brute_force_opt_power(instance, params)
            assert result.size >= uniform.size
            assert is_feasible(instance, result.active, result.power, params)

    def test_size_limit(self):
        instance = gen_random(GenConfig(n=9, seed=1))
        params = SINRParams()
        with pytest.raises(OracleSizeError):
            brute_force_opt_power(instance, params)

    def test_grid_power_within_range(self):
        params = SINRParams()
        instance = gen_random(GenConfig(n=5, d_max=10, world=8, seed=2))
        result = brute_force_opt_power(instance, params)
        assert np.all(result.power.vector > 0)
        assert np.all(result.power.vector <= params.p_max)
