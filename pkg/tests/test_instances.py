"""Tests for the random topology generator and the tightness construction."""

import numpy as np
import pytest

from src.core.instances import gen_linear_tight, gen_random, tight_link_count
from src.core.metric import build_matrix, distance
from src.core.sinr import assign_power, is_feasible
from src.models.errors import ConfigError
from src.models.experiment import GenConfig


class TestGenRandom:
    """Senders uniform in the square, receivers at a uniform radius."""

    def test_bounds(self):
        config = GenConfig(n=1000, d_max=10, world=100, seed=21)
        instance = gen_random(config)
        senders = np.array([instance.space.points[link.sender] for link in instance.links])
        assert np.all((senders >= 0) & (senders <= 100))
        assert np.all(instance.lengths > 0)
        assert np.all(instance.lengths <= 10 + 1e-9)

    def test_same_seed_same_instance(self):
        first = gen_random(GenConfig(n=50, seed=8))
        second = gen_random(GenConfig(n=50, seed=8))
        assert first == second

    def test_different_seed(self):
        assert gen_random(GenConfig(n=50, seed=8)) != gen_random(GenConfig(n=50, seed=9))

    def test_mean_length(self):
        instance = gen_random(GenConfig(n=10000, d_max=10, seed=2))
        assert instance.lengths.mean() == pytest.approx(5.0, rel=0.05)

    def test_point_layout(self):
        instance = gen_random(GenConfig(n=4, seed=1))
        assert [(link.sender, link.receiver) for link in instance.links] == [(0, 1), (2, 3), (4, 5), (6, 7)]

    @pytest.mark.parametrize("kwargs", [{"n": 0}, {"d_max": 0}, {"world": -1}])
    def test_invalid_config(self, kwargs):
        with pytest.raises(ConfigError):
            GenConfig(**kwargs)


class TestLinearTight:
    """One long link and floor((D/3)^alpha) unit links."""

    @pytest.fixture
    def instance(self):
        return gen_linear_tight(9.0, 2.0)

    def test_counts(self, instance):
        assert tight_link_count(9.0, 2.0) == 9
        assert instance.n == 10
        assert instance.delta() == 9.0
        assert instance.lengths[0] == 9.0

    def test_closure_distances(self, instance):
        space = instance.space
        assert distance(space, 0, 2) == 4.5   # s_w to s_v
        assert distance(space, 0, 3) == 5.5   # s_w to r_v
        assert distance(space, 2, 5) == 10.0  # s_v1 to r_v2
        assert distance(space, 2, 1) == 13.5  # s_v to r_w

    def test_passes_metric_validation(self, instance):
        rebuilt = build_matrix([list(row) for row in instance.space.distances])
        assert rebuilt == instance.space

    def test_short_links_feasible_under_linear_power(self, instance, unit_params):
        power = assign_power("linear", instance, unit_params)
        assert is_feasible(instance, range(1, 10), power, unit_params)

    def test_long_link_blocks_under_path_loss_power(self, instance, unit_params):
        power = assign_power("path_loss", instance, unit_params)
        assert is_feasible(instance, range(1, 10), power, unit_params)
        assert not is_feasible(instance, [0, 1], power, unit_params)

    def test_rejects_short_long_link(self):
        with pytest.raises(ConfigError):
            gen_linear_tight(2.0, 2.0)
