import math

import numpy as np
import pytest

from domain.channel_algebra import bsc, identity_channel
from domain.errors import InvalidArgumentError
from domain.information import binary_entropy
from domain.models import Channel
from domain.secrecy_objectives import AuxiliarySecrecyGapObjective, SecrecyGapObjective
from domain.settings import OptimizerSettings
from domain.simplex_maximizer import OptimizationMethod, project_rows_to_simplex
from infrastructure.optimization.grid_search_maximizer import GridSearchMaximizer, grid_point_count, simplex_grid
from infrastructure.optimization.projected_gradient_maximizer import ProjectedGradientMaximizer


def random_bsc_family(rng, size):
    return [bsc(float(x)) for x in rng.uniform(0.0, 0.5, size=size)]


def random_channel(rng, inputs, outputs):
    return Channel(rng.dirichlet(np.ones(outputs), size=inputs))


def test_simplex_grid_enumerates_compositions():
    assert simplex_grid(2, 4)[:, 1].tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]
    grid = simplex_grid(3, 10)
    assert grid.shape == (grid_point_count(3, 10), 3) == (66, 3)
    assert np.allclose(grid.sum(axis=1), 1.0)
    assert np.all(grid >= 0.0)
    assert len({tuple(np.round(row * 10).astype(int)) for row in grid}) == 66
    with pytest.raises(InvalidArgumentError):
        simplex_grid(4, 10)


def test_projection_onto_the_simplex():
    projected = project_rows_to_simplex(np.array([[0.8, 0.6, -0.2], [0.2, 0.3, 0.5]]))
    assert np.allclose(projected.sum(axis=1), 1.0)
    assert np.all(projected >= 0.0)
    assert projected[0] == pytest.approx([0.6, 0.4, 0.0])
    assert projected[1] == pytest.approx([0.2, 0.3, 0.5])


def test_symmetric_pair_is_maximized_by_the_uniform_input():
    objective = SecrecyGapObjective([bsc(0.03)], [bsc(0.35)])
    result = GridSearchMaximizer.create(OptimizerSettings()).maximize(objective)
    assert result.value == pytest.approx(binary_entropy(0.35) - binary_entropy(0.03), abs=1e-9)
    assert result.point[0][0] == pytest.approx([0.5, 0.5], abs=1e-4)
    assert result.method is OptimizationMethod.GRID_SEARCH


@pytest.mark.parametrize("seed", range(20))
def test_refined_grid_search_matches_a_fine_exhaustive_sweep(seed):
    rng = np.random.default_rng(seed)
    states = int(rng.integers(1, 4))
    objective = SecrecyGapObjective(random_bsc_family(rng, states), random_bsc_family(rng, states))
    refined = GridSearchMaximizer.create(OptimizerSettings(grid=1000)).maximize(objective)
    coarse = GridSearchMaximizer.create(OptimizerSettings(grid=1000), refine=False).maximize(objective)
    fine = GridSearchMaximizer.create(OptimizerSettings(grid=10_000), refine=False).maximize(objective)
    assert coarse.method is OptimizationMethod.EXHAUSTIVE
    assert refined.value >= coarse.value
    assert abs(refined.value - fine.value) <= 1e-4


@pytest.mark.parametrize("seed", range(5))
def test_ternary_inputs_are_refined_above_the_grid(seed):
    rng = np.random.default_rng(100 + seed)
    objective = SecrecyGapObjective([random_channel(rng, 3, 3)], [random_channel(rng, 3, 2)])
    settings = OptimizerSettings(grid=60, restarts=4)
    refined = GridSearchMaximizer.create(settings).maximize(objective)
    coarse = GridSearchMaximizer.create(settings, refine=False).maximize(objective)
    assert refined.value >= coarse.value


def test_projected_gradient_finds_capacity_of_noiseless_ternary_channel():
    objective = SecrecyGapObjective([identity_channel(3)], [])
    result = ProjectedGradientMaximizer.create(OptimizerSettings(restarts=4)).maximize(objective)
    assert result.value == pytest.approx(math.log2(3.0), abs=1e-6)


def test_projected_gradient_is_deterministic():
    objective = AuxiliarySecrecyGapObjective([bsc(0.05)], [bsc(0.3)], aux_cardinality=3)
    settings = OptimizerSettings(restarts=3, max_iterations=50)
    first = ProjectedGradientMaximizer.create(settings).maximize(objective)
    second = ProjectedGradientMaximizer.create(settings).maximize(objective)
    assert first.value == second.value
    assert first.start_index == second.start_index


def test_identity_prefix_reproduces_the_plain_objective():
    legit, eaves = [bsc(0.05), bsc(0.1)], [bsc(0.3)]
    prior = np.array([0.4, 0.6])
    plain = SecrecyGapObjective(legit, eaves).value((prior[None, :],))
    auxiliary = AuxiliarySecrecyGapObjective(legit, eaves, aux_cardinality=3)
    assert auxiliary.value(auxiliary.identity_point(prior)) == pytest.approx(plain, abs=1e-12)
    with pytest.raises(InvalidArgumentError):
        AuxiliarySecrecyGapObjective(legit, eaves, aux_cardinality=1).identity_point(prior)
