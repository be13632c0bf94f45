import math

import numpy as np
import pytest

from domain.bounds import (
    analytic_bounds,
    chernoff_bound,
    default_epsilon,
    deviation_rate,
    entropy_continuity_bound,
    typical_mass_bound,
    type_representatives,
)
from domain.channel_algebra import bsc
from domain.errors import InvalidArgumentError, PreconditionError
from domain.models import Distribution
from domain.typicality import TypicalityParams, letter_counts

UNIFORM = Distribution.uniform(2)


def test_typical_mass_bound_formula():
    expected = 1.0 - 11**2 * 2.0 ** (-10 * 0.01 / (2.0 * math.log(2.0)))
    assert typical_mass_bound(10, 2, 0.1) == pytest.approx(expected)


def test_default_epsilon_uses_a_quarter_over_ln2():
    params = TypicalityParams(delta=0.5, n=8)
    assert default_epsilon(params) == pytest.approx(2.0 ** (-8 * 0.25 / (4.0 * math.log(2.0))))


def test_chernoff_bound_values_and_domain():
    assert chernoff_bound(200, 0.3, 0.5) == pytest.approx(2.0 * math.exp(-3.0))
    with pytest.raises(InvalidArgumentError):
        chernoff_bound(0, 0.3, 0.5)
    with pytest.raises(InvalidArgumentError):
        chernoff_bound(10, 0.5, 0.5)
    with pytest.raises(InvalidArgumentError):
        chernoff_bound(10, 0.3, 1.5)


@pytest.mark.parametrize("mu", [0.2, 0.5, 0.8])
def test_empirical_deviation_rate_stays_below_chernoff(mu):
    rng = np.random.default_rng(11)
    count, epsilon = 200, 0.3
    samples = rng.random((1000, count)) < mu
    assert deviation_rate(samples, mu, epsilon) <= chernoff_bound(count, epsilon, mu)


def test_entropy_continuity_bound():
    assert entropy_continuity_bound(0.0, 5, 2) == 0.0
    assert entropy_continuity_bound(0.25, 4, 2) == pytest.approx(0.5 + 1.0)
    with pytest.raises(PreconditionError):
        entropy_continuity_bound(0.5, 4, 2)


def test_type_representatives_cover_each_type_once():
    params = TypicalityParams(delta=0.2, n=6)
    words = type_representatives(UNIFORM, params)
    counts = letter_counts(words, 2)[:, 1]
    assert sorted(counts.tolist()) == [2, 3, 4]


def test_analytic_bounds_hold_inside_their_range():
    params = TypicalityParams(delta=0.02, n=10)
    bounds = analytic_bounds(UNIFORM, bsc(0.03), bsc(0.35), params)
    assert bounds.cardinality_bound_holds
    assert bounds.conditional_bound_holds
    assert bounds.output_bound_holds
    assert set(bounds.to_dict()) == {
        "alpha",
        "beta",
        "output_bound",
        "output_typical_size",
        "max_conditional_probability",
        "max_output_mass",
    }


def test_analytic_bounds_refuse_delta_outside_range():
    with pytest.raises(PreconditionError):
        analytic_bounds(UNIFORM, bsc(0.03), bsc(0.35), TypicalityParams(delta=0.1, n=6))
