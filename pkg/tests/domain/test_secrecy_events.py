import numpy as np
import pytest

from domain.channel_algebra import bsc
from domain.errors import InvalidArgumentError, ResourceBudgetError
from domain.models import ComputationBudget, Distribution
from domain.secrecy_events import (
    build_theta,
    check_chernoff_events,
    randomised_truncated_outputs,
    secrecy_chain_distances,
    truncated_conditional_law,
)
from domain.typicality import TypicalityParams, build_truncated_input, conditional_typical_mask
from tests.helpers import manual_codebook

PARAMS = TypicalityParams(delta=0.25, n=4)
EAVES = bsc(0.25)


def truncated():
    return build_truncated_input(Distribution.uniform(2), PARAMS)


def test_truncated_conditional_law_vanishes_off_the_typical_set():
    word = np.array([0, 0, 1, 1])
    law = truncated_conditional_law(EAVES, word, PARAMS)
    mask = conditional_typical_mask(EAVES, word, PARAMS)
    assert np.all(law[~mask] == 0.0)
    assert 0.0 < law.sum() <= 1.0


def test_theta_is_a_sub_probability_above_its_threshold():
    theta = build_theta(truncated(), EAVES, PARAMS, epsilon=0.1)
    assert theta.mass <= 1.0 + 1e-12
    assert np.all(theta.values[theta.in_s] >= theta.threshold)
    assert np.all(theta.values[~theta.in_s] == 0.0)
    assert theta.peak > 0.0
    with pytest.raises(InvalidArgumentError):
        build_theta(truncated(), EAVES, PARAMS, epsilon=-0.1)


def test_zero_epsilon_keeps_the_whole_support():
    theta = build_theta(truncated(), EAVES, PARAMS, epsilon=0.0)
    assert theta.mass == pytest.approx(float(theta.raw.sum()))
    assert theta.support_size == int((theta.raw > 0.0).sum())


def test_events_report_their_regime():
    codebook = manual_codebook([[3, 5], [10, 12]], n=4, delta=0.25)
    theta = build_theta(truncated(), EAVES, PARAMS, epsilon=0.3)
    events = check_chernoff_events(codebook, 0, EAVES, theta)
    assert events.holds.shape == (2,)
    assert events.randomisation_count == 2
    assert events.chernoff_applicable
    assert 0.0 <= events.analytic_bound <= 1.0
    assert 0.0 <= events.failure_rate <= 1.0

    loose = build_theta(truncated(), EAVES, PARAMS, epsilon=1.5)
    vacuous = check_chernoff_events(codebook, 0, EAVES, loose)
    assert vacuous.vacuous
    assert vacuous.analytic_bound is None
    assert vacuous.to_dict()["vacuous"] is True


def test_randomised_outputs_and_chain_distances():
    codebook = manual_codebook([[3, 5], [10, 12]], n=4, delta=0.25)
    theta = build_theta(truncated(), EAVES, PARAMS, epsilon=0.0)
    averages = randomised_truncated_outputs(codebook, 0, EAVES, theta)
    assert averages.shape == (2, 16)
    assert np.all(averages.sum(axis=1) <= 1.0 + 1e-12)
    distances = secrecy_chain_distances(codebook, 0, EAVES, theta)
    assert np.all((distances >= 0.0) & (distances <= 2.0 + 1e-12))


def test_randomised_outputs_follow_the_given_budget():
    codebook = manual_codebook([[3, 5], [10, 12]], n=4, delta=0.25)
    theta = build_theta(truncated(), EAVES, PARAMS, epsilon=0.0)
    with pytest.raises(ResourceBudgetError):
        randomised_truncated_outputs(codebook, 0, EAVES, theta, budget=ComputationBudget(max_outcomes=8))
    with pytest.raises(ResourceBudgetError, match="truncated output laws"):
        randomised_truncated_outputs(codebook, 0, EAVES, theta, budget=ComputationBudget(max_bytes=400))
