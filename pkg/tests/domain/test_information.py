import math

import numpy as np
import pytest

from domain.channel_algebra import bsc, compose, identity_channel
from domain.errors import DimensionMismatchError, InvalidArgumentError
from domain.information import (
    PINSKER_CONSTANT,
    binary_entropy,
    conditional_entropy,
    conditional_mutual_information_degraded,
    entropy,
    joint_from_channel,
    kl_divergence,
    mutual_information,
    mutual_information_joint,
    pinsker_tv_bound,
    variational_distance,
)


def test_entropy_of_uniform_and_point_mass():
    assert entropy([0.25] * 4) == pytest.approx(2.0)
    assert entropy([1.0, 0.0]) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0)
    assert binary_entropy(0.0) == 0.0
    with pytest.raises(InvalidArgumentError):
        binary_entropy(1.2)


@pytest.mark.parametrize("eta", [0.0, 0.03, 0.2, 0.5])
def test_bsc_mutual_information_with_uniform_input(eta):
    assert mutual_information((0.5, 0.5), bsc(eta)) == pytest.approx(1.0 - binary_entropy(eta), abs=1e-12)
    assert conditional_entropy((0.5, 0.5), bsc(eta)) == pytest.approx(binary_entropy(eta), abs=1e-12)


def test_mutual_information_is_bounded_by_input_entropy():
    p = (0.2, 0.3, 0.5)
    assert mutual_information(p, identity_channel(3)) == pytest.approx(entropy(p))
    with pytest.raises(DimensionMismatchError):
        mutual_information(p, bsc(0.1))


def test_mutual_information_of_joint_matches_channel_form():
    p, w = (0.3, 0.7), bsc(0.15)
    assert mutual_information_joint(joint_from_channel(p, w)) == pytest.approx(mutual_information(p, w), abs=1e-12)


def test_variational_distance_range():
    assert variational_distance((1.0, 0.0), (0.0, 1.0)) == pytest.approx(2.0)
    assert variational_distance((0.3, 0.7), (0.3, 0.7)) == 0.0
    with pytest.raises(DimensionMismatchError):
        variational_distance((0.5, 0.5), (1.0 / 3, 1.0 / 3, 1.0 / 3))


def test_kl_divergence():
    assert kl_divergence((0.5, 0.5), (0.5, 0.5)) == 0.0
    assert kl_divergence((0.5, 0.5), (1.0, 0.0)) == math.inf
    assert kl_divergence((1.0, 0.0), (0.5, 0.5)) == pytest.approx(1.0)


def test_pinsker_inequality_on_random_pairs():
    rng = np.random.default_rng(3)
    for _ in range(50):
        p, q = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
        assert variational_distance(p, q) <= pinsker_tv_bound(kl_divergence(p, q)) + 1e-12


def test_pinsker_constant_and_domain():
    assert PINSKER_CONSTANT == pytest.approx(math.sqrt(2.0 * math.log(2.0)))
    assert pinsker_tv_bound(0.0) == 0.0
    with pytest.raises(InvalidArgumentError):
        pinsker_tv_bound(-1e-3)


def test_conditional_mutual_information_of_degraded_chain():
    p, w, kernel = (0.4, 0.6), bsc(0.05), bsc(0.2)
    expected = mutual_information(p, w) - mutual_information(p, compose(w, kernel))
    assert conditional_mutual_information_degraded(p, w, kernel) == pytest.approx(expected)
    assert expected > 0.0
