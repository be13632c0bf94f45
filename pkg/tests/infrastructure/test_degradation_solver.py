from typing import Tuple

import numpy as np
import pytest

from application.degradation_service import DegradationService, find_degradation, is_degraded
from domain.channel_algebra import bsc, compose, identity_channel
from domain.degradation_solver import DegradationSolver
from domain.errors import DimensionMismatchError
from domain.models import Channel
from infrastructure.optimization.scipy_degradation_solver import ScipyDegradationSolver


def test_bsc_chain_has_the_expected_kernel():
    witness = find_degradation(bsc(0.1), bsc(0.3))
    assert witness is not None
    assert witness.kernel.allclose(bsc(0.25), atol=1e-6)
    assert witness.residual <= 1e-9
    assert compose(bsc(0.1), witness.kernel).allclose(bsc(0.3), atol=1e-9)


def test_less_noisy_target_is_not_degraded():
    assert find_degradation(bsc(0.3), bsc(0.1)) is None
    assert not is_degraded(bsc(0.3), bsc(0.1))
    assert is_degraded(bsc(0.2), bsc(0.2))


def test_noiseless_base_degrades_to_anything():
    rng = np.random.default_rng(5)
    target = Channel(rng.dirichlet(np.ones(4), size=3))
    assert is_degraded(identity_channel(3), target)


def test_residual_of_the_best_kernel():
    kernel, residual = ScipyDegradationSolver().best_kernel(bsc(0.3), bsc(0.1))
    assert residual > 1e-3
    assert np.allclose(kernel.sum(axis=1), 1.0)
    with pytest.raises(DimensionMismatchError):
        ScipyDegradationSolver().best_kernel(bsc(0.1), identity_channel(3))


def test_first_violation_scans_in_order():
    service = DegradationService.create()
    assert service.first_violation([bsc(0.1)], [bsc(0.2), bsc(0.05), bsc(0.01)]) == (0, 1)
    assert service.first_violation([bsc(0.1), bsc(0.05)], [bsc(0.2), bsc(0.3)]) is None


class MismatchSolver(DegradationSolver):
    def best_kernel(self, base: Channel, target: Channel) -> Tuple[np.ndarray, float]:
        return np.full((base.output_size, target.output_size), 1.0 / target.output_size), 1.0


def test_checks_use_the_service_they_are_given():
    service = DegradationService(MismatchSolver())
    assert find_degradation(bsc(0.1), bsc(0.3), service) is None
    assert not is_degraded(bsc(0.2), bsc(0.2), service)
    assert is_degraded(bsc(0.2), bsc(0.2))
