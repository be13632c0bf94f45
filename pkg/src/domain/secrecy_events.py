"""
Resolvability side of the construction: the truncated output law Theta on the eavesdropper's
alphabet, the per-message concentration events and the distance chain behind strong secrecy.
"""

import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
from loguru import logger

from domain.bounds import alpha_bound
from domain.channel_algebra import extension_row
from domain.coding import Codebook, message_output_distributions
from domain.errors import InvalidArgumentError
from domain.models import Channel, ComputationBudget
from domain.settings import TypicalityConstants
from domain.typicality import TruncatedInput, TypicalityParams, conditional_typical_mask, sequence_letters

EVENT_TOLERANCE = 1e-15


def truncated_conditional_law(
    channel: Channel, word: np.ndarray, params: TypicalityParams, budget: Optional[ComputationBudget] = None
) -> np.ndarray:
    """V^n(. | x^n) restricted to T^n_(V, delta)(x^n)."""
    return extension_row(channel, word) * conditional_typical_mask(channel, word, params, budget)


@dataclass(frozen=True, slots=True, eq=False)
class Theta:
    """
    raw: Theta'(z) = sum_x p'(x) Q~_x(z) over C^n; `in_s` marks S = {Theta' >= epsilon alpha}.
    `peak` is the largest Q~_x(z) over the typical inputs, the scale that maps every Q_x into [0, 1].
    """

    raw: np.ndarray
    in_s: np.ndarray
    epsilon: float
    alpha: float
    peak: float

    @property
    def threshold(self) -> float:
        return self.epsilon * self.alpha

    @property
    def values(self) -> np.ndarray:
        return np.where(self.in_s, self.raw, 0.0)

    @property
    def mass(self) -> float:
        """sum_{z in S} Theta(z); at least 1 - 2 epsilon in the regime the construction targets."""
        return float(self.values.sum())

    @property
    def support_size(self) -> int:
        return int(self.in_s.sum())


def build_theta(
    trunc: TruncatedInput,
    eaves: Channel,
    params: TypicalityParams,
    epsilon: float,
    alpha: Optional[float] = None,
    constants: TypicalityConstants = TypicalityConstants(),
    budget: Optional[ComputationBudget] = None,
) -> Theta:
    if epsilon < 0.0:
        raise InvalidArgumentError(f"epsilon must be >= 0, got {epsilon}")
    (budget or ComputationBudget()).require("eavesdropper output space", eaves.output_size, params.n)
    alpha = alpha if alpha is not None else alpha_bound(trunc.base, eaves, params, constants=constants)

    raw = np.zeros(eaves.output_size**params.n)
    peak = 0.0
    for word, weight in zip(trunc.letters, trunc.mass):
        law = truncated_conditional_law(eaves, word, params, budget)
        raw += weight * law
        peak = max(peak, float(law.max()))

    in_s = (raw >= epsilon * alpha) & (raw > 0.0)
    theta = Theta(raw=raw, in_s=in_s, epsilon=epsilon, alpha=alpha, peak=peak)
    logger.debug(f"Theta: |S| = {theta.support_size}, mass on S = {theta.mass:.6f}, threshold {theta.threshold:.3e}")
    return theta


@dataclass(frozen=True, slots=True, eq=False)
class EventDiagnostics:
    """Whether (1/L) sum_l Q_(x_jl)(z) stays within (1 +- epsilon) Theta(z) for every z, per message."""

    holds: np.ndarray
    epsilon: float
    randomisation_count: int
    analytic_bound: Optional[float]
    coarse_bound: Optional[float]

    @property
    def vacuous(self) -> bool:
        return self.epsilon >= 1.0

    @property
    def chernoff_applicable(self) -> bool:
        return 0.0 < self.epsilon < 0.5

    @property
    def held(self) -> int:
        return int(self.holds.sum())

    @property
    def failure_rate(self) -> float:
        return 1.0 - float(self.holds.mean())

    def to_dict(self) -> dict[str, Any]:
        return {
            "held": self.held,
            "messages": int(self.holds.size),
            "epsilon": self.epsilon,
            "vacuous": self.vacuous,
            "chernoff_applicable": self.chernoff_applicable,
            "analytic_bound": self.analytic_bound,
            "coarse_bound": self.coarse_bound,
        }


def randomised_truncated_outputs(
    codebook: Codebook,
    encoder: int,
    eaves: Channel,
    theta: Theta,
    params: Optional[TypicalityParams] = None,
    budget: Optional[ComputationBudget] = None,
) -> np.ndarray:
    """(1/L) sum_l Q_(x_jl) for every message, shape (J, |C|^n)."""
    params = params or codebook.params
    budget = budget or ComputationBudget()
    letters = sequence_letters(codebook.input_size, codebook.n, budget)
    words = codebook.words[encoder]
    unique, inverse = np.unique(words, return_inverse=True)
    budget.allocate("truncated output laws", (unique.size, eaves.output_size**codebook.n), np.float64)
    laws = np.stack([truncated_conditional_law(eaves, letters[w], params, budget) for w in unique]) * theta.in_s
    return laws[inverse.reshape(words.shape)].mean(axis=1)


def check_chernoff_events(
    codebook: Codebook,
    encoder: int,
    eaves: Channel,
    theta: Theta,
    params: Optional[TypicalityParams] = None,
    budget: Optional[ComputationBudget] = None,
) -> EventDiagnostics:
    averages = randomised_truncated_outputs(codebook, encoder, eaves, theta, params, budget)
    target = theta.values[None, :]
    eps = theta.epsilon
    lower = averages >= (1.0 - eps) * target - EVENT_TOLERANCE
    upper = averages <= (1.0 + eps) * target + EVENT_TOLERANCE
    holds = np.all(lower & upper, axis=1)

    count = codebook.randomisation_counts[encoder]
    analytic = coarse = None
    if 0.0 < eps < 0.5 and theta.peak > 0.0:
        # Q / peak lies in [0, 1] with mean Theta(z) / peak, one deviation bound per z in S
        means = theta.values[theta.in_s] / theta.peak
        analytic = min(1.0, float((2.0 * np.exp(-count * eps**2 * means / 3.0)).sum()))
        mu = min(1.0, theta.threshold / theta.peak)
        coarse = min(1.0, 2.0 * theta.raw.size * math.exp(-count * eps**2 * mu / 3.0))
    elif eps >= 1.0:
        logger.warning(f"epsilon = {eps:.3f} >= 1: the concentration events only bound from above")

    return EventDiagnostics(
        holds=holds, epsilon=eps, randomisation_count=count, analytic_bound=analytic, coarse_bound=coarse
    )


def secrecy_chain_distances(
    codebook: Codebook, encoder: int, eaves: Channel, theta: Theta, budget: Optional[ComputationBudget] = None
) -> np.ndarray:
    """||(1/L) sum_l V^n(. | x_jl) - Theta|| per message; at most 5 epsilon when the events hold."""
    outputs = message_output_distributions(codebook, encoder, eaves, budget)
    return np.abs(outputs - theta.values[None, :]).sum(axis=1)
