"""Closed-form finite-n bounds of the random-coding argument, next to the exact quantities they bound."""

import math
from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np

from domain.channel_algebra import output_distribution
from domain.errors import InvalidArgumentError, PreconditionError
from domain.information import LN2, conditional_entropy, entropy, mutual_information
from domain.models import Channel, ComputationBudget, Distribution
from domain.settings import TypicalityConstants
from domain.typicality import (
    TypicalityParams,
    conditional_typical_mask,
    letter_counts,
    sequence_letters,
    sequence_probabilities,
    typical_mask,
)

TYPICALITY_EXPONENT = 1.0 / (2.0 * LN2)
EPSILON_EXPONENT = TYPICALITY_EXPONENT / 2.0

SlackFunction = Callable[[float], float]


def typical_mass_bound(n: int, alphabet_size: int, delta: float) -> float:
    """
    1 - (n+1)^|A| 2^(-n c delta^2) with c = 1/(2 ln 2), a lower bound on p^n(T^n_{p,delta}).
    Use |A| |B| as alphabet size for the conditional version.
    """
    return 1.0 - (n + 1) ** alphabet_size * 2.0 ** (-n * TYPICALITY_EXPONENT * delta**2)


def default_epsilon(params: TypicalityParams) -> float:
    """epsilon = 2^(-n c' delta^2) with c' = 1/(4 ln 2)."""
    return 2.0 ** (-params.n * EPSILON_EXPONENT * params.delta**2)


def chernoff_bound(count: int, epsilon: float, mu: float) -> float:
    """
    2 exp(-L epsilon^2 mu / 3) bounds the probability that the mean of L i.i.d. [0, 1]
    variables with expectation mu leaves [(1 - epsilon) mu, (1 + epsilon) mu].
    """
    if count < 1:
        raise InvalidArgumentError(f"sample count must be >= 1, got {count}")
    if not 0.0 < epsilon < 0.5:
        raise InvalidArgumentError(f"epsilon must lie in (0, 1/2), got {epsilon}")
    if not 0.0 <= mu <= 1.0:
        raise InvalidArgumentError(f"mu must lie in [0, 1], got {mu}")
    return 2.0 * math.exp(-count * epsilon**2 * mu / 3.0)


def deviation_rate(samples: np.ndarray, mu: float, epsilon: float) -> float:
    """Fraction of rows of `samples` whose mean falls outside [(1 - epsilon) mu, (1 + epsilon) mu]."""
    means = np.asarray(samples, dtype=np.float64).mean(axis=1)
    outside = (means < (1.0 - epsilon) * mu) | (means > (1.0 + epsilon) * mu)
    return float(outside.mean())


def entropy_continuity_bound(theta: float, n: int, output_size: int) -> float:
    """-theta log theta + theta n log |C|, valid when the two output laws are within theta <= 1/e."""
    if not 0.0 <= theta <= math.exp(-1.0):
        raise PreconditionError(f"entropy continuity needs 0 <= theta <= 1/e, got {theta}")
    if theta == 0.0:
        return 0.0
    return -theta * math.log2(theta) + theta * n * math.log2(output_size)


def alpha_bound(
    p: Distribution,
    eaves: Channel,
    params: TypicalityParams,
    f1: Optional[SlackFunction] = None,
    constants: TypicalityConstants = TypicalityConstants(),
) -> float:
    """2^(-n (H(pV) + f1(delta)))."""
    slack = f1(params.delta) if f1 else constants.slack(p.size, eaves.output_size, params.delta)
    return 2.0 ** (-params.n * (entropy(output_distribution(p, eaves)) + slack))


def beta_bound(
    p: Distribution,
    eaves: Channel,
    params: TypicalityParams,
    f2: Optional[SlackFunction] = None,
    constants: TypicalityConstants = TypicalityConstants(),
) -> float:
    """2^(-n (H(V|p) - f2(delta)))."""
    slack = f2(params.delta) if f2 else constants.slack(p.size, eaves.output_size, params.delta)
    return 2.0 ** (-params.n * (conditional_entropy(p, eaves) - slack))


@dataclass(frozen=True, slots=True)
class AnalyticBounds:
    """
    alpha = 2^(-n (H(pV) + f1)), beta = 2^(-n (H(V|p) - f2)) and the output-mass bound
    (n+1)^(|A||B|) 2^(-n (I(p,W) - f)), each with the exact enumerated quantity it bounds.
    """

    alpha: float
    beta: float
    output_bound: float
    output_typical_size: int
    max_conditional_probability: float
    max_output_mass: float

    @property
    def cardinality_bound_holds(self) -> bool:
        return self.output_typical_size <= 1.0 / self.alpha

    @property
    def conditional_bound_holds(self) -> bool:
        return self.max_conditional_probability <= self.beta

    @property
    def output_bound_holds(self) -> bool:
        return self.max_output_mass <= self.output_bound

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "output_bound": self.output_bound,
            "output_typical_size": self.output_typical_size,
            "max_conditional_probability": self.max_conditional_probability,
            "max_output_mass": self.max_output_mass,
        }


def type_representatives(
    p: Distribution, params: TypicalityParams, budget: Optional[ComputationBudget] = None
) -> np.ndarray:
    """One typical word per type class; the quantities below only depend on the type of x^n."""
    letters = sequence_letters(p.size, params.n, budget)[typical_mask(p, params, budget)]
    _, first = np.unique(letter_counts(letters, p.size), axis=0, return_index=True)
    return letters[np.sort(first)]


def analytic_bounds(
    p: Distribution,
    legit: Channel,
    eaves: Channel,
    params: TypicalityParams,
    f1: Optional[SlackFunction] = None,
    f2: Optional[SlackFunction] = None,
    f: Optional[SlackFunction] = None,
    constants: TypicalityConstants = TypicalityConstants(),
    budget: Optional[ComputationBudget] = None,
) -> AnalyticBounds:
    params.require_output_bound_range(legit.input_size, legit.output_size)
    n, size = params.n, p.size
    f = f or (lambda d: constants.slack(size, legit.output_size, d))

    eaves_output = output_distribution(p, eaves)
    alpha = alpha_bound(p, eaves, params, f1, constants)
    beta = beta_bound(p, eaves, params, f2, constants)
    output_bound = (n + 1) ** (size * legit.output_size) * 2.0 ** (
        -n * (mutual_information(p, legit) - f(params.delta))
    )

    wide = TypicalityParams(delta=2 * size * params.delta, n=n)
    output_typical_size = int(typical_mask(eaves_output, wide, budget).sum())

    legit_law = sequence_probabilities(output_distribution(p, legit), n, budget)
    eaves_outputs = sequence_letters(eaves.output_size, n, budget)
    max_conditional = 0.0
    max_output_mass = 0.0
    for word in type_representatives(p, params, budget):
        mask = conditional_typical_mask(eaves, word, params, budget)
        if mask.any():
            rows = eaves.rows[word[None, :], eaves_outputs[mask]]
            max_conditional = max(max_conditional, float(rows.prod(axis=1).max()))
        legit_mask = conditional_typical_mask(legit, word, params, budget)
        max_output_mass = max(max_output_mass, float(legit_law[legit_mask].sum()))

    return AnalyticBounds(
        alpha=alpha,
        beta=beta,
        output_bound=output_bound,
        output_typical_size=output_typical_size,
        max_conditional_probability=max_conditional,
        max_output_mass=max_output_mass,
    )
