"""Information measures in bits. 0 log 0 is taken as 0 everywhere."""

import math
from typing import Sequence

import numpy as np
from scipy.special import entr, rel_entr

from domain.errors import DimensionMismatchError, InvalidArgumentError
from domain.models import Channel, Distribution, JointDistribution, as_distribution

LN2 = math.log(2.0)
PINSKER_CONSTANT = math.sqrt(2.0 * LN2)


def entropy_bits(values: np.ndarray, axis: int = -1) -> np.ndarray:
    """Row-wise entropy of an array of (unvalidated) probability vectors."""
    return entr(values).sum(axis=axis) / LN2


def entropy(p: Distribution | Sequence[float]) -> float:
    return float(entropy_bits(as_distribution(p).probs))


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise InvalidArgumentError(f"binary entropy is defined on [0, 1], got {x}")
    return float(entropy_bits(np.array([x, 1.0 - x])))


def _check_input(p: Distribution, channel: Channel) -> None:
    if p.size != channel.input_size:
        raise DimensionMismatchError(
            f"input distribution of size {p.size} for a channel with {channel.input_size} inputs",
            channel.input_size,
            p.size,
        )


def conditional_entropy(p: Distribution | Sequence[float], channel: Channel) -> float:
    p = as_distribution(p)
    _check_input(p, channel)
    return float(p.probs @ entropy_bits(channel.rows))


def mutual_information_batch(inputs: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """I(p, W) for every row p of `inputs` (K x A) against the stochastic matrix `rows` (A x B)."""
    outputs = inputs @ rows
    return np.maximum(entropy_bits(outputs) - inputs @ entropy_bits(rows), 0.0)


def mutual_information(p: Distribution | Sequence[float], channel: Channel) -> float:
    p = as_distribution(p)
    _check_input(p, channel)
    return float(mutual_information_batch(p.probs[None, :], channel.rows)[0])


def variational_distance(p: Distribution | Sequence[float], q: Distribution | Sequence[float]) -> float:
    """||p - q|| = sum_x |p(x) - q(x)|, in [0, 2]."""
    p, q = as_distribution(p), as_distribution(q)
    if p.size != q.size:
        raise DimensionMismatchError(f"distributions of sizes {p.size} and {q.size}", p.size, q.size)
    return float(np.abs(p.probs - q.probs).sum())


def kl_divergence(p: Distribution | Sequence[float], q: Distribution | Sequence[float]) -> float:
    """D(p || q) in bits; math.inf when q vanishes somewhere p does not."""
    p, q = as_distribution(p), as_distribution(q)
    if p.size != q.size:
        raise DimensionMismatchError(f"distributions of sizes {p.size} and {q.size}", p.size, q.size)
    if np.any((q.probs == 0.0) & (p.probs > 0.0)):
        return math.inf
    return max(0.0, float(rel_entr(p.probs, q.probs).sum() / LN2))


def joint_from_channel(p: Distribution | Sequence[float], channel: Channel) -> JointDistribution:
    p = as_distribution(p)
    _check_input(p, channel)
    return JointDistribution(p.probs[:, None] * channel.rows)


def mutual_information_joint(joint: JointDistribution) -> float:
    """D(joint || product of marginals) in bits."""
    value = rel_entr(joint.probs, joint.product_of_marginals()).sum() / LN2
    return max(0.0, float(value))


def pinsker_tv_bound(mutual_info_bits: float) -> float:
    if mutual_info_bits < 0.0:
        raise InvalidArgumentError(f"mutual information must be >= 0, got {mutual_info_bits}")
    return PINSKER_CONSTANT * math.sqrt(mutual_info_bits)


def conditional_mutual_information_degraded(
    p: Distribution | Sequence[float], legit: Channel, kernel: Channel
) -> float:
    """I(X;Y|Z) for the chain X -> Y -> Z with Z = Y passed through `kernel`."""
    if legit.output_size != kernel.input_size:
        raise DimensionMismatchError(
            f"kernel expects {kernel.input_size} inputs, legit channel has {legit.output_size} outputs",
            legit.output_size,
            kernel.input_size,
        )
    p = as_distribution(p)
    eaves = Channel(legit.rows @ kernel.rows)
    return max(0.0, mutual_information(p, legit) - mutual_information(p, eaves))
