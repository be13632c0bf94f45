"""
Secrecy-gap objectives over products of probability simplices.

A point is a tuple of blocks; every row of every block is a probability vector.
`SecrecyGapObjective` works on a single input distribution, `AuxiliarySecrecyGapObjective`
on an auxiliary prior together with a prefix channel U -> A.
"""

from abc import ABC, abstractmethod
from typing import Sequence, Tuple

import numpy as np

from domain.errors import DimensionMismatchError, InvalidArgumentError
from domain.information import LN2, mutual_information_batch
from domain.models import Channel

Point = Tuple[np.ndarray, ...]
LOG_FLOOR = 1e-300


def _log2_ratio(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    return np.log2(np.maximum(numerator, LOG_FLOOR)) - np.log2(np.maximum(denominator, LOG_FLOOR))


def _information_terms(prior: np.ndarray, rows: np.ndarray) -> float:
    return float(mutual_information_batch(prior[None, :], rows)[0])


def _information_gradient(prior: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """d I(prior, rows) / d prior = D(rows_u || prior @ rows) - log2(e)."""
    output = prior @ rows
    return (rows * _log2_ratio(rows, output[None, :])).sum(axis=1) - 1.0 / LN2


class SimplexObjective(ABC):
    @property
    @abstractmethod
    def block_shapes(self) -> Tuple[Tuple[int, int], ...]:
        """(rows, simplex dimension) of every block of a point."""

    @abstractmethod
    def value(self, point: Point) -> float:
        pass

    @abstractmethod
    def gradient(self, point: Point) -> Point:
        """Gradient of the active terms; a supergradient where min/max switch."""

    @abstractmethod
    def terms(self, point: Point) -> Tuple[np.ndarray, np.ndarray]:
        """(per-legit informations, per-eaves informations) at `point`."""

    def uniform_point(self) -> Point:
        return tuple(np.full(shape, 1.0 / shape[1]) for shape in self.block_shapes)


def _check_families(legit: Sequence[Channel], eaves: Sequence[Channel]) -> int:
    if not legit:
        raise InvalidArgumentError("an objective needs at least one legit channel")
    size = legit[0].input_size
    for ch in (*legit, *eaves):
        if ch.input_size != size:
            raise DimensionMismatchError(f"channel with {ch.input_size} inputs, expected {size}", size, ch.input_size)
    return size


class SecrecyGapObjective(SimplexObjective):
    """p -> min_t I(p, W_t) - max_s I(p, V_s); an empty eaves family contributes 0."""

    def __init__(self, legit: Sequence[Channel], eaves: Sequence[Channel]) -> None:
        self.input_size = _check_families(legit, eaves)
        self.legit = tuple(legit)
        self.eaves = tuple(eaves)

    @property
    def block_shapes(self) -> Tuple[Tuple[int, int], ...]:
        return ((1, self.input_size),)

    def values(self, inputs: np.ndarray) -> np.ndarray:
        """Objective for every row of a K x A matrix of input distributions."""
        legit = np.min([mutual_information_batch(inputs, ch.rows) for ch in self.legit], axis=0)
        if not self.eaves:
            return legit
        eaves = np.max([mutual_information_batch(inputs, ch.rows) for ch in self.eaves], axis=0)
        return legit - eaves

    def terms(self, point: Point) -> Tuple[np.ndarray, np.ndarray]:
        p = point[0][0]
        legit = np.array([_information_terms(p, ch.rows) for ch in self.legit])
        eaves = np.array([_information_terms(p, ch.rows) for ch in self.eaves])
        return legit, eaves

    def value(self, point: Point) -> float:
        legit, eaves = self.terms(point)
        return float(legit.min() - (eaves.max() if eaves.size else 0.0))

    def gradient(self, point: Point) -> Point:
        p = point[0][0]
        legit, eaves = self.terms(point)
        grad = _information_gradient(p, self.legit[int(np.argmin(legit))].rows)
        if eaves.size:
            grad = grad - _information_gradient(p, self.eaves[int(np.argmax(eaves))].rows)
        return (grad[None, :],)


class AuxiliarySecrecyGapObjective(SimplexObjective):
    """
    (prior, prefix) -> min_t I(U; Y_t) - max_s I(U; Z_s) where U ~ prior and X is drawn
    from the prefix row of U. Point blocks: prior of shape (1, |U|), prefix of shape (|U|, |A|).
    """

    def __init__(self, legit: Sequence[Channel], eaves: Sequence[Channel], aux_cardinality: int) -> None:
        self.input_size = _check_families(legit, eaves)
        if aux_cardinality < 1:
            raise InvalidArgumentError(f"auxiliary cardinality must be >= 1, got {aux_cardinality}")
        self.aux_cardinality = aux_cardinality
        self.legit = tuple(legit)
        self.eaves = tuple(eaves)

    @property
    def block_shapes(self) -> Tuple[Tuple[int, int], ...]:
        return (1, self.aux_cardinality), (self.aux_cardinality, self.input_size)

    def terms(self, point: Point) -> Tuple[np.ndarray, np.ndarray]:
        prior, prefix = point[0][0], point[1]
        legit = np.array([_information_terms(prior, prefix @ ch.rows) for ch in self.legit])
        eaves = np.array([_information_terms(prior, prefix @ ch.rows) for ch in self.eaves])
        return legit, eaves

    def value(self, point: Point) -> float:
        legit, eaves = self.terms(point)
        return float(legit.min() - (eaves.max() if eaves.size else 0.0))

    @staticmethod
    def _block_gradient(prior: np.ndarray, prefix: np.ndarray, rows: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        composed = prefix @ rows
        output = prior @ composed
        log_ratio = _log2_ratio(composed, output[None, :])
        d_prior = (composed * log_ratio).sum(axis=1) - 1.0 / LN2
        # dI/dprefix[u, a] = prior[u] * sum_b rows[a, b] * log2(composed[u, b] / output[b])
        d_prefix = prior[:, None] * (log_ratio @ rows.T)
        return d_prior, d_prefix

    def gradient(self, point: Point) -> Point:
        prior, prefix = point[0][0], point[1]
        legit, eaves = self.terms(point)
        d_prior, d_prefix = self._block_gradient(prior, prefix, self.legit[int(np.argmin(legit))].rows)
        if eaves.size:
            e_prior, e_prefix = self._block_gradient(prior, prefix, self.eaves[int(np.argmax(eaves))].rows)
            d_prior, d_prefix = d_prior - e_prior, d_prefix - e_prefix
        return d_prior[None, :], d_prefix

    def identity_point(self, prior: np.ndarray) -> Point:
        """The prefix U = X (padded with unused auxiliary letters) under the given input distribution."""
        if self.aux_cardinality < self.input_size:
            raise InvalidArgumentError(
                f"identity prefix needs |U| >= |A| = {self.input_size}, got {self.aux_cardinality}"
            )
        padded = np.zeros(self.aux_cardinality)
        padded[: self.input_size] = prior
        prefix = np.full((self.aux_cardinality, self.input_size), 1.0 / self.input_size)
        prefix[: self.input_size] = np.eye(self.input_size)
        return padded[None, :], prefix


def tensor_point(first: Point, second: Point) -> Point:
    """Auxiliary point for a block of length n + m built from independent length-n and length-m points."""
    return np.kron(first[0], second[0]), np.kron(first[1], second[1])


def pad_point(point: Point, aux_cardinality: int) -> Point:
    """Embed an auxiliary point in a larger auxiliary alphabet by adding zero-probability letters."""
    prior, prefix = point[0][0], point[1]
    extra = aux_cardinality - prior.shape[0]
    if extra < 0:
        raise InvalidArgumentError(f"cannot pad a point with |U| = {prior.shape[0]} down to {aux_cardinality}")
    padded_prior = np.concatenate([prior, np.zeros(extra)])
    filler = np.full((extra, prefix.shape[1]), 1.0 / prefix.shape[1])
    return padded_prior[None, :], np.vstack([prefix, filler])
