import numpy as np
import pytest

from domain.channel_algebra import (
    binary_convolution,
    bsc,
    compose,
    convex_combine,
    extension_row,
    identity_channel,
    output_distribution,
    permute_outputs,
    product_extension,
    renormalize,
)
from domain.errors import (
    DimensionMismatchError,
    InvalidArgumentError,
    InvalidDistributionError,
    ResourceBudgetError,
)
from domain.models import Channel, CompoundWiretap, ComputationBudget, Distribution, Pairing

GRID = np.linspace(0.0, 1.0, 51)


def random_channel(rng: np.random.Generator, inputs: int, outputs: int) -> Channel:
    return Channel(rng.dirichlet(np.ones(outputs), size=inputs))


def test_bsc_rows():
    assert bsc(0.3).rows == pytest.approx(np.array([[0.7, 0.3], [0.3, 0.7]]))
    assert bsc(0.0).allclose(identity_channel(2))


@pytest.mark.parametrize("eta", [-0.1, 1.5])
def test_bsc_rejects_crossover_outside_unit_interval(eta):
    with pytest.raises(InvalidArgumentError):
        bsc(eta)


@pytest.mark.parametrize("a", GRID)
def test_cascaded_bsc_is_bsc_of_binary_convolution(a):
    for b in GRID:
        expected = bsc(binary_convolution(a, b)).rows
        assert np.max(np.abs(compose(bsc(a), bsc(b)).rows - expected)) <= 1e-12


def test_binary_convolution_stays_between_operands_and_one_half():
    for a in np.linspace(0.01, 0.49, 25):
        for b in np.linspace(0.01, 0.49, 25):
            c = binary_convolution(a, b)
            assert max(a, b) < c < 0.5


def test_mixture_of_noiseless_and_bsc():
    for t in np.linspace(0.0, 1.0, 11):
        mixed = convex_combine([bsc(0.0), bsc(0.2)], (1.0 - t, t))
        assert mixed.allclose(bsc(t * 0.2), atol=1e-12)


def test_convex_combine_rejects_mismatched_weights():
    with pytest.raises(DimensionMismatchError):
        convex_combine([bsc(0.1), bsc(0.2)], (1.0,))
    with pytest.raises(InvalidArgumentError):
        convex_combine([], ())


def test_compose_is_associative():
    rng = np.random.default_rng(7)
    for _ in range(20):
        w = random_channel(rng, 3, 4)
        d1 = random_channel(rng, 4, 2)
        d2 = random_channel(rng, 2, 5)
        left = compose(compose(w, d1), d2)
        right = compose(w, compose(d1, d2))
        assert left.allclose(right, atol=1e-12)


def test_compose_rejects_incompatible_alphabets():
    with pytest.raises(DimensionMismatchError):
        compose(bsc(0.1), identity_channel(3))


def test_product_extension_is_lexicographic():
    ext = product_extension(bsc(0.1), 2)
    assert ext.rows.shape == (4, 4)
    assert ext.rows[0, 1] == pytest.approx(0.09)
    assert ext.rows[0, 3] == pytest.approx(0.01)
    assert ext.rows[1, 1] == pytest.approx(0.81)
    assert np.allclose(ext.rows.sum(axis=1), 1.0)
    assert np.allclose(extension_row(bsc(0.1), np.array([0, 1])), ext.rows[1])


def test_product_extension_of_length_one_is_the_channel():
    assert product_extension(bsc(0.25), 1).allclose(bsc(0.25), atol=0.0)


def test_product_extension_respects_budget():
    with pytest.raises(ResourceBudgetError):
        product_extension(bsc(0.1), 2, ComputationBudget(max_outcomes=8))
    with pytest.raises(InvalidArgumentError):
        product_extension(bsc(0.1), 0)


def test_output_distribution():
    q = output_distribution((0.3, 0.7), bsc(0.1))
    assert q.probs == pytest.approx([0.34, 0.66])
    with pytest.raises(DimensionMismatchError):
        output_distribution((0.2, 0.3, 0.5), bsc(0.1))


def test_renormalize_and_permutation():
    assert renormalize([1.0, 3.0]).probs == pytest.approx([0.25, 0.75])
    with pytest.raises(InvalidDistributionError):
        renormalize([0.0, 0.0])
    assert permute_outputs(bsc(0.2), [1, 0]).allclose(bsc(0.8))
    with pytest.raises(InvalidArgumentError):
        permute_outputs(bsc(0.2), [0, 0])


@pytest.mark.parametrize("probs", [[0.5, 0.6], [-0.1, 1.1], [np.nan, 1.0]])
def test_distribution_rejects_invalid_vectors(probs):
    with pytest.raises(InvalidDistributionError):
        Distribution(np.array(probs))


def test_channel_rejects_non_stochastic_rows():
    with pytest.raises(InvalidDistributionError):
        Channel(np.array([[0.5, 0.4], [0.5, 0.5]]))


def test_compound_states_follow_pairing():
    matched = CompoundWiretap((bsc(0.1), bsc(0.2)), (bsc(0.3), bsc(0.4)))
    assert matched.states() == ((0, 0), (1, 1))
    product = CompoundWiretap((bsc(0.1), bsc(0.2)), (bsc(0.3),), Pairing.PRODUCT)
    assert product.states() == ((0, 0), (1, 0))
    with pytest.raises(DimensionMismatchError):
        CompoundWiretap((bsc(0.1), bsc(0.2)), (bsc(0.3),), Pairing.MATCHED)


def test_compound_extension_keeps_pairing():
    compound = CompoundWiretap((bsc(0.1),), (bsc(0.3), bsc(0.4)), Pairing.PRODUCT)
    extended = compound.extension(2)
    assert extended.pairing is Pairing.PRODUCT
    assert extended.legit[0].rows.shape == (4, 4)
    assert len(extended.eaves) == 2
