import numpy as np
import pytest

from application.capacity_service import SecrecyCapacityService
from domain.channel_algebra import bsc
from domain.errors import DegradationRequiredError, InvalidArgumentError, RegimeError
from domain.information import binary_entropy
from domain.models import CompoundWiretap, Pairing
from domain.rates import Regime
from domain.settings import OptimizerSettings
from tests.helpers import bsc_pair, product_compound, two_state_compound


@pytest.fixture(scope="module")
def service():
    return SecrecyCapacityService.create(OptimizerSettings(restarts=4))


def test_single_pair_rate_is_the_entropy_difference(service):
    report = service.csi_rate_no_prefix(bsc_pair())
    assert report.regime is Regime.CSI
    assert report.value == pytest.approx(binary_entropy(0.35) - binary_entropy(0.03), abs=1e-9)
    assert report.argmax_input.probs == pytest.approx([0.5, 0.5], abs=1e-4)


def test_useless_eavesdropper_leaves_the_full_capacity(service):
    report = service.wiretap_capacity(bsc(0.1), bsc(0.5))
    assert report.value == pytest.approx(1.0 - binary_entropy(0.1), abs=1e-9)


def test_identical_channels_have_no_secrecy(service):
    report = service.csi_rate_no_prefix(bsc_pair(0.2, 0.2))
    assert report.value == pytest.approx(0.0, abs=1e-12)


def test_stronger_eavesdropper_clamps_to_zero(service):
    report = service.no_csi_lower(bsc_pair(0.3, 0.1))
    assert report.value == 0.0
    assert report.raw_value <= 1e-12


def test_degraded_capacity_needs_every_pair_degraded(service):
    with pytest.raises(DegradationRequiredError) as excinfo:
        service.degraded_capacity(bsc_pair(0.3, 0.1))
    assert excinfo.value.pair == (0, 0)


def test_degraded_capacity_equals_the_no_csi_formula(service):
    compound = product_compound()
    exact = service.degraded_capacity(compound)
    assert exact.is_exact and not exact.is_lower_bound
    assert exact.value == pytest.approx(service.no_csi_lower(compound).value, abs=1e-12)
    assert exact.value == pytest.approx(binary_entropy(0.3) - binary_entropy(0.1), abs=1e-9)
    assert (exact.binding_term.legit_index, exact.binding_term.eaves_index) == (1, 0)


def test_rate_ordering_across_regimes(service):
    compound = CompoundWiretap((bsc(0.05), bsc(0.15)), (bsc(0.3), bsc(0.2)), Pairing.PRODUCT)
    csi = service.csi_rate_no_prefix(compound).value
    csi_t = service.csi_t_lower(compound).value
    no_csi = service.no_csi_lower(compound).value
    ceiling = service.compound_capacity(compound).value
    assert no_csi <= csi_t + 1e-7
    assert csi_t <= csi + 1e-7
    assert csi <= ceiling + 1e-7


@pytest.mark.parametrize("seed", range(10))
def test_degraded_families_collapse_every_formula(service, seed):
    rng = np.random.default_rng(200 + seed)
    legit = rng.uniform(0.01, 0.15, size=int(rng.integers(1, 4)))
    eaves = rng.uniform(0.2, 0.45, size=int(rng.integers(1, 4)))
    compound = CompoundWiretap(
        tuple(bsc(float(a)) for a in legit), tuple(bsc(float(b)) for b in eaves), Pairing.PRODUCT
    )
    exact = service.degraded_capacity(compound)
    assert exact.value == pytest.approx(service.no_csi_lower(compound).raw_value, abs=1e-6)
    csi_t = service.csi_t_lower(compound)
    assert csi_t.is_exact
    assert csi_t.value == pytest.approx(exact.value, abs=1e-6)
    closed_form = binary_entropy(float(eaves.min())) - binary_entropy(float(legit.max()))
    assert exact.value == pytest.approx(closed_form, abs=1e-7)


def test_csi_t_is_exact_for_degraded_families(service):
    assert service.csi_t_lower(product_compound()).is_exact
    with pytest.raises(RegimeError):
        service.csi_t_lower(bsc_pair())


def test_compound_capacity_is_the_worst_legit_capacity(service):
    report = service.compound_capacity(product_compound())
    assert report.value == pytest.approx(1.0 - binary_entropy(0.1), abs=1e-9)
    assert not report.is_lower_bound


def test_prefix_never_lowers_the_csi_rate(service):
    compound = bsc_pair()
    plain = service.csi_rate_no_prefix(compound).value
    prefixed = service.csi_rate_with_prefix(compound, aux_cardinality=3, restarts=2)
    assert prefixed.regime is Regime.CSI_PREFIX
    assert prefixed.value >= plain - 1e-9
    with pytest.raises(InvalidArgumentError):
        service.superadditivity_ladder(compound, 0)


def test_saturating_structure_of_degraded_product(service):
    report = service.check_saturating_structure(product_compound())
    assert (report.legit_index, report.eaves_index) == (1, 0)
    assert report.consistent()
    with pytest.raises(RegimeError):
        service.check_saturating_structure(bsc_pair())


LADDER_COMPOUNDS = [
    product_compound(),
    bsc_pair(),
    two_state_compound(),
    CompoundWiretap((bsc(0.05), bsc(0.15)), (bsc(0.3), bsc(0.2)), Pairing.PRODUCT),
    CompoundWiretap((bsc(0.1),), (bsc(0.25), bsc(0.4)), Pairing.PRODUCT),
]


@pytest.mark.slow
@pytest.mark.parametrize("compound", LADDER_COMPOUNDS)
def test_multiletter_ladder_is_superadditive_and_below_capacity(service, compound):
    ladder = service.superadditivity_ladder(compound, 3, restarts=2)
    assert ladder.aux_cardinalities[0] == 3
    assert ladder.superadditivity_violations(2e-4) == ()
    assert ladder.value(3) >= ladder.value(1) + ladder.value(2) - 2e-4
    capacity = service.compound_capacity(compound).value
    assert all(rate <= capacity + 1e-6 for rate in ladder.rates)


def test_empty_auxiliary_alphabet_is_refused(service):
    for cardinality in (0, -1):
        with pytest.raises(InvalidArgumentError):
            service.csi_rate_with_prefix(bsc_pair(), aux_cardinality=cardinality, restarts=1)
        with pytest.raises(InvalidArgumentError):
            service.superadditivity_ladder(bsc_pair(), 1, aux_cardinality=cardinality, restarts=1)
        with pytest.raises(InvalidArgumentError):
            OptimizerSettings(aux_cardinality=cardinality)


def test_single_letter_rate_stays_below_the_degraded_capacity(service):
    rate = service.multiletter_rate(bsc_pair(), 1, aux_cardinality=2, restarts=2)
    assert -1e-12 <= rate <= binary_entropy(0.35) - binary_entropy(0.03) + 1e-9
