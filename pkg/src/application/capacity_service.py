from dataclasses import replace
from typing import List, Optional, Sequence

from loguru import logger

from application.degradation_service import DegradationService
from domain.errors import DegradationRequiredError, InvalidArgumentError, RegimeError
from domain.models import Channel, CompoundWiretap, ComputationBudget, Distribution, Pairing
from domain.rates import (
    AuxiliaryChannel,
    MultiletterLadder,
    Optimizer,
    RateReport,
    Regime,
    SaturatingStructureReport,
    StateTerm,
)
from domain.secrecy_objectives import (
    AuxiliarySecrecyGapObjective,
    Point,
    SecrecyGapObjective,
    SimplexObjective,
    pad_point,
    tensor_point,
)
from domain.settings import OptimizerSettings
from domain.simplex_maximizer import MaximizationResult, OptimizationMethod
from infrastructure.optimization.grid_search_maximizer import MAX_GRID_INPUTS, GridSearchMaximizer
from infrastructure.optimization.projected_gradient_maximizer import ProjectedGradientMaximizer


def _distribution(point: Point) -> Distribution:
    return Distribution(point[0][0])


def _auxiliary(point: Point) -> AuxiliaryChannel:
    return AuxiliaryChannel(prior=Distribution(point[0][0]), prefix=Channel(point[1]))


def _check_aux_cardinality(aux_cardinality: Optional[int]) -> None:
    if aux_cardinality is not None and aux_cardinality < 1:
        raise InvalidArgumentError(f"aux_cardinality must be >= 1, got {aux_cardinality}")


def _state_terms(
    objective: SimplexObjective,
    point: Point,
    legit_indices: Sequence[int],
    eaves_indices: Sequence[int],
    argmax: Optimizer,
) -> List[StateTerm]:
    legit, eaves = objective.terms(point)
    if not eaves_indices:
        return [StateTerm(t, None, float(legit[i]), 0.0, argmax) for i, t in enumerate(legit_indices)]
    return [
        StateTerm(t, s, float(legit[i]), float(eaves[k]), argmax)
        for i, t in enumerate(legit_indices)
        for k, s in enumerate(eaves_indices)
    ]


def _report(
    regime: Regime,
    terms: Sequence[StateTerm],
    method: OptimizationMethod,
    is_lower_bound: bool = True,
    is_exact: bool = False,
) -> RateReport:
    binding = min(terms, key=lambda term: term.gap)
    raw_value = binding.gap
    return RateReport(
        regime=regime,
        value=max(raw_value, 0.0),
        raw_value=raw_value,
        argmax_input=binding.argmax,
        per_state_terms=tuple(terms),
        method=method,
        is_lower_bound=is_lower_bound,
        is_exact=is_exact,
    )


class SecrecyCapacityService:
    def __init__(
        self,
        grid_maximizer: GridSearchMaximizer,
        multistart_maximizer: ProjectedGradientMaximizer,
        degradation_service: DegradationService,
        settings: OptimizerSettings,
        budget: ComputationBudget,
    ) -> None:
        self.grid_maximizer = grid_maximizer
        self.multistart_maximizer = multistart_maximizer
        self.degradation_service = degradation_service
        self.settings = settings
        self.budget = budget

    def _maximize_input(self, objective: SecrecyGapObjective) -> MaximizationResult:
        if objective.input_size <= MAX_GRID_INPUTS:
            return self.grid_maximizer.maximize(objective)
        return self.multistart_maximizer.maximize(objective)

    def _auxiliary_maximizer(self, restarts: Optional[int]) -> ProjectedGradientMaximizer:
        if restarts is None or restarts == self.settings.restarts:
            return self.multistart_maximizer
        settings = replace(self.settings, restarts=restarts)
        return ProjectedGradientMaximizer(settings, self.multistart_maximizer.random_source)

    def _certified_degraded(self, compound: CompoundWiretap) -> bool:
        return self.degradation_service.first_violation(compound.legit, compound.eaves) is None

    def csi_rate_no_prefix(self, compound: CompoundWiretap) -> RateReport:
        """min over active pairs (t, s) of max_p I(p, W_t) - I(p, V_s), each pair with its own input."""
        logger.info(f"CSI rate without prefix over {len(compound.states())} state(s)")
        terms: List[StateTerm] = []
        method = OptimizationMethod.GRID_SEARCH
        for t, s in compound.states():
            objective = SecrecyGapObjective((compound.legit[t],), (compound.eaves[s],))
            result = self._maximize_input(objective)
            method = result.method
            terms += _state_terms(objective, result.point, (t,), (s,), _distribution(result.point))
            logger.debug(f"state ({t}, {s}): gap {terms[-1].gap:.9f}")
        return _report(Regime.CSI, terms, method)

    def csi_rate_with_prefix(
        self, compound: CompoundWiretap, aux_cardinality: Optional[int] = None, restarts: Optional[int] = None
    ) -> RateReport:
        """Per-state auxiliary optimization (U -> X -> (Y_t, Z_s)); always a lower bound on the per-state optimum."""
        _check_aux_cardinality(aux_cardinality)
        cardinality = aux_cardinality
        if cardinality is None:
            cardinality = self.settings.resolved_aux_cardinality(compound.input_size)
        maximizer = self._auxiliary_maximizer(restarts)
        logger.info(f"CSI rate with prefix, |U| = {cardinality}, {maximizer.settings.restarts} restart(s)")

        terms: List[StateTerm] = []
        for t, s in compound.states():
            legit, eaves = (compound.legit[t],), (compound.eaves[s],)
            base = self._maximize_input(SecrecyGapObjective(legit, eaves))
            objective = AuxiliarySecrecyGapObjective(legit, eaves, cardinality)
            seeds = [objective.identity_point(base.point[0][0])] if cardinality >= compound.input_size else []
            result = maximizer.maximize(objective, seeds)
            terms += _state_terms(objective, result.point, (t,), (s,), _auxiliary(result.point))
        return _report(Regime.CSI_PREFIX, terms, OptimizationMethod.MULTI_START)

    def no_csi_lower(self, compound: CompoundWiretap) -> RateReport:
        """max_p min_t I(p, W_t) - max_s I(p, V_s) with one shared input; the raw value keeps its sign."""
        logger.info("No-CSI lower bound")
        objective = SecrecyGapObjective(compound.legit, compound.eaves)
        result = self._maximize_input(objective)
        terms = _state_terms(
            objective,
            result.point,
            range(len(compound.legit)),
            range(len(compound.eaves)),
            _distribution(result.point),
        )
        return _report(Regime.NO_CSI, terms, result.method)

    def csi_t_lower(self, compound: CompoundWiretap) -> RateReport:
        """min_t max_p I(p, W_t) - max_s I(p, V_s); exact when every V_s is degraded w.r.t. every W_t."""
        if compound.pairing is not Pairing.PRODUCT:
            raise RegimeError("the CSI_t regime needs a product-pairing compound (eavesdropper state independent of t)")
        logger.info("CSI_t lower bound")
        eaves_indices = range(len(compound.eaves))
        terms: List[StateTerm] = []
        method = OptimizationMethod.GRID_SEARCH
        for t, legit in enumerate(compound.legit):
            objective = SecrecyGapObjective((legit,), compound.eaves)
            result = self._maximize_input(objective)
            method = result.method
            terms += _state_terms(objective, result.point, (t,), eaves_indices, _distribution(result.point))

        exact = self._certified_degraded(compound)
        return _report(Regime.CSI_T, terms, method, is_lower_bound=not exact, is_exact=exact)

    def degraded_capacity(self, compound: CompoundWiretap) -> RateReport:
        violation = self.degradation_service.first_violation(compound.legit, compound.eaves)
        if violation is not None:
            raise DegradationRequiredError(violation)
        logger.info("Every eavesdropper channel is degraded; evaluating the exact capacity")
        report = self.no_csi_lower(compound)
        return _report(Regime.DEGRADED, report.per_state_terms, report.method, is_lower_bound=False, is_exact=True)

    def compound_capacity(self, compound: CompoundWiretap) -> RateReport:
        """min_t max_p I(p, W_t), the ceiling of every secrecy rate of the compound."""
        terms: List[StateTerm] = []
        method = OptimizationMethod.GRID_SEARCH
        for t, legit in enumerate(compound.legit):
            objective = SecrecyGapObjective((legit,), ())
            result = self._maximize_input(objective)
            method = result.method
            terms += _state_terms(objective, result.point, (t,), (), _distribution(result.point))
        return _report(Regime.COMPOUND, terms, method, is_lower_bound=False)

    def wiretap_capacity(self, legit: Channel, eaves: Channel) -> RateReport:
        return self.csi_rate_no_prefix(CompoundWiretap.single(legit, eaves))

    def superadditivity_ladder(
        self,
        compound: CompoundWiretap,
        max_n: int,
        aux_cardinality: Optional[int] = None,
        restarts: Optional[int] = None,
    ) -> MultiletterLadder:
        """
        a_n for n = 1..max_n. Each level is seeded with the tensor products of the best
        (a_m, a_{n-m}) points, so a_{n+m} >= a_n + a_m holds for the computed values.
        """
        if max_n < 1:
            raise InvalidArgumentError(f"max_n must be >= 1, got {max_n}")
        _check_aux_cardinality(aux_cardinality)
        maximizer = self._auxiliary_maximizer(restarts)
        values: List[float] = []
        points: List[Point] = []
        cardinalities: List[int] = []

        for n in range(1, max_n + 1):
            extended = compound.extension(n, self.budget)
            seeds = [tensor_point(points[m - 1], points[n - m - 1]) for m in range(1, n // 2 + 1)]
            floor = compound.input_size**n + 1 if aux_cardinality is None else aux_cardinality
            cardinality = max([floor] + [seed[0].shape[1] for seed in seeds])
            objective = AuxiliarySecrecyGapObjective(extended.legit, extended.eaves, cardinality)
            logger.info(f"Multi-letter level n={n}: |U| = {cardinality}, {len(seeds)} product seed(s)")

            result = maximizer.maximize(objective, [pad_point(seed, cardinality) for seed in seeds])
            values.append(result.value)
            points.append(result.point)
            cardinalities.append(cardinality)
            logger.debug(f"a_{n} = {result.value:.9f}")

        return MultiletterLadder(
            values=tuple(values),
            aux_cardinalities=tuple(cardinalities),
            optimizers=tuple(_auxiliary(p) for p in points),
        )

    def multiletter_rate(
        self,
        compound: CompoundWiretap,
        n: int,
        aux_cardinality: Optional[int] = None,
        restarts: Optional[int] = None,
    ) -> float:
        """a_n / n, a lower bound on the no-CSI secrecy capacity."""
        return self.superadditivity_ladder(compound, n, aux_cardinality, restarts).rates[n - 1]

    def check_saturating_structure(self, compound: CompoundWiretap) -> SaturatingStructureReport:
        if compound.pairing is not Pairing.PRODUCT:
            raise RegimeError("the saturating-structure conditions are stated for product-pairing compounds")
        find = self.degradation_service.find

        legit_index = next(
            (t for t, w in enumerate(compound.legit) if all(find(other, w) for other in compound.legit)), None
        )
        eaves_index = next(
            (s for s, v in enumerate(compound.eaves) if all(find(v, other) for other in compound.eaves)), None
        )
        if legit_index is None or eaves_index is None:
            logger.info(f"No saturating structure (legit index {legit_index}, eaves index {eaves_index})")
            return SaturatingStructureReport(legit_index, eaves_index)

        common = self.wiretap_capacity(compound.legit[legit_index], compound.eaves[eaves_index])
        return SaturatingStructureReport(
            legit_index=legit_index,
            eaves_index=eaves_index,
            common_value=common.value,
            csi_value=self.csi_rate_no_prefix(compound).value,
            no_csi_value=self.no_csi_lower(compound).value,
        )

    @staticmethod
    def create(
        settings: OptimizerSettings = OptimizerSettings(),
        budget: ComputationBudget = ComputationBudget(),
    ) -> "SecrecyCapacityService":
        return SecrecyCapacityService(
            grid_maximizer=GridSearchMaximizer.create(settings),
            multistart_maximizer=ProjectedGradientMaximizer.create(settings),
            degradation_service=DegradationService.create(),
            settings=settings,
            budget=budget,
        )
