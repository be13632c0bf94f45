from dataclasses import dataclass, field, replace
from typing import Any, Callable, List, Optional

from loguru import logger

from application.adversary_service import AdversaryService
from application.capacity_service import SecrecyCapacityService
from application.coding_lab_service import CodingLabService, InputStrategy, SimulationParameters
from application.golden_scenarios import Example1Parameters, Example2Parameters, GoldenScenarios
from domain.coding import CodingRegime
from domain.errors import InvalidArgumentError, PreconditionError, ResourceBudgetError
from domain.models import CompoundWiretap, ComputationBudget
from domain.rates import Regime
from domain.settings import OptimizerSettings
from infrastructure.persistence.channel_file_reader import ChannelFileReader
from infrastructure.persistence.codebook_repository import CodebookRepository
from infrastructure.persistence.configuration_models import ScenarioConfig
from infrastructure.persistence.report_repository import ReportRepository
from utils.validators.validation_error import ValidationError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


@dataclass(slots=True)
class ScenarioOutcome:
    result: dict[str, Any]
    show: Callable[[], None]
    passed: bool = True
    artifacts: List[str] = field(default_factory=list)


class ScenarioService:
    """Dispatches one configured run to the capacity, coding, adversary or worked-example services."""

    def __init__(
        self,
        config: ScenarioConfig,
        capacity_service: SecrecyCapacityService,
        coding_lab: CodingLabService,
        adversary: AdversaryService,
        scenarios: GoldenScenarios,
        reports: ReportRepository,
        budget: ComputationBudget,
    ) -> None:
        self.config = config
        self.capacity_service = capacity_service
        self.coding_lab = coding_lab
        self.adversary = adversary
        self.scenarios = scenarios
        self.reports = reports
        self.budget = budget

    def _compound(self) -> CompoundWiretap:
        channel_file = ChannelFileReader(self.config.channels_path).read()
        logger.info(f"Read {len(channel_file.compound.states())} active state(s) from {self.config.channels_path}")
        return channel_file.compound

    def capacity(self) -> ScenarioOutcome:
        compound = self._compound()
        regime = Regime.from_str(self.config.regime)
        service = self.capacity_service
        if regime is Regime.MULTILETTER:
            ladder = service.superadditivity_ladder(compound, max(self.config.n or (1,)), self.config.aux_cardinality)
            return ScenarioOutcome(ladder.to_dict(), ladder.show)

        dispatch = {
            Regime.CSI: service.csi_rate_no_prefix,
            Regime.CSI_PREFIX: lambda c: service.csi_rate_with_prefix(c, self.config.aux_cardinality),
            Regime.CSI_T: service.csi_t_lower,
            Regime.NO_CSI: service.no_csi_lower,
            Regime.DEGRADED: service.degraded_capacity,
            Regime.COMPOUND: service.compound_capacity,
        }
        report = dispatch[regime](compound)
        return ScenarioOutcome(report.to_dict(), report.show)

    def simulate(self) -> ScenarioOutcome:
        compound = self._compound()
        config = self.config
        base = SimulationParameters(
            regime=CodingRegime.from_str(config.regime),
            n=config.n[0],
            delta=config.delta,
            tau=config.tau,
            seed=config.seed,
            override_messages=config.override_messages,
            override_randomisation=config.override_randomisation,
            eta=config.eta,
            inputs=InputStrategy(config.inputs),
        )
        results = [self.coding_lab.simulate(compound, replace(base, n=n)) for n in config.n]

        def show() -> None:
            for result in results:
                result.report.show()

        outcome = ScenarioOutcome({"runs": [r.report.to_dict() for r in results]}, show)
        if config.csv_path is not None:
            self.reports.save_csv(config.csv_path, [r.report.sweep_row() for r in results])
            outcome.artifacts.append(str(config.csv_path))
        if config.codebook_out_path is not None:
            CodebookRepository.save(config.codebook_out_path, results[-1].codebook)
            outcome.artifacts.append(str(config.codebook_out_path))
        return outcome

    def attack(self) -> ScenarioOutcome:
        compound = self._compound()
        codebook = CodebookRepository.load(self.config.codebook_path)
        report = self.adversary.evaluate(codebook, compound, self.config.state)
        return ScenarioOutcome(report.to_dict(), report.show, passed=report.all_bounds_hold)

    def example1(self) -> ScenarioOutcome:
        report = self.scenarios.run_example1(Example1Parameters(**self.config.overrides))
        return ScenarioOutcome(report.to_dict(), report.show, passed=report.passed)

    def example2(self) -> ScenarioOutcome:
        overrides = dict(self.config.overrides)
        if "lengths" in overrides:
            overrides["lengths"] = tuple(overrides["lengths"])
        report = self.scenarios.run_example2(Example2Parameters(**overrides))
        return ScenarioOutcome(report.to_dict(), report.show, passed=report.passed)

    def run(self) -> ScenarioOutcome:
        handlers = {
            "capacity": self.capacity,
            "simulate": self.simulate,
            "attack": self.attack,
            "example1": self.example1,
            "example2": self.example2,
        }
        outcome = handlers[self.config.command]()
        if self.config.out_path is not None:
            self.reports.save_report(self.config.out_path, outcome.result, self.config)
            outcome.artifacts.insert(0, str(self.config.out_path))
        return outcome

    @staticmethod
    def create(config: ScenarioConfig, reports: Optional[ReportRepository] = None) -> "ScenarioService":
        budget = ComputationBudget(max_outcomes=config.max_outcomes, max_bytes=config.max_bytes)
        settings = OptimizerSettings(
            grid=config.grid, restarts=config.restarts, seed=config.seed, aux_cardinality=config.aux_cardinality
        )
        capacity_service = SecrecyCapacityService.create(settings, budget)
        return ScenarioService(
            config=config,
            capacity_service=capacity_service,
            coding_lab=CodingLabService.create(capacity_service, budget=budget),
            adversary=AdversaryService.create(config.seed, config.partitions, budget),
            scenarios=GoldenScenarios.create(capacity_service, budget),
            reports=reports or ReportRepository(),
            budget=budget,
        )


def exit_code(error: BaseException) -> int:
    if isinstance(error, ResourceBudgetError):
        return EXIT_RESOURCE
    if isinstance(error, (PreconditionError, InvalidArgumentError, ValidationError, OSError)):
        return EXIT_USAGE
    return EXIT_FAILURE


def run_scenario(config: ScenarioConfig, show: bool = True) -> int:
    """Runs the scenario and writes its artifacts; 0 on success, 2 on bad input, 3 on budget refusals."""
    try:
        outcome = ScenarioService.create(config).run()
    except Exception as error:
        code = exit_code(error)
        if code == EXIT_FAILURE:
            logger.exception(f"{config.command} failed unexpectedly")
        else:
            logger.error(str(error))
        return code

    if show:
        outcome.show()
    for artifact in outcome.artifacts:
        logger.success(f"Wrote {artifact}")
    if not outcome.passed:
        logger.error(f"{config.command}: at least one check failed")
        return EXIT_FAILURE
    return EXIT_OK
