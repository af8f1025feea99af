from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from app.exceptions import ItineraryError, ScenarioValidationError
from app.models.network import NetworkGraph, validate_itinerary


class InjectionStrategy(str, Enum):
    STOCHASTIC = "stochastic"
    SCRIPTED = "scripted"


class AdmissibilityScope(str, Enum):
    NODE = "node"
    LINK = "link"


@dataclass(frozen=True)
class InjectionEvent:
    round: int
    itinerary: tuple[int, ...]

    @property
    def source(self) -> int:
        return self.itinerary[0]

    def validate(self, graph: NetworkGraph) -> None:
        if self.round < 0:
            raise ItineraryError(f"injection at negative round {self.round}")
        if len(self.itinerary) < 2:
            raise ItineraryError(f"itinerary {list(self.itinerary)} must traverse at least one link")
        if not validate_itinerary(graph, self.itinerary):
            raise ItineraryError(f"itinerary {list(self.itinerary)} is not a walk in the graph")


@dataclass(frozen=True)
class AdversarySpec:
    """Adversary type (b, r) plus how injections are produced.

    Stochastic adversaries draw itineraries from ``path_pool``; scripted ones replay ``script``.
    """

    rate: Fraction
    burstiness: int
    strategy: InjectionStrategy = InjectionStrategy.SCRIPTED
    seed: int = 0
    path_pool: tuple[tuple[int, ...], ...] = ()
    intensity: float = 1.0
    script: tuple[InjectionEvent, ...] = field(default_factory=tuple)
    scope: AdmissibilityScope = AdmissibilityScope.NODE

    def __post_init__(self):
        if not 0 <= self.rate <= 1:
            raise ScenarioValidationError(f"rate must lie in [0, 1], got {self.rate}")
        if self.burstiness < 1:
            raise ScenarioValidationError(f"burstiness must be at least 1, got {self.burstiness}")
        if not 0 < self.intensity <= 1:
            raise ScenarioValidationError(f"intensity must lie in (0, 1], got {self.intensity}")
        if self.strategy == InjectionStrategy.STOCHASTIC and not self.path_pool:
            raise ScenarioValidationError("stochastic adversary needs a non-empty path pool")

    @classmethod
    def silent(cls) -> "AdversarySpec":
        return cls(rate=Fraction(0), burstiness=1)
