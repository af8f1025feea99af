from app.adversary.admissibility import AdmissibilityVerdict, check_admissibility
from app.adversary.events import (
    AdmissibilityScope,
    AdversarySpec,
    InjectionEvent,
    InjectionStrategy,
)
from app.adversary.scripts import (
    ScriptedScenario,
    script_sis_reactive_instability,
    script_tie_blocking,
)
from app.adversary.stochastic import (
    TokenBucket,
    TokenBucketAdversary,
    simple_path_pool,
    stochastic_injector,
)

__all__ = [
    "AdmissibilityVerdict",
    "check_admissibility",
    "AdmissibilityScope",
    "AdversarySpec",
    "InjectionEvent",
    "InjectionStrategy",
    "ScriptedScenario",
    "script_sis_reactive_instability",
    "script_tie_blocking",
    "TokenBucket",
    "TokenBucketAdversary",
    "simple_path_pool",
    "stochastic_injector",
]
