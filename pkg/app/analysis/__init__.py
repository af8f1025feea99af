from app.analysis.bounds import (
    BoundParameters,
    PolicyBounds,
    bounds_for,
    lis_bounds,
    lis_transit_bound,
    sis_bounds,
    sis_k_sequence,
)
from app.analysis.equivalence import (
    EquivalenceMap,
    EquivalenceVerdict,
    compare_equivalent_traces,
    equivalent_network,
    transform_injections,
)
from app.analysis.stability import (
    BoundReport,
    Growth,
    InstabilityVerdict,
    bound_parameters_for,
    check_bounds,
    detect_instability,
)
from app.analysis.wireline import (
    InjectionFlow,
    WirelineInjection,
    WirelineTrace,
    expand_flows,
    run_wireline,
)

__all__ = [
    "BoundParameters",
    "PolicyBounds",
    "bounds_for",
    "lis_bounds",
    "lis_transit_bound",
    "sis_bounds",
    "sis_k_sequence",
    "EquivalenceMap",
    "EquivalenceVerdict",
    "compare_equivalent_traces",
    "equivalent_network",
    "transform_injections",
    "BoundReport",
    "Growth",
    "InstabilityVerdict",
    "bound_parameters_for",
    "check_bounds",
    "detect_instability",
    "InjectionFlow",
    "WirelineInjection",
    "WirelineTrace",
    "expand_flows",
    "run_wireline",
]
