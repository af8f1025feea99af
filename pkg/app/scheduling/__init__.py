from app.scheduling.policies import (
    PRIORITY_KEYS,
    PolicyId,
    Scheduler,
    priority_key,
    select,
    top_candidates,
)
from app.scheduling.ties import ArbitraryStrategy, OrderRule, TieBreaker, TieBreakMode, TieKind

__all__ = [
    "PRIORITY_KEYS",
    "PolicyId",
    "Scheduler",
    "priority_key",
    "select",
    "top_candidates",
    "ArbitraryStrategy",
    "OrderRule",
    "TieBreaker",
    "TieBreakMode",
    "TieKind",
]
