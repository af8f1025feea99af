from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Sequence

import numpy as np

from app.adversary.events import AdmissibilityScope, InjectionEvent
from app.config import settings
from app.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class AdmissibilityVerdict:
    ok: bool
    rate: Fraction
    burstiness: int
    scope: AdmissibilityScope
    interval: tuple[int, int] | None = None
    key: Hashable | None = None
    count: int = 0
    allowance: Fraction | None = None
    approximate: bool = False


def _keys(event: InjectionEvent, scope: AdmissibilityScope) -> set:
    if scope == AdmissibilityScope.LINK:
        return set(zip(event.itinerary, event.itinerary[1:]))
    return set(event.itinerary)


def check_admissibility(
    events: Sequence[InjectionEvent],
    r: Fraction,
    b: int,
    horizon: int,
    scope: AdmissibilityScope = AdmissibilityScope.NODE,
    exhaustive: bool | None = None,
) -> AdmissibilityVerdict:
    """Check I(tau, key) <= r*|tau| + b over every interval of [0, horizon].

    Only intervals that start and end on injection rounds of the key can be tight, so
    those are the ones scanned; |[a, z]| = z - a + 1. The first violation in
    (start, end, key) order is returned. Above ``ADMISSIBILITY_EXHAUSTIVE_LIMIT`` rounds
    (unless ``exhaustive`` forces it) intervals are capped at ``ADMISSIBILITY_WINDOW`` rounds
    and the verdict is flagged approximate.
    """
    r = Fraction(r)
    scope = AdmissibilityScope(scope)
    if exhaustive is None:
        exhaustive = horizon <= settings.ADMISSIBILITY_EXHAUSTIVE_LIMIT
    window = None if exhaustive else settings.ADMISSIBILITY_WINDOW
    if window is not None:
        logger.warning(
            f"Admissibility over {horizon} rounds checked with {window}-round windows only"
        )

    rounds_by_key: dict = defaultdict(list)
    for event in events:
        if event.round > horizon:
            continue
        for key in _keys(event, scope):
            rounds_by_key[key].append(event.round)

    num, den = r.numerator, r.denominator
    best: tuple | None = None

    for key in sorted(rounds_by_key):
        distinct, counts = np.unique(np.array(rounds_by_key[key], dtype=np.int64), return_counts=True)
        cumulative = np.concatenate(([0], np.cumsum(counts)))

        for i, start in enumerate(distinct):
            if best is not None and start > best[0]:
                break
            ends = distinct[i:]
            injected = cumulative[i + 1 :] - cumulative[i]
            lengths = ends - start + 1
            # count > r*len + b  <=>  count*den > num*len + b*den
            bad = injected * den > num * lengths + b * den
            if window is not None:
                bad &= lengths <= window
            hits = np.flatnonzero(bad)
            if hits.size:
                j = int(hits[0])
                candidate = (int(start), int(ends[j]), key, int(injected[j]))
                if best is None or candidate[:3] < best[:3]:
                    best = candidate
                break

    if best is None:
        return AdmissibilityVerdict(
            ok=True, rate=r, burstiness=b, scope=scope, approximate=window is not None
        )

    start, end, key, count = best
    return AdmissibilityVerdict(
        ok=False,
        rate=r,
        burstiness=b,
        scope=scope,
        interval=(start, end),
        key=key,
        count=count,
        allowance=r * (end - start + 1) + b,
        approximate=window is not None,
    )
