"""Closed-form queue and delay bounds, in exact rationals."""

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from app.exceptions import BoundDomainError

Number = int | Fraction | str


@dataclass(frozen=True)
class BoundParameters:
    b: int
    r: Fraction
    h: int
    d: int

    @classmethod
    def of(cls, b: Number, r: Number, h: Number, d: Number) -> "BoundParameters":
        params = cls(b=int(b), r=Fraction(r), h=int(h), d=int(d))
        if params.b < 1:
            raise BoundDomainError(f"b must be at least 1, got {params.b}")
        if params.r < 0:
            raise BoundDomainError(f"r must be non-negative, got {params.r}")
        if params.h < 1:
            raise BoundDomainError(f"h must be at least 1, got {params.h}")
        if params.d < 1:
            raise BoundDomainError(f"d must be at least 1, got {params.d}")
        return params


@dataclass(frozen=True)
class PolicyBounds:
    policy: str
    params: BoundParameters
    queue_bound: Fraction
    delay_bound: Fraction

    @property
    def queue_packets(self) -> int:
        """Integer packet bound: the floor of the rational queue bound."""
        return floor(self.queue_bound)


def _sis_params(b: Number, r: Number, h: Number, d: Number) -> BoundParameters:
    params = BoundParameters.of(b, r, h, d)
    if params.r * params.h >= 1:
        raise BoundDomainError(f"SIS bounds need r*h < 1, got r*h = {params.r * params.h}")
    return params


def sis_k_sequence(b: Number, r: Number, h: Number, d: Number) -> list[Fraction]:
    """k_1 = b, k_{i+1} = (k_i + b) / (1 - r*h)."""
    params = _sis_params(b, r, h, d)
    slack = 1 - params.r * params.h
    ks = [Fraction(params.b)]
    for _ in range(params.d - 1):
        ks.append((ks[-1] + params.b) / slack)
    return ks


def sis_bounds(b: Number, r: Number, h: Number, d: Number) -> PolicyBounds:
    params = _sis_params(b, r, h, d)
    slack = 1 - params.r * params.h
    ks = sis_k_sequence(b, r, h, d)
    delay = sum(((k + params.b) / slack) * params.h for k in ks)
    return PolicyBounds(policy="SIS", params=params, queue_bound=ks[-1], delay_bound=Fraction(delay))


def lis_bounds(b: Number, r: Number, h: Number, d: Number) -> PolicyBounds:
    params = BoundParameters.of(b, r, h, d)
    if params.r * params.h > 1:
        raise BoundDomainError(f"LIS bounds need r*h <= 1, got r*h = {params.r * params.h}")
    delay = (params.b + params.r) * params.h * (params.d - 1) + 1
    queue = params.r * delay + params.b
    return PolicyBounds(policy="LIS", params=params, queue_bound=queue, delay_bound=delay)


def lis_transit_bound(a: Number, b: Number, r: Number, h: Number, d: Number) -> Fraction:
    """Upper bound on T_d - T_0 for a packet while at most ``a`` classes are active."""
    a = Fraction(a)
    if a < 1:
        raise BoundDomainError(f"a must be at least 1, got {a}")
    params = BoundParameters.of(b, r, h, d)
    span = params.h * (params.d - 1)
    return (params.r * a + params.b) * span / (1 + params.r * span)


def bounds_for(policy: str, b: Number, r: Number, h: Number, d: Number) -> PolicyBounds:
    policy = policy.upper()
    if policy == "SIS":
        return sis_bounds(b, r, h, d)
    if policy == "LIS":
        return lis_bounds(b, r, h, d)
    raise BoundDomainError(f"no closed-form bounds for policy {policy}")
