"""Aperiodicity witnesses: sets of measure about 1/2 nearly disjoint from their n-th image."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from ..config import Budget, resolve_budget
from ..errors import DomainError
from ..measure.carriers import ProductCarrier
from ..measure.intervals import IntervalEvent
from ..measure.rectangles import RectEvent
from ..transformations.base import System, Transformation
from ..transformations.odometer import OdometerMap
from ..transformations.symbolic import (
    Conjugate, Inverse, is_certified_aperiodic, iterate_image, split_product,
)
from .rokhlin import rokhlin_tower


@dataclass(frozen=True)
class WitnessCheck:
    overlap: Fraction    # m(b ∩ τ^n b)
    imbalance: Fraction  # |m(b) - 1/2|

    def holds(self, eps) -> bool:
        eps = Fraction(eps)
        return self.overlap <= eps and self.imbalance <= eps


def check_witness(T: Transformation, b, n: int) -> WitnessCheck:
    moved = iterate_image(T, n, b)
    return WitnessCheck((b & moved).measure(), abs(b.measure() - Fraction(1, 2)))


def _digit_set(p: int, s: int) -> Optional[list[int]]:
    """Half of the residues mod ``p``, disjoint from their translate by ``s``.

    Exists iff every cycle of ``d -> d + s`` on ``Z/p`` has even length.
    """
    cycle = p // gcd(p, s)
    if cycle % 2:
        return None
    return [d for d in range(p) if (d // gcd(p, s)) % 2 == 0]


def odometer_digit_witness(odo: OdometerMap, n: int) -> Optional[IntervalEvent]:
    """An exact witness read off a single digit, when one exists.

    Writing ``n = p^a m`` with ``p`` not dividing ``m``, adding ``n`` leaves
    the first ``a`` digits alone and adds ``m mod p`` to digit ``a + 1``
    without incoming carry, so a digit set disjoint from its translate
    gives ``m(b ∩ τ^n b) = 0`` and ``m(b) = 1/2``.
    """
    p = odo.base
    a, m = 0, n
    while m % p == 0:
        m //= p
        a += 1
    digits = _digit_set(p, m % p)
    if digits is None:
        return None
    out = IntervalEvent.empty()
    for d in digits:
        out = out | odo.digit_event(a + 1, d)
    return out


def _product_witness(T, n, eps, budget):
    parts = split_product(T)
    if parts is None:
        return None
    left, right = parts
    if is_certified_aperiodic(left):
        return RectEvent.rectangle(aperiodicity_witness(left, n, eps, budget), right.carrier.full())
    if is_certified_aperiodic(right):
        return RectEvent.rectangle(left.carrier.full(), aperiodicity_witness(right, n, eps, budget))
    return None


def aperiodicity_witness(S: System | Transformation, n: int, eps,
                         budget: Optional[Budget] = None):
    """Event ``b`` with ``m(b ∩ τ^n b) <= eps`` and ``|m(b) - 1/2| <= eps``.

    Odometers get an exact digit witness when one exists. Otherwise ``b``
    is the lower half of a height-``2n`` tower with residual below
    ``2 eps``: its ``n``-th image is the upper half, so the overlap is null
    and the imbalance is half the residual.
    """
    T = S.transformation if isinstance(S, System) else S
    eps = Fraction(eps)
    if n < 1:
        raise DomainError("n must be positive")
    if eps < 0:
        raise DomainError("eps must be non-negative")
    budget = resolve_budget(budget)
    b = None
    if isinstance(T, OdometerMap):
        b = odometer_digit_witness(T, n)
    elif isinstance(T.carrier, ProductCarrier):
        b = _product_witness(T, n, eps, budget)
    elif isinstance(T, Inverse) and is_certified_aperiodic(T.inner):
        # m(b ∩ τ^-n b) = m(τ^n b ∩ b)
        b = aperiodicity_witness(T.inner, n, eps, budget)
    elif isinstance(T, Conjugate) and is_certified_aperiodic(T.inner):
        b = T.by.preimage(aperiodicity_witness(T.inner, n, eps, budget))
    if b is None:
        if eps == 0:
            raise DomainError("no exact witness available for this map; use eps > 0")
        tower = rokhlin_tower(T, 2 * n, 2 * eps, budget)
        b = tower.base.carrier.empty()
        for lev in tower.levels[:n]:
            b = b | lev
    check = check_witness(T, b, n)
    if not check.holds(eps):
        raise DomainError(f"witness check failed: {check}")
    return b
