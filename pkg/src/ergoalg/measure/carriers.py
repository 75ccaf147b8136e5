"""Measure-space descriptors.

A carrier names the probability space an event lives on: Lebesgue measure
on [0, 1), a Bernoulli product measure on sequences indexed by the
integers, or the product of two carriers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import CarrierMismatch, DomainError

MAX_PRODUCT_NESTING = 2


class Carrier:
    kind: str = "abstract"

    def full(self):
        raise NotImplementedError

    def empty(self):
        raise NotImplementedError

    @property
    def nesting(self) -> int:
        return 0


@dataclass(frozen=True)
class IntervalCarrier(Carrier):
    kind = "interval"

    def full(self):
        from .intervals import IntervalEvent
        return IntervalEvent.full()

    def empty(self):
        from .intervals import IntervalEvent
        return IntervalEvent.empty()


@dataclass(frozen=True)
class CylinderCarrier(Carrier):
    """Bernoulli measure with the given symbol probabilities.

    Every probability must be strictly positive; this keeps the measure
    non-atomic and makes "measure zero" coincide with "empty" for
    canonical cylinder events.
    """

    probs: tuple[Fraction, ...]
    kind = "cylinder"

    def __post_init__(self):
        probs = tuple(Fraction(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) < 2:
            raise DomainError("a Bernoulli carrier needs at least two symbols")
        if any(p <= 0 for p in probs):
            raise DomainError("symbol probabilities must be positive")
        if sum(probs) != 1:
            raise DomainError(f"symbol probabilities sum to {sum(probs)}, not 1")

    @property
    def alphabet_size(self) -> int:
        return len(self.probs)

    def full(self):
        from .cylinders import CylinderEvent
        return CylinderEvent.full(self)

    def empty(self):
        from .cylinders import CylinderEvent
        return CylinderEvent.empty(self)


@dataclass(frozen=True)
class ProductCarrier(Carrier):
    left: Carrier
    right: Carrier
    kind = "product"

    def __post_init__(self):
        if self.nesting > MAX_PRODUCT_NESTING:
            raise DomainError(
                f"products nest at most {MAX_PRODUCT_NESTING} levels deep")

    @property
    def nesting(self) -> int:
        return 1 + max(self.left.nesting, self.right.nesting)

    def full(self):
        from .rectangles import RectEvent
        return RectEvent.full(self)

    def empty(self):
        from .rectangles import RectEvent
        return RectEvent.empty(self)


INTERVAL = IntervalCarrier()


def same_carrier(*events) -> Carrier:
    """Return the common carrier of ``events`` or raise CarrierMismatch."""
    if not events:
        raise DomainError("no events given")
    carrier = events[0].carrier
    for e in events[1:]:
        if e.carrier != carrier:
            raise CarrierMismatch(f"{carrier} vs {e.carrier}")
    return carrier
