"""Common interface of measure-preserving automorphisms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import CarrierMismatch, DomainError
from ..measure.carriers import Carrier


class Transformation:
    """An invertible measure-preserving map acting on events of its carrier.

    Subclasses implement :meth:`image` and :meth:`preimage` exactly; both
    return canonical events.
    """

    @property
    def carrier(self) -> Carrier:
        raise NotImplementedError

    def image(self, a):
        raise NotImplementedError

    def preimage(self, a):
        raise NotImplementedError

    def node_count(self) -> int:
        return 1

    def check_event(self, a) -> None:
        if a.carrier != self.carrier:
            raise CarrierMismatch(f"event on {a.carrier} given to a map on {self.carrier}")


@dataclass(frozen=True)
class Enclosure:
    """Certified bounds ``lo <= value <= hi`` for a quantity in [0, 1]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not 0 <= lo <= hi <= 1:
            raise DomainError(f"invalid enclosure [{lo}, {hi}]")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi


@dataclass(frozen=True)
class System:
    """A carrier together with an automorphism of it."""

    transformation: Transformation

    @property
    def carrier(self) -> Carrier:
        return self.transformation.carrier
