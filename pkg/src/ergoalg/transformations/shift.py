"""Bernoulli shifts acting on cylinder events."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError
from ..measure.carriers import CylinderCarrier
from ..measure.cylinders import CylinderEvent
from .base import Transformation


@dataclass(frozen=True)
class BernoulliShift(Transformation):
    """The ``power``-th iterate of the shift on a Bernoulli carrier.

    The forward shift sends ``(x_n)`` to ``(x_{n-1})``, so the cylinder
    ``[x_0 = s]`` is carried onto ``[x_1 = s]``. ``power`` may be any
    integer; ``0`` is the identity.
    """

    space: CylinderCarrier
    power: int = 1

    def __post_init__(self):
        if not isinstance(self.space, CylinderCarrier):
            raise DomainError("a Bernoulli shift acts on a cylinder carrier")

    @classmethod
    def on(cls, probs, power: int = 1) -> "BernoulliShift":
        return cls(CylinderCarrier(tuple(probs)), power)

    @property
    def carrier(self):
        return self.space

    @property
    def probs(self):
        return self.space.probs

    @property
    def alphabet_size(self) -> int:
        return self.space.alphabet_size

    def image(self, a: CylinderEvent) -> CylinderEvent:
        self.check_event(a)
        return a.shifted(self.power)

    def preimage(self, a: CylinderEvent) -> CylinderEvent:
        self.check_event(a)
        return a.shifted(-self.power)

    def inverse(self) -> "BernoulliShift":
        return BernoulliShift(self.space, -self.power)

    def generator(self) -> list[CylinderEvent]:
        """The time-zero partition ``{[x_0 = s]}``."""
        return [CylinderEvent.from_pattern(self.space, {0: s}) for s in range(self.alphabet_size)]
