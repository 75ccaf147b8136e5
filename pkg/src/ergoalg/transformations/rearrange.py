"""Equal-measure events are exchanged by an interval exchange."""
from __future__ import annotations

from ..errors import DomainError
from ..measure.intervals import IntervalEvent
from .iet import FiniteIET, from_event_map


def rearrangement(a: IntervalEvent, b: IntervalEvent) -> FiniteIET:
    """An IET ``η`` with ``η(a) = b`` and ``η(aᶜ) = bᶜ``.

    Mass is matched left to right inside ``a`` and inside its complement,
    so ``η`` is order-preserving on each of them.
    """
    if not isinstance(a, IntervalEvent) or not isinstance(b, IntervalEvent):
        raise DomainError("rearrangement needs interval events")
    if a.measure() != b.measure():
        raise DomainError(f"measures differ: {a.measure()} vs {b.measure()}")
    return from_event_map([(a, b), (~a, ~b)])
