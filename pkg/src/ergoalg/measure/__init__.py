"""Exact events on three carriers and finite algebras of them."""
from .algebra import (
    BOOLEAN_OPS, Event, FiniteAlgebra, boolean_op, combination, generated_algebra,
    is_subset, join, measure, normalize, rho, sign_patterns, union_all,
)
from .carriers import INTERVAL, Carrier, CylinderCarrier, IntervalCarrier, ProductCarrier
from .cylinders import CylinderEvent
from .intervals import IntervalEvent
from .rectangles import RectEvent, product_event

__all__ = [
    "BOOLEAN_OPS", "Carrier", "CylinderCarrier", "CylinderEvent", "Event", "FiniteAlgebra",
    "INTERVAL", "IntervalCarrier", "IntervalEvent", "ProductCarrier", "RectEvent",
    "boolean_op", "combination", "generated_algebra", "is_subset", "join", "measure",
    "normalize", "product_event", "rho", "sign_patterns", "union_all",
]
