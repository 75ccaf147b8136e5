"""Product systems."""
from __future__ import annotations

from ..transformations.base import System, Transformation
from ..transformations.symbolic import ProductMap


def product_system(S1: System | Transformation, S2: System | Transformation) -> System:
    """The independent product: ``T1 × T2`` on the product carrier."""
    T1 = S1.transformation if isinstance(S1, System) else S1
    T2 = S2.transformation if isinstance(S2, System) else S2
    return System(ProductMap(T1, T2))
