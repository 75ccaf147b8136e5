"""Exactly computable measure-preserving automorphisms."""
from .base import Enclosure, System, Transformation
from .distance import rho_maps
from .iet import FiniteIET, compose, from_event_map
from .odometer import OdometerMap
from .rearrange import rearrangement
from .shift import BernoulliShift
from .symbolic import (
    Compose, Conjugate, Inverse, ProductMap, ensure_size, fixed_set, inverse,
    is_certified_aperiodic, iterate_image, map_event, orbit, reduce_to_iet,
    shift_power, split_product,
)

__all__ = [
    "BernoulliShift", "Compose", "Conjugate", "Enclosure", "FiniteIET", "Inverse",
    "OdometerMap", "ProductMap", "System", "Transformation", "compose", "ensure_size",
    "fixed_set", "from_event_map", "inverse", "is_certified_aperiodic", "iterate_image",
    "map_event", "orbit", "rearrangement", "reduce_to_iet", "rho_maps", "shift_power",
    "split_product",
]
