"""Exact measure algebras with measure-preserving automorphisms."""
from .conditioning import (
    StepFunction, TypeDatum, approximate_m_step, canonical_base, conditional_probability,
    dcl_membership, is_independent, realize_distance, type_datum, type_distance, types_equal,
)
from .config import Budget, RunConfig
from .entropy import (
    EntropyValue, entropy, h_sequence, is_transformally_definable_upto,
    is_transformally_independent_upto,
)
from .errors import BudgetExceeded, CarrierMismatch, DomainError, ErgoalgError, ParseError
from .measure import (
    INTERVAL, CylinderCarrier, CylinderEvent, FiniteAlgebra, IntervalEvent, ProductCarrier,
    RectEvent, boolean_op, generated_algebra, join, measure, normalize, rho,
)
from .towers import (
    CycleCertificate, Decomposition, Tower, aperiodicity_witness, approximate_conjugation,
    conjugacy_with_parameters, conjugate_cycles, cycle_approximation,
    independent_periodic_partition, partition_for_periodic, periodic_decomposition,
    product_system, rokhlin_tower,
)
from .transformations import (
    BernoulliShift, Conjugate, FiniteIET, Inverse, OdometerMap, System, fixed_set, map_event,
    rearrangement, rho_maps,
)

__version__ = "0.1.0"

__all__ = [
    "BernoulliShift", "Budget", "BudgetExceeded", "CarrierMismatch", "Conjugate",
    "CycleCertificate", "CylinderCarrier", "CylinderEvent", "Decomposition", "DomainError",
    "EntropyValue", "ErgoalgError", "FiniteAlgebra", "FiniteIET", "INTERVAL", "IntervalEvent",
    "Inverse", "OdometerMap", "ParseError", "ProductCarrier", "RectEvent", "RunConfig",
    "StepFunction", "System", "Tower", "TypeDatum", "aperiodicity_witness",
    "approximate_conjugation", "approximate_m_step", "boolean_op", "canonical_base",
    "conditional_probability", "conjugacy_with_parameters", "conjugate_cycles",
    "cycle_approximation", "dcl_membership", "entropy", "fixed_set", "generated_algebra",
    "h_sequence", "independent_periodic_partition", "is_independent",
    "is_transformally_definable_upto", "is_transformally_independent_upto", "join",
    "map_event", "measure", "normalize", "partition_for_periodic", "periodic_decomposition",
    "product_system", "realize_distance", "rearrangement", "rho", "rho_maps", "rokhlin_tower",
    "type_datum", "type_distance", "types_equal",
]
