"""Towers, witnesses, cycles and conjugacies."""
from .cycles import (
    ApproximateConjugacy, CycleCertificate, approximate_conjugation, conjugate_cycles,
    cycle_approximation, cycle_distance,
)
from .periodic import (
    AtomicPart, Decomposition, QfTypeMismatch, atom_permutation, conjugacy_with_parameters,
    independent_periodic_partition, partition_for_periodic, periodic_decomposition,
    qf_type_mismatch,
)
from .product import product_system
from .rokhlin import Tower, rokhlin_tower
from .witness import aperiodicity_witness, check_witness

__all__ = [
    "ApproximateConjugacy", "AtomicPart", "CycleCertificate", "Decomposition",
    "QfTypeMismatch", "Tower", "approximate_conjugation", "aperiodicity_witness",
    "atom_permutation", "check_witness", "conjugacy_with_parameters", "conjugate_cycles",
    "cycle_approximation", "cycle_distance", "independent_periodic_partition",
    "partition_for_periodic", "periodic_decomposition", "product_system",
    "qf_type_mismatch", "rokhlin_tower",
]
