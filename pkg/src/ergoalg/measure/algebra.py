"""Carrier-independent event operations and finite algebras."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from ..errors import CarrierMismatch, DomainError
from .carriers import INTERVAL, Carrier, CylinderCarrier, ProductCarrier, same_carrier
from .cylinders import CylinderEvent
from .intervals import IntervalEvent
from .rectangles import RectEvent

Event = Union[IntervalEvent, CylinderEvent, RectEvent]

BOOLEAN_OPS = ("union", "intersection", "complement", "symdiff", "difference")


def normalize(raw, carrier: Optional[Carrier] = None) -> Event:
    """Canonical event from a raw description.

    ``raw`` is a list of ``(lo, hi)`` pairs on the interval carrier, a
    ``(window, words)`` pair on a cylinder carrier, or a list of
    ``(left, right)`` event pairs on a product carrier.
    """
    carrier = INTERVAL if carrier is None else carrier
    if carrier == INTERVAL:
        return IntervalEvent.from_intervals(raw)
    if isinstance(carrier, CylinderCarrier):
        window, words = raw
        return CylinderEvent.from_words(carrier, window, words)
    if isinstance(carrier, ProductCarrier):
        return RectEvent.from_rectangles(carrier, raw)
    raise DomainError(f"unknown carrier {carrier!r}")


def boolean_op(op: str, a: Event, b: Optional[Event] = None) -> Event:
    if op == "complement":
        if b is not None:
            raise DomainError("complement takes a single event")
        return ~a
    if b is None:
        raise DomainError(f"{op} needs two events")
    same_carrier(a, b)
    if op == "union":
        return a | b
    if op == "intersection":
        return a & b
    if op == "symdiff":
        return a ^ b
    if op == "difference":
        return a - b
    raise DomainError(f"unknown boolean operation {op!r}")


def measure(a: Event) -> Fraction:
    return a.measure()


def rho(a: Event, b: Event) -> Fraction:
    """Measure of the symmetric difference: the metric on the measure algebra."""
    same_carrier(a, b)
    return (a ^ b).measure()


def union_all(events: Iterable[Event], carrier: Carrier) -> Event:
    out = carrier.empty()
    for e in events:
        out = out | e
    return out


def is_subset(a: Event, b: Event) -> bool:
    return (a - b).is_empty


@dataclass(frozen=True)
class FiniteAlgebra:
    """A finite measure algebra, given by its atoms.

    Atoms are pairwise disjoint, positive and cover the space up to a null
    set; the constructor checks all three exactly.
    """

    atoms: tuple

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise DomainError("an algebra needs at least one atom")
        carrier = same_carrier(*atoms)
        total = Fraction(0)
        union = carrier.empty()
        for a in atoms:
            m = a.measure()
            if m <= 0:
                raise DomainError(f"atom {a!r} has measure {m}")
            total += m
            union = union | a
        # Equal measures of the union and of the sum force null overlaps,
        # and null canonical events are empty.
        if total != 1 or union.measure() != 1:
            raise DomainError("atoms must be disjoint and cover the space")

    @classmethod
    def trivial(cls, carrier: Carrier = INTERVAL) -> "FiniteAlgebra":
        return cls((carrier.full(),))

    @property
    def carrier(self) -> Carrier:
        return self.atoms[0].carrier

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def measures(self) -> list[Fraction]:
        return [a.measure() for a in self.atoms]

    def contains(self, event: Event) -> bool:
        """Whether ``event`` is a union of atoms (an element of the algebra)."""
        if event.carrier != self.carrier:
            raise CarrierMismatch(f"{event.carrier} vs {self.carrier}")
        for atom in self.atoms:
            part = atom & event
            if not (part.is_empty or part == atom):
                return False
        return True

    def refines(self, other: "FiniteAlgebra") -> bool:
        """Whether every atom of ``other`` is a union of atoms of ``self``."""
        return all(self.contains(a) for a in other.atoms)

    def atom_index(self, event: Event) -> int:
        """Index of the atom containing a non-empty ``event``."""
        for k, atom in enumerate(self.atoms):
            if is_subset(event, atom):
                return k
        raise DomainError(f"{event!r} is not inside a single atom")

    def same_partition(self, other: "FiniteAlgebra") -> bool:
        return set(self.atoms) == set(other.atoms)

    def sorted(self) -> "FiniteAlgebra":
        return FiniteAlgebra(tuple(sorted(self.atoms, key=lambda a: repr(a.key()))))


def _split(atoms: list, event: Event) -> list:
    out = []
    for atom in atoms:
        inside = atom & event
        if inside.is_empty:
            out.append(atom)
            continue
        outside = atom - inside
        out.append(inside)
        if not outside.is_empty:
            out.append(outside)
    return out


def generated_algebra(events: Sequence[Event], carrier: Optional[Carrier] = None) -> FiniteAlgebra:
    """Atoms of the finite algebra generated by ``events``.

    An empty list yields the trivial algebra on ``carrier`` (Lebesgue by
    default).
    """
    events = list(events)
    if not events:
        return FiniteAlgebra.trivial(INTERVAL if carrier is None else carrier)
    c = same_carrier(*events)
    if carrier is not None and carrier != c:
        raise CarrierMismatch(f"{c} vs {carrier}")
    atoms = [c.full()]
    for e in events:
        atoms = _split(atoms, e)
    return FiniteAlgebra(tuple(atoms))


def join(*algebras: FiniteAlgebra) -> FiniteAlgebra:
    """Coarsest common refinement."""
    if not algebras:
        raise DomainError("join of no algebras")
    same_carrier(*(alg.atoms[0] for alg in algebras))
    atoms = list(algebras[0].atoms)
    for alg in algebras[1:]:
        nxt = []
        for a in atoms:
            for b in alg.atoms:
                c = a & b
                if not c.is_empty:
                    nxt.append(c)
        atoms = nxt
    return FiniteAlgebra(tuple(atoms))


def sign_patterns(n: int) -> list[str]:
    """All ``+``/``-`` strings of length ``n`` in lexicographic order, ``+`` first."""
    out = [""]
    for _ in range(n):
        out = [p + s for p in out for s in "+-"]
    return out


def combination(events: Sequence[Event], pattern: str, carrier: Optional[Carrier] = None) -> Event:
    """The Boolean combination ``∧ e_i^{±}`` selected by a sign pattern."""
    if len(pattern) != len(events):
        raise DomainError("pattern length differs from tuple length")
    if carrier is None:
        carrier = same_carrier(*events)
    out = carrier.full()
    for e, s in zip(events, pattern):
        out = out & (e if s == "+" else ~e)
        if out.is_empty:
            break
    return out
