"""Conditional probability over finite algebras, types, independence."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CarrierMismatch, DomainError
from .measure.algebra import (
    Event, FiniteAlgebra, combination, generated_algebra, join, sign_patterns, union_all,
)
from .measure.carriers import INTERVAL, same_carrier
from .measure.intervals import IntervalEvent
from .transformations.base import System, Transformation
from .transformations.odometer import OdometerMap
from .transformations.symbolic import reduce_to_iet

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class StepFunction:
    """One value per atom of a finite algebra."""

    algebra: FiniteAlgebra
    values: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != len(self.algebra.atoms):
            raise DomainError("one value per atom is required")
        if any(not 0 <= v <= 1 for v in values):
            raise DomainError("step function values must lie in [0, 1]")

    def value_on(self, atom) -> Fraction:
        return self.values[self.algebra.atoms.index(atom)]

    def integral(self, region: Optional[Event] = None) -> Fraction:
        """``∫_region g`` for a region that is a union of atoms (default: everything)."""
        total = ZERO
        for atom, v in zip(self.algebra.atoms, self.values):
            if region is None:
                total += v * atom.measure()
            else:
                part = atom & region
                if not part.is_empty:
                    if part != atom:
                        raise DomainError("region is not a union of atoms")
                    total += v * atom.measure()
        return total

    def as_dict(self) -> dict:
        return dict(zip(self.algebra.atoms, self.values))

    def level_sets(self) -> dict[Fraction, Event]:
        out: dict[Fraction, Event] = {}
        for atom, v in zip(self.algebra.atoms, self.values):
            out[v] = atom if v not in out else out[v] | atom
        return out


def _check_same(a, C: FiniteAlgebra) -> None:
    if a.carrier != C.carrier:
        raise CarrierMismatch(f"{a.carrier} vs {C.carrier}")


def conditional_probability(a: Event, C: FiniteAlgebra) -> StepFunction:
    """``P(a | C)``: the ratio ``m(a ∩ c) / m(c)`` on every atom ``c``."""
    _check_same(a, C)
    return StepFunction(C, tuple((a & c).measure() / c.measure() for c in C.atoms))


# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True)
class TypeDatum:
    """Conditional probabilities of all sign combinations of a tuple."""

    algebra: FiniteAlgebra
    table: tuple[tuple[str, StepFunction], ...]

    def __post_init__(self):
        for k, _ in enumerate(self.algebra.atoms):
            if sum(sf.values[k] for _, sf in self.table) != 1:
                raise DomainError("combination probabilities do not sum to 1 on an atom")

    def as_dict(self) -> dict[str, StepFunction]:
        return dict(self.table)


def type_datum(events: Sequence[Event], C: FiniteAlgebra) -> TypeDatum:
    events = list(events)
    for e in events:
        _check_same(e, C)
    table = tuple(
        (pat, conditional_probability(combination(events, pat, C.carrier), C))
        for pat in sign_patterns(len(events)))
    return TypeDatum(C, table)


def types_equal(a: Sequence[Event], b: Sequence[Event], C: FiniteAlgebra) -> bool:
    """Equality of types over ``C``: every combination has the same conditional probability."""
    if len(a) != len(b):
        raise DomainError("tuples differ in length")
    return type_datum(a, C).table == type_datum(b, C).table


def is_partition(events: Sequence[Event]) -> bool:
    if not events:
        return False
    carrier = same_carrier(*events)
    total = sum((e.measure() for e in events), ZERO)
    return total == 1 and union_all(events, carrier).measure() == 1


def _require_partitions(*tuples) -> None:
    for t in tuples:
        if not is_partition(t):
            raise DomainError("inputs must be partitions of the space")


def type_distance(a: Sequence[Event], b: Sequence[Event], C: FiniteAlgebra) -> Fraction:
    """``max_i ‖P(a_i|C) − P(b_i|C)‖₁`` for two partitions of equal length."""
    if len(a) != len(b):
        raise DomainError("partitions differ in length")
    _require_partitions(a, b)
    best = ZERO
    for ai, bi in zip(a, b):
        pa = conditional_probability(ai, C).values
        pb = conditional_probability(bi, C).values
        d = sum((abs(x - y) * c.measure() for x, y, c in zip(pa, pb, C.atoms)), ZERO)
        best = max(best, d)
    return best


@dataclass(frozen=True)
class Realization:
    a: tuple[IntervalEvent, ...]
    b: tuple[IntervalEvent, ...]
    distance: Fraction  # max_i ρ(a_i', b_i')


def realize_distance(a: Sequence[IntervalEvent], b: Sequence[IntervalEvent]) -> Realization:
    """Copies ``ā'`` of ``ā`` and ``b̄'`` of ``b̄`` with ``max ρ(a_i', b_i')`` minimal.

    ``a_i'`` are consecutive intervals with the measures of ``a_i``. A part
    that must shrink keeps the left end of its interval; the freed right
    ends are handed, left to right, to the parts that must grow.
    """
    if len(a) != len(b):
        raise DomainError("partitions differ in length")
    _require_partitions(a, b)
    if any(e.carrier != INTERVAL for e in list(a) + list(b)):
        raise DomainError("realize_distance works on the interval carrier")
    ma = [e.measure() for e in a]
    mb = [e.measure() for e in b]
    a_new, at = [], ZERO
    for m in ma:
        a_new.append(IntervalEvent.interval(at, at + m))
        at += m
    spare = IntervalEvent.empty()
    b_new: list[Optional[IntervalEvent]] = [None] * len(a)
    for i, (x, y) in enumerate(zip(ma, mb)):
        if y <= x:
            b_new[i] = a_new[i].leftmost(y)
            spare = spare | (a_new[i] - b_new[i])
    for i, (x, y) in enumerate(zip(ma, mb)):
        if y > x:
            extra = spare.leftmost(y - x)
            spare = spare - extra
            b_new[i] = a_new[i] | extra
    dist = max(((ai ^ bi).measure() for ai, bi in zip(a_new, b_new)), default=ZERO)
    return Realization(tuple(a_new), tuple(b_new), dist)


# ---------------------------------------------------------------------------
# Independence


def is_independent(a: Sequence[Event], C: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    """``P(∧ a^± | C ∨ B) = P(∧ a^± | C)`` for every sign pattern."""
    a = list(a)
    J = join(C, B)
    for e in a:
        _check_same(e, J)
    parent = [C.atom_index(j) for j in J.atoms]
    mC = [c.measure() for c in C.atoms]
    for pat in sign_patterns(len(a)):
        comb = combination(a, pat, C.carrier)
        onC = [(comb & c).measure() for c in C.atoms]
        for j, k in zip(J.atoms, parent):
            if (comb & j).measure() * mC[k] != onC[k] * j.measure():
                return False
    return True


def canonical_base(a: Sequence[Event], C: FiniteAlgebra) -> FiniteAlgebra:
    """Coarsest algebra of unions of ``C``-atoms carrying the type of ``ā`` over ``C``.

    Atoms of ``C`` with identical conditional-probability vectors (over all
    sign patterns) are merged.
    """
    datum = type_datum(a, C)
    groups: dict[tuple, Event] = {}
    order = []
    for k, atom in enumerate(C.atoms):
        key = tuple(sf.values[k] for _, sf in datum.table)
        if key in groups:
            groups[key] = groups[key] | atom
        else:
            groups[key] = atom
            order.append(key)
    return FiniteAlgebra(tuple(groups[k] for k in order))


def dcl_membership(a: Event, C: FiniteAlgebra) -> bool:
    """Whether ``a`` is a union of atoms of ``C``."""
    _check_same(a, C)
    return C.contains(a)


# ---------------------------------------------------------------------------
# m-step simple approximation


@dataclass(frozen=True)
class MStepApproximation:
    event: Event
    bound: Fraction  # exact ρ(a, a')
    m: int
    grid: Fraction


def _grid_of(grid) -> int:
    grid = Fraction(grid)
    if grid <= 0 or grid.numerator != 1:
        raise DomainError(f"grid must be 1/q for a positive integer q, got {grid}")
    return grid.denominator


def _check_invariant_algebra(T: Transformation, C: FiniteAlgebra) -> None:
    for atom in C.atoms:
        if T.image(atom) not in C.atoms:
            raise DomainError("the algebra's atoms are not permuted by the map")


def is_m_step_simple(a: Event, T: Transformation, C: FiniteAlgebra, m: int, grid) -> bool:
    """Every combination of ``a, T a, ..., T^m a`` has conditional probabilities on the grid."""
    q = _grid_of(grid)
    events, e = [], a
    for _ in range(m + 1):
        events.append(e)
        e = T.image(e)
    atoms = generated_algebra(events, C.carrier).atoms
    for atom in atoms:
        for c in C.atoms:
            v = (atom & c).measure() / c.measure() * q
            if v.denominator != 1:
                return False
    return True


def _round(x: Fraction, q: int) -> Fraction:
    """Nearest multiple of ``1/q``; halves round down."""
    lo = Fraction(int(x * q), q)
    return lo if x - lo <= Fraction(1, 2 * q) else lo + Fraction(1, q)


def _adjust(part: IntervalEvent, room: IntervalEvent, target: Fraction) -> IntervalEvent:
    have = part.measure()
    if target <= have:
        return part.leftmost(target)
    return part | room.leftmost(target - have)


def approximate_m_step(a: Event, S: System | Transformation, C: FiniteAlgebra, m: int,
                       grid, preserve_measure: bool = False) -> MStepApproximation:
    """An ``m``-step simple ``a'`` close to ``a``, with the exact distance as bound.

    For ``m = 0`` each ``P(a|c)`` is rounded to the nearest grid value by
    trimming or extending ``a ∩ c`` from the left. With ``preserve_measure``
    the last atom rounds up or down, whichever keeps ``m(a')`` closest to
    ``m(a)``. For ``m >= 1`` ``a'`` is a union of cells of a partition
    permuted by the map whose cells are grid multiples inside each atom.
    """
    T = S.transformation if isinstance(S, System) else S
    q = _grid_of(grid)
    if m < 0:
        raise DomainError("m must be non-negative")
    _check_same(a, C)
    if a.carrier != INTERVAL:
        raise DomainError("m-step approximation works on the interval carrier")
    _check_invariant_algebra(T, C)
    if m == 0:
        out = _round_atoms(a, C, q, preserve_measure)
    else:
        out = _round_cells(a, T, C, q)
    if not is_m_step_simple(out, T, C, m, Fraction(1, q)):
        raise DomainError("approximation is not m-step simple")  # guards the constructions
    return MStepApproximation(out, (a ^ out).measure(), m, Fraction(1, q))


def _round_atoms(a: IntervalEvent, C: FiniteAlgebra, q: int, preserve: bool) -> IntervalEvent:
    parts = []
    total = ZERO
    atoms = C.atoms
    for k, c in enumerate(atoms):
        inside = a & c
        x = inside.measure() / c.measure()
        t = _round(x, q)
        if preserve and k == len(atoms) - 1:
            down = Fraction(int(x * q), q)
            up = min(ONE, down + Fraction(1, q)) if down != x else down
            want = a.measure() - total
            t = min((down, up), key=lambda v: (abs(v * c.measure() - want), v))
        total += t * c.measure()
        parts.append(_adjust(inside, c - inside, t * c.measure()))
    return union_all(parts, INTERVAL)


def _cells(T: Transformation, C: FiniteAlgebra, q: int) -> list[IntervalEvent]:
    """A partition permuted by ``T`` whose cells are grid multiples in their atom."""
    smallest = min(c.measure() for c in C.atoms) / q
    if isinstance(T, OdometerMap):
        p = T.base
        best = None
        depth = 1
        while Fraction(1, p ** depth) >= smallest:
            w = Fraction(1, p ** depth)
            cells = [IntervalEvent.interval(j * w, (j + 1) * w) for j in range(p ** depth)]
            if all(_fits(cell, C, q) for cell in cells):
                best = cells  # finer cells approximate better
            depth += 1
        if best is None:
            raise DomainError("no odometer cell depth matches this grid")
        return best
    iet = reduce_to_iet(T)
    if iet is not None:
        from .towers.periodic import atom_permutation
        perm = atom_permutation(iet, list(C.atoms))
        cells = []
        for cyc in perm.cycles():
            lo, hi = perm.atoms[cyc[0]]
            best = None
            split = 1
            while (hi - lo) / split >= smallest:
                w = (hi - lo) / split
                pieces = []
                for i in cyc:
                    u, _ = perm.atoms[i]
                    pieces.extend(IntervalEvent.interval(u + s * w, u + (s + 1) * w)
                                  for s in range(split))
                if all(_fits(cell, C, q) for cell in pieces):
                    best = pieces
                split += 1
            if best is None:
                raise DomainError("atom cycles cannot be cut into grid cells")
            cells.extend(best)
        return cells
    raise DomainError("no map-permuted grid partition for this map")


def _fits(cell: IntervalEvent, C: FiniteAlgebra, q: int) -> bool:
    for c in C.atoms:
        part = cell & c
        if part.is_empty:
            continue
        if part != cell:
            return False
        return (cell.measure() / c.measure() * q).denominator == 1
    return False


def _round_cells(a: IntervalEvent, T: Transformation, C: FiniteAlgebra, q: int) -> IntervalEvent:
    chosen = []
    for cell in _cells(T, C, q):
        if 2 * (a & cell).measure() > cell.measure():
            chosen.append(cell)
    return union_all(chosen, INTERVAL)
