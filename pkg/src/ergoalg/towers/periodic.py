"""Periodic maps: atom permutations, free partitions, decomposition by period."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from ..errors import DomainError
from ..measure.algebra import union_all
from ..measure.carriers import INTERVAL
from ..measure.intervals import IntervalEvent, _merge
from ..transformations.base import Transformation
from ..transformations.iet import FiniteIET, from_event_map
from ..transformations.symbolic import is_certified_aperiodic, reduce_to_iet
from .cycles import CycleCertificate, check_conjugacy, extend_along_cycle

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_iet(T) -> FiniteIET:
    if isinstance(T, CycleCertificate):
        return T.cycle
    iet = reduce_to_iet(T)
    if iet is None:
        raise DomainError("map does not reduce to an interval exchange")
    return iet


@dataclass(frozen=True)
class AtomPermutation:
    """Intervals permuted by an IET, refined by the endpoints of given events.

    ``atoms[i]`` is sent by translation onto ``atoms[image[i]]``.
    """

    atoms: tuple[tuple[Fraction, Fraction], ...]
    image: tuple[int, ...]

    def cycles(self) -> list[list[int]]:
        seen = [False] * len(self.atoms)
        out = []
        for i in range(len(self.atoms)):
            if seen[i]:
                continue
            cyc, j = [], i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.image[j]
            out.append(cyc)
        return out

    def event(self, indices) -> IntervalEvent:
        return IntervalEvent(_merge([self.atoms[i] for i in indices], check=False))


def atom_permutation(T, events: Sequence[IntervalEvent] = ()) -> AtomPermutation:
    """Close the breakpoints of ``T`` and of ``events`` under ``T`` and ``T⁻¹``.

    All points involved are rational with denominators dividing a common
    ``D``, and ``T`` permutes multiples of ``1/D``, so the closure is finite.
    """
    iet = _as_iet(T)
    inv = iet.inverse()
    points = set(iet.breakpoints()) | set(inv.breakpoints())
    for e in events:
        points.update(e.endpoints())
    points.discard(ONE)
    points.add(ZERO)
    frontier = list(points)
    while frontier:
        nxt = []
        for x in frontier:
            for y in (iet(x), inv(x)):
                if y not in points:
                    points.add(y)
                    nxt.append(y)
        frontier = nxt
    cuts = sorted(points) + [ONE]
    atoms = tuple(zip(cuts, cuts[1:]))
    starts = [lo for lo, _ in atoms]
    image = tuple(bisect_right(starts, iet(lo)) - 1 for lo, _ in atoms)
    return AtomPermutation(atoms, image)


# ---------------------------------------------------------------------------
# Decomposition by period


@dataclass(frozen=True)
class Decomposition:
    periodic_parts: dict = field(default_factory=dict)  # period -> event
    aperiodic_part: object = None

    def parts(self) -> list:
        out = list(self.periodic_parts.values())
        if self.aperiodic_part is not None:
            out.append(self.aperiodic_part)
        return out


def periodic_decomposition(T: Transformation) -> Decomposition:
    """Split the space into ``z_i`` (least period ``i``) and an aperiodic part.

    For an IET ``z_i = fixed_set(T, i) ∖ ⋃_{j<i} z_j``; only periods that
    occur among the atom cycles can give a non-null part. Structurally
    aperiodic maps are aperiodic everywhere.
    """
    if T.carrier == INTERVAL:
        iet = reduce_to_iet(T)
        if iet is not None:
            perm = atom_permutation(iet)
            lengths = sorted({len(c) for c in perm.cycles()})
            parts: dict[int, IntervalEvent] = {}
            earlier = IntervalEvent.empty()
            for i in lengths:
                z = iet.fixed_set(i) - earlier
                if not z.is_empty:
                    parts[i] = z
                    earlier = earlier | z
            return Decomposition(parts, ~earlier)
    if is_certified_aperiodic(T):
        return Decomposition({}, T.carrier.full())
    raise DomainError("cannot decompose this map: not an IET and not certified aperiodic")


def global_period(T) -> int:
    perm = atom_permutation(_as_iet(T))
    return lcm(*(len(c) for c in perm.cycles()))


# ---------------------------------------------------------------------------
# Free periodic maps


def _check_free_period(T, n: int) -> FiniteIET:
    iet = _as_iet(T)
    if n < 1:
        raise DomainError("n must be positive")
    if not iet.power(n + 1).is_identity:
        raise DomainError(f"T^{n + 1} is not the identity")
    for j in range(1, n + 1):
        if not iet.fixed_set(j).is_empty:
            raise DomainError(f"T^{j} has a non-null fixed set")
    return iet


def partition_for_periodic(T, n: int) -> IntervalEvent:
    """``A`` with ``A, T A, ..., T^n A`` a partition, for free ``T`` of period ``n + 1``."""
    return independent_periodic_partition(T, n, ())


def _orbit_algebra(iet: FiniteIET, n: int, events: Sequence[IntervalEvent]):
    """Atoms of the algebra generated by ``T^j(b)``, keyed by sign signature."""
    orbit_events = []
    for b in events:
        e = b
        for _ in range(n + 1):
            orbit_events.append(e)
            e = iet.image(e)
    atoms = {"": IntervalEvent.full()}
    for e in orbit_events:
        nxt = {}
        for sig, a in atoms.items():
            inside, outside = a & e, a - e
            if not inside.is_empty:
                nxt[sig + "+"] = inside
            if not outside.is_empty:
                nxt[sig + "-"] = outside
        atoms = nxt
    return orbit_events, atoms


def independent_periodic_partition(T, n: int, events: Sequence[IntervalEvent]) -> IntervalEvent:
    """A free partition set ``A`` independent from the ``T``-orbit algebra of ``events``.

    The orbit algebra's atoms are permuted by ``T``. On an atom orbit
    ``B_0 → ... → B_{k-1}`` the map ``S = T^k`` is free of period
    ``r = (n + 1)/k`` on ``B_0``; with ``F`` a fundamental domain of ``S``
    cut into ``k`` equal consecutive parts ``F_t``, the set
    ``⋃_t T^t(F_t)`` meets every ``B_i`` in ``m(B_i)/(n + 1)``.
    """
    iet = _check_free_period(T, n)
    events = list(events)
    _, algebra = _orbit_algebra(iet, n, events)
    perm = atom_permutation(iet, events)
    starts = [lo for lo, _ in perm.atoms]
    fine_cycles = perm.cycles()

    def algebra_atom_of(ev: IntervalEvent) -> str:
        for sig, a in algebra.items():
            if not (a & ev).is_empty:
                return sig
        raise AssertionError("atoms cover the space")

    sig_of_fine = [algebra_atom_of(perm.event([i])) for i in range(len(perm.atoms))]
    done: set[str] = set()
    pieces = []
    # Orbits are entered at their first signature, so two tuples of equal
    # type pick corresponding base atoms.
    for sig in sorted(algebra):
        if sig in done:
            continue
        orbit = [sig]
        ev = iet.image(algebra[sig])
        while True:
            nsig = algebra_atom_of(ev)
            if nsig == sig:
                break
            orbit.append(nsig)
            ev = iet.image(ev)
        done.update(orbit)
        k = len(orbit)
        # F: the leftmost fine atom of B_0 on every fine cycle through B_0.
        chosen = []
        for cyc in fine_cycles:
            inside = [i for i in cyc if sig_of_fine[i] == sig]
            if inside:
                chosen.append(min(inside, key=lambda i: starts[i]))
        F = perm.event(chosen)
        parts = F.split([F.measure() / k] * k)
        for t, part in enumerate(parts):
            moved = part
            for _ in range(t):
                moved = iet.image(moved)
            pieces.append(moved)
    A = union_all(pieces, INTERVAL)
    _check_partition(iet, A, n)
    return A


def _check_partition(iet: FiniteIET, A: IntervalEvent, n: int) -> None:
    union, level = IntervalEvent.empty(), A
    for _ in range(n + 1):
        union = union | level
        level = iet.image(level)
    if union.measure() != 1 or (n + 1) * A.measure() != 1:
        raise DomainError("iterates of A do not partition the space")


# ---------------------------------------------------------------------------
# Conjugacy with parameters


@dataclass(frozen=True)
class TypeMismatch:
    pattern: str
    left: Fraction
    right: Fraction


class QfTypeMismatch(DomainError):
    def __init__(self, mismatch: TypeMismatch):
        self.mismatch = mismatch
        super().__init__(
            f"quantifier-free types differ on combination {mismatch.pattern}: "
            f"{mismatch.left} vs {mismatch.right}")


def qf_type_mismatch(eta1: FiniteIET, b: Sequence[IntervalEvent], eta2: FiniteIET,
                     d: Sequence[IntervalEvent], n: int) -> Optional[TypeMismatch]:
    """First sign pattern on which the iterated-image tuples disagree in measure.

    Events are ordered ``η^j(b_i)`` with ``i`` outer and ``j = 0..n`` inner;
    patterns are compared in lexicographic order with ``+`` before ``-``.
    """
    _, left = _orbit_algebra(eta1, n, b)
    _, right = _orbit_algebra(eta2, n, d)
    keys = sorted(set(left) | set(right))
    for sig in keys:
        ml = left[sig].measure() if sig in left else ZERO
        mr = right[sig].measure() if sig in right else ZERO
        if ml != mr:
            return TypeMismatch(sig, ml, mr)
    return None


def conjugacy_with_parameters(c1, c2, b: Sequence[IntervalEvent],
                              d: Sequence[IntervalEvent]) -> FiniteIET:
    """``γ`` with ``γ η1 = η2 γ`` and ``γ(b_i) = d_i`` for every parameter.

    Requires equal periods and equal quantifier-free types of the iterated
    images; a mismatch raises :class:`QfTypeMismatch` naming the first
    failing combination.
    """
    eta1, eta2 = _as_iet(c1), _as_iet(c2)
    p1 = c1.period if isinstance(c1, CycleCertificate) else global_period(eta1)
    p2 = c2.period if isinstance(c2, CycleCertificate) else global_period(eta2)
    if p1 != p2:
        raise DomainError(f"periods differ: {p1} vs {p2}")
    if len(b) != len(d):
        raise DomainError("parameter tuples differ in length")
    n = p1 - 1
    bad = qf_type_mismatch(eta1, b, eta2, d, n)
    if bad is not None:
        raise QfTypeMismatch(bad)
    if eta1 == eta2:
        # Powers of η commute with it; use one when it already moves b onto d.
        power = FiniteIET.identity()
        for _ in range(p1):
            if all(power.image(x) == y for x, y in zip(b, d)):
                return power
            power = power.then(eta1)
    a = independent_periodic_partition(eta1, n, b)
    c = independent_periodic_partition(eta2, n, d)
    _, left = _orbit_algebra(eta1, n, b)
    _, right = _orbit_algebra(eta2, n, d)
    pairs = [(a & left[sig], c & right[sig]) for sig in sorted(left)]
    pairs.append((~a, ~c))
    gamma0 = from_event_map(pairs)
    gamma = extend_along_cycle(eta1, eta2, p1, a, gamma0)
    ok = check_conjugacy(gamma, eta1, eta2) and all(
        gamma.image(x) == y for x, y in zip(b, d))
    if not ok:
        raise DomainError("conjugacy equations failed")
    return gamma


# ---------------------------------------------------------------------------
# Atomic part


@dataclass(frozen=True)
class AtomicPart:
    """A permutation of finitely many weighted atoms, kept symbolically.

    ``cycles`` lists ``(weight, length)`` for every cycle of atoms (all
    atoms on a cycle share the weight).
    """

    cycles: tuple[tuple[Fraction, int], ...]

    def isomorphic(self, other: "AtomicPart") -> bool:
        return sorted(self.cycles) == sorted(other.cycles)
