"""Finite unions of half-open rational intervals in [0, 1).

An :class:`IntervalEvent` is the canonical representative of a measure
class: its intervals are sorted, non-empty and separated by gaps, so two
events agree up to a null set exactly when their tuples are equal.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..errors import DomainError
from .carriers import INTERVAL

ZERO = Fraction(0)
ONE = Fraction(1)

Interval = tuple[Fraction, Fraction]


def _merge(raw: Iterable[tuple], check: bool = True) -> tuple[Interval, ...]:
    items = []
    for pair in raw:
        try:
            lo, hi = pair
        except (TypeError, ValueError):
            raise DomainError(f"interval must be a (lo, hi) pair, got {pair!r}")
        lo, hi = Fraction(lo), Fraction(hi)
        if check:
            if not (ZERO <= lo <= ONE and ZERO <= hi <= ONE):
                raise DomainError(f"endpoint outside [0, 1]: [{lo}, {hi})")
            if lo > hi:
                raise DomainError(f"interval with lo > hi: [{lo}, {hi})")
        if lo < hi:
            items.append((lo, hi))
    items.sort()
    out: list[list[Fraction]] = []
    for lo, hi in items:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


@dataclass(frozen=True)
class IntervalEvent:
    intervals: tuple[Interval, ...] = ()

    carrier = INTERVAL

    def __post_init__(self):
        ivs = self.intervals
        for k, (lo, hi) in enumerate(ivs):
            if not (ZERO <= lo < hi <= ONE):
                raise DomainError(f"non-canonical interval [{lo}, {hi})")
            if k and not ivs[k - 1][1] < lo:
                raise DomainError("intervals must be sorted and non-adjacent")

    # -- construction -------------------------------------------------
    @classmethod
    def from_intervals(cls, raw: Iterable[tuple]) -> "IntervalEvent":
        """Normalize an arbitrary list of ``(lo, hi)`` pairs."""
        return cls(_merge(raw))

    @classmethod
    def full(cls) -> "IntervalEvent":
        return _FULL

    @classmethod
    def empty(cls) -> "IntervalEvent":
        return _EMPTY

    @classmethod
    def interval(cls, lo, hi) -> "IntervalEvent":
        return cls.from_intervals([(lo, hi)])

    # -- queries --------------------------------------------------------
    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_full(self) -> bool:
        return self.intervals == ((ZERO, ONE),)

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.intervals), ZERO)

    def endpoints(self) -> list[Fraction]:
        return [x for iv in self.intervals for x in iv]

    def contains_point(self, x) -> bool:
        x = Fraction(x)
        k = bisect_right(self.intervals, (x, ONE + 1)) - 1
        return k >= 0 and self.intervals[k][0] <= x < self.intervals[k][1]

    def key(self):
        return ("interval", self.endpoints())

    # -- boolean algebra ----------------------------------------------
    def _combine(self, other: "IntervalEvent", keep) -> "IntervalEvent":
        if not isinstance(other, IntervalEvent):
            from ..errors import CarrierMismatch
            raise CarrierMismatch(f"interval event vs {type(other).__name__}")
        cuts = sorted({ZERO, ONE, *self.endpoints(), *other.endpoints()})
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        for lo, hi in zip(cuts, cuts[1:]):
            while i < len(a) and a[i][1] <= lo:
                i += 1
            while j < len(b) and b[j][1] <= lo:
                j += 1
            in_a = i < len(a) and a[i][0] <= lo
            in_b = j < len(b) and b[j][0] <= lo
            if keep(in_a, in_b):
                out.append((lo, hi))
        return IntervalEvent(_merge(out, check=False))

    def __or__(self, other):
        return self._combine(other, lambda x, y: x or y)

    def __and__(self, other):
        return self._combine(other, lambda x, y: x and y)

    def __xor__(self, other):
        return self._combine(other, lambda x, y: x != y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x and not y)

    def __invert__(self):
        out = []
        prev = ZERO
        for lo, hi in self.intervals:
            if lo > prev:
                out.append((prev, lo))
            prev = hi
        if prev < ONE:
            out.append((prev, ONE))
        return IntervalEvent(tuple(out))

    def translate(self, offset) -> "IntervalEvent":
        offset = Fraction(offset)
        return IntervalEvent.from_intervals((lo + offset, hi + offset)
                                            for lo, hi in self.intervals)

    def leftmost(self, amount) -> "IntervalEvent":
        """The leftmost sub-event of the given measure."""
        amount = Fraction(amount)
        if not ZERO <= amount <= self.measure():
            raise DomainError(f"cannot take measure {amount} from {self}")
        out = []
        for lo, hi in self.intervals:
            if amount <= 0:
                break
            take = min(amount, hi - lo)
            out.append((lo, lo + take))
            amount -= take
        return IntervalEvent(_merge(out, check=False))

    def split(self, weights) -> list["IntervalEvent"]:
        """Cut the event left to right into consecutive pieces of the given measures."""
        weights = [Fraction(w) for w in weights]
        if sum(weights) != self.measure():
            raise DomainError("split weights must add up to the event's measure")
        pieces, rest = [], self
        for w in weights:
            piece = rest.leftmost(w)
            pieces.append(piece)
            rest = rest - piece
        return pieces

    def __repr__(self):
        if not self.intervals:
            return "IntervalEvent(∅)"
        body = "∪".join(f"[{lo},{hi})" for lo, hi in self.intervals)
        return f"IntervalEvent({body})"


_FULL = IntervalEvent(((ZERO, ONE),))
_EMPTY = IntervalEvent(())
