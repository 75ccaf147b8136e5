"""Finite unions of measurable rectangles in a product space.

The canonical form groups the left factor by section: each rectangle's
left component is the exact set of left points whose vertical section is
its right component. Left components are then pairwise disjoint, right
components pairwise distinct and non-empty, and the representation of a
measure class is unique.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from ..errors import CarrierMismatch
from .carriers import ProductCarrier


def _refine(events) -> list:
    """Atoms of the partition generated by ``events`` inside their carrier."""
    atoms = [events[0].carrier.full()] if events else []
    for e in events:
        nxt = []
        for atom in atoms:
            inside, outside = atom & e, atom - e
            if not inside.is_empty:
                nxt.append(inside)
            if not outside.is_empty:
                nxt.append(outside)
        atoms = nxt
    return atoms


@dataclass(frozen=True)
class RectEvent:
    carrier: ProductCarrier
    rectangles: frozenset  # of (left, right) pairs

    # -- construction -------------------------------------------------
    @classmethod
    def from_rectangles(cls, carrier: ProductCarrier, rects: Iterable[tuple]) -> "RectEvent":
        rects = [(l, r) for l, r in rects]
        for l, r in rects:
            if l.carrier != carrier.left or r.carrier != carrier.right:
                raise CarrierMismatch("rectangle factors do not match the product carrier")
        lefts = [l for l, _ in rects]
        if not lefts:
            return cls.empty(carrier)
        sections = {}
        for atom in _refine(lefts):
            section = carrier.right.empty()
            for l, r in rects:
                if not (atom & l).is_empty:
                    section = section | r
            sections[atom] = section
        return cls._group(carrier, sections.items())

    @classmethod
    def _group(cls, carrier, pieces) -> "RectEvent":
        by_section: dict = {}
        for left, right in pieces:
            if right.is_empty or left.is_empty:
                continue
            prev = by_section.get(right)
            by_section[right] = left if prev is None else prev | left
        return cls(carrier, frozenset((l, r) for r, l in by_section.items()))

    @classmethod
    def full(cls, carrier: ProductCarrier) -> "RectEvent":
        return cls(carrier, frozenset([(carrier.left.full(), carrier.right.full())]))

    @classmethod
    def empty(cls, carrier: ProductCarrier) -> "RectEvent":
        return cls(carrier, frozenset())

    @classmethod
    def rectangle(cls, left, right) -> "RectEvent":
        return cls.from_rectangles(ProductCarrier(left.carrier, right.carrier), [(left, right)])

    # -- queries --------------------------------------------------------
    @property
    def is_empty(self) -> bool:
        return not self.rectangles

    @property
    def is_full(self) -> bool:
        return self == RectEvent.full(self.carrier)

    def measure(self) -> Fraction:
        return sum((l.measure() * r.measure() for l, r in self.rectangles), Fraction(0))

    def sorted_rectangles(self) -> list[tuple]:
        return sorted(self.rectangles, key=lambda lr: (repr(lr[0].key()), repr(lr[1].key())))

    def key(self):
        return ("product", tuple((l.key(), r.key()) for l, r in self.sorted_rectangles()))

    # -- boolean algebra ----------------------------------------------
    def _combine(self, other, fn: Callable) -> "RectEvent":
        if not isinstance(other, RectEvent) or other.carrier != self.carrier:
            raise CarrierMismatch(f"product event vs {getattr(other, 'carrier', other)}")
        lefts = [l for l, _ in self.rectangles] + [l for l, _ in other.rectangles]
        right_empty = self.carrier.right.empty()
        pieces = []
        for atom in _refine(lefts):
            sa = next((r for l, r in self.rectangles if not (atom & l).is_empty), right_empty)
            sb = next((r for l, r in other.rectangles if not (atom & l).is_empty), right_empty)
            pieces.append((atom, fn(sa, sb)))
        return RectEvent._group(self.carrier, pieces)

    def __and__(self, other):
        return self._combine(other, lambda x, y: x & y)

    def __or__(self, other):
        return self._combine(other, lambda x, y: x | y)

    def __xor__(self, other):
        return self._combine(other, lambda x, y: x ^ y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def __invert__(self):
        return RectEvent.full(self.carrier) - self

    def map_components(self, left_fn, right_fn) -> "RectEvent":
        """Apply bijective event maps factor-wise; the result stays canonical."""
        return RectEvent.from_rectangles(
            self.carrier, [(left_fn(l), right_fn(r)) for l, r in self.rectangles])

    def __repr__(self):
        if not self.rectangles:
            return "RectEvent(∅)"
        return "RectEvent(" + " ∪ ".join(f"{l!r}×{r!r}" for l, r in self.sorted_rectangles()) + ")"


def product_event(left, right) -> RectEvent:
    """The single rectangle ``left × right``."""
    return RectEvent.rectangle(left, right)
