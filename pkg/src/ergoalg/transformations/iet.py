"""Interval exchange transformations with rational data."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..errors import DomainError
from ..measure.carriers import INTERVAL
from ..measure.intervals import IntervalEvent, _merge
from .base import Transformation

ZERO = Fraction(0)
ONE = Fraction(1)

Piece = tuple[Fraction, Fraction, Fraction]  # source [lo, hi) translated by offset


def _canonical(pieces: Iterable[tuple]) -> tuple[Piece, ...]:
    items = sorted((Fraction(lo), Fraction(hi), Fraction(off)) for lo, hi, off in pieces)
    out: list[list[Fraction]] = []
    for lo, hi, off in items:
        if lo >= hi:
            continue
        if out and out[-1][1] == lo and out[-1][2] == off:
            out[-1][1] = hi
        else:
            out.append([lo, hi, off])
    return tuple((lo, hi, off) for lo, hi, off in out)


def _tiles(intervals: list[tuple[Fraction, Fraction]]) -> bool:
    intervals = sorted(intervals)
    at = ZERO
    for lo, hi in intervals:
        if lo != at:
            return False
        at = hi
    return at == ONE


@dataclass(frozen=True)
class FiniteIET(Transformation):
    """A piecewise translation of [0, 1) with finitely many pieces.

    Pieces are stored as ``(lo, hi, offset)`` sorted by ``lo``; adjacent
    pieces with equal offsets are merged, so two IETs agree almost
    everywhere exactly when their piece tuples are equal.
    """

    pieces: tuple[Piece, ...]

    def __post_init__(self):
        pieces = _canonical(self.pieces)
        object.__setattr__(self, "pieces", pieces)
        if not _tiles([(lo, hi) for lo, hi, _ in pieces]):
            raise DomainError("IET sources must tile [0, 1)")
        if not _tiles([(lo + c, hi + c) for lo, hi, c in pieces]):
            raise DomainError("IET images must tile [0, 1)")
        object.__setattr__(self, "_starts", [lo for lo, _, _ in pieces])

    # -- construction -------------------------------------------------
    @classmethod
    def from_pieces(cls, pieces: Iterable[tuple]) -> "FiniteIET":
        """Build from ``((lo, hi), offset)`` pairs or ``(lo, hi, offset)`` triples."""
        flat = []
        for p in pieces:
            if len(p) == 2:
                (lo, hi), off = p
            else:
                lo, hi, off = p
            flat.append((lo, hi, off))
        return cls(tuple(flat))

    @classmethod
    def identity(cls) -> "FiniteIET":
        return cls(((ZERO, ONE, ZERO),))

    @classmethod
    def rotation(cls, r) -> "FiniteIET":
        """``x -> x + r mod 1`` for rational ``r``."""
        r = Fraction(r) % 1
        if r == 0:
            return cls.identity()
        return cls(((ZERO, 1 - r, r), (1 - r, ONE, r - 1)))

    @property
    def carrier(self):
        return INTERVAL

    @property
    def is_identity(self) -> bool:
        return self.pieces == ((ZERO, ONE, ZERO),)

    def breakpoints(self) -> list[Fraction]:
        return [lo for lo, _, _ in self.pieces] + [ONE]

    def image_breakpoints(self) -> list[Fraction]:
        return sorted({lo + c for lo, _, c in self.pieces} | {ONE})

    # -- points -------------------------------------------------------
    def piece_at(self, x) -> Piece:
        x = Fraction(x)
        if not ZERO <= x < ONE:
            raise DomainError(f"point {x} outside [0, 1)")
        return self.pieces[bisect_right(self._starts, x) - 1]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        return x + self.piece_at(x)[2]

    # -- events -------------------------------------------------------
    def _push(self, pieces, starts, a: IntervalEvent) -> IntervalEvent:
        out = []
        for lo, hi in a.intervals:
            k = bisect_right(starts, lo) - 1
            while k < len(pieces) and pieces[k][0] < hi:
                plo, phi, off = pieces[k]
                u, v = max(lo, plo), min(hi, phi)
                if u < v:
                    out.append((u + off, v + off))
                k += 1
        return IntervalEvent(_merge(out, check=False))

    def image(self, a: IntervalEvent) -> IntervalEvent:
        self.check_event(a)
        return self._push(self.pieces, self._starts, a)

    def preimage(self, a: IntervalEvent) -> IntervalEvent:
        self.check_event(a)
        inv = self.inverse()
        return inv._push(inv.pieces, inv._starts, a)

    # -- algebra of maps ---------------------------------------------
    def inverse(self) -> "FiniteIET":
        return FiniteIET(tuple((lo + c, hi + c, -c) for lo, hi, c in self.pieces))

    def then(self, outer: "FiniteIET") -> "FiniteIET":
        """The composition ``outer ∘ self``."""
        return compose(outer, self)

    def power(self, k: int) -> "FiniteIET":
        if k < 0:
            return self.inverse().power(-k)
        result, base = FiniteIET.identity(), self
        while k:
            if k & 1:
                result = compose(base, result)
            base = compose(base, base)
            k >>= 1
        return result

    def fixed_set(self, i: int = 1) -> IntervalEvent:
        """Exact event ``{x : T^i x = x}``."""
        if i < 1:
            raise DomainError("fixed_set needs a positive exponent")
        p = self.power(i)
        return IntervalEvent(_merge([(lo, hi) for lo, hi, c in p.pieces if c == 0], check=False))

    def restrict_offsets(self) -> dict[Fraction, IntervalEvent]:
        """Source region of each offset."""
        out: dict[Fraction, list] = {}
        for lo, hi, c in self.pieces:
            out.setdefault(c, []).append((lo, hi))
        return {c: IntervalEvent(_merge(v, check=False)) for c, v in out.items()}

    def __repr__(self):
        body = ", ".join(f"[{lo},{hi}){'+' if c >= 0 else ''}{c}" for lo, hi, c in self.pieces)
        return f"FiniteIET({body})"


def compose(outer: FiniteIET, inner: FiniteIET) -> FiniteIET:
    """``outer ∘ inner`` as a canonical IET."""
    out = []
    starts = outer._starts
    for lo, hi, c in inner.pieces:
        u, v = lo + c, hi + c
        k = bisect_right(starts, u) - 1
        while k < len(outer.pieces) and outer.pieces[k][0] < v:
            plo, phi, d = outer.pieces[k]
            s, t = max(u, plo), min(v, phi)
            if s < t:
                out.append((s - c, t - c, c + d))
            k += 1
    return FiniteIET(tuple(out))


def from_event_map(parts: Iterable[tuple[IntervalEvent, IntervalEvent]]) -> FiniteIET:
    """Glue order-preserving translations sending each source to its target.

    Each pair must consist of events of equal measure; mass is matched left
    to right, so the result is a piecewise translation.
    """
    pieces = []
    for src, dst in parts:
        if src.measure() != dst.measure():
            raise DomainError("paired events must have equal measure")
        pieces.extend(_match(src, dst))
    return FiniteIET(tuple(pieces))


def _match(src: IntervalEvent, dst: IntervalEvent) -> list[Piece]:
    a, b = list(src.intervals), list(dst.intervals)
    out = []
    i = j = 0
    pa = a[0][0] if a else ZERO
    pb = b[0][0] if b else ZERO
    while i < len(a) and j < len(b):
        take = min(a[i][1] - pa, b[j][1] - pb)
        out.append((pa, pa + take, pb - pa))
        pa += take
        pb += take
        if pa == a[i][1]:
            i += 1
            if i < len(a):
                pa = a[i][0]
        if pb == b[j][1]:
            j += 1
            if j < len(b):
                pb = b[j][0]
    return out
