"""The base-p odometer (adding machine) on [0, 1).

A point's base-p digits are read most significant first and the map adds
one to the first digit with carry to the right. Piece ``k`` (first
``k - 1`` digits equal to ``p - 1``, ``k``-th digit smaller) is a
translation; the points whose first ``K`` digits are all ``p - 1`` form
the depth-``K`` tail, which the map sends onto ``[0, p^-K)`` as a block.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..config import Budget, resolve_budget
from ..errors import BudgetExceeded, DomainError
from ..measure.carriers import INTERVAL
from ..measure.intervals import IntervalEvent, _merge
from .base import Transformation

ONE = Fraction(1)


@dataclass(frozen=True)
class OdometerMap(Transformation):
    base: int = 2

    def __post_init__(self):
        if not isinstance(self.base, int) or self.base < 2:
            raise DomainError(f"odometer base must be an integer >= 2, got {self.base!r}")

    @property
    def carrier(self):
        return INTERVAL

    # -- closed forms -------------------------------------------------
    def piece(self, k: int) -> tuple[Fraction, Fraction, Fraction]:
        """Source ``[lo, hi)`` and offset of the ``k``-th translation piece."""
        p = Fraction(self.base)
        lo, hi = 1 - p ** (1 - k), 1 - p ** (-k)
        return lo, hi, -1 + p ** (1 - k) + p ** (-k)

    def image_piece(self, k: int) -> tuple[Fraction, Fraction]:
        p = Fraction(self.base)
        return p ** (-k), p ** (1 - k)

    def offset_depth(self, offset, inverse: bool = False):
        """The piece index whose offset equals ``offset``, or None."""
        c = -Fraction(offset) if inverse else Fraction(offset)
        x = (c + 1) / (self.base + 1)
        if x <= 0 or x.numerator != 1:
            return None
        d, k = x.denominator, 0
        while d % self.base == 0:
            d //= self.base
            k += 1
        return k if d == 1 and k >= 1 else None

    def depth_for(self, a: IntervalEvent, inverse: bool = False,
                  budget: Budget | None = None) -> int:
        """Smallest ``K >= 1`` for which the tail is either inside or outside ``a``."""
        limit = resolve_budget(budget).expansion_digits
        K = 1
        p = self.base
        for x in a.endpoints():
            if inverse:
                if x <= 0:
                    continue
                # need p^-K <= x
                while Fraction(1, p ** K) > x:
                    K += 1
                    if K > limit:
                        raise BudgetExceeded("odometer expansion beyond the digit budget")
            else:
                if x >= 1:
                    continue
                while 1 - Fraction(1, p ** K) < x:
                    K += 1
                    if K > limit:
                        raise BudgetExceeded("odometer expansion beyond the digit budget")
        return K

    # -- points -------------------------------------------------------
    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if not 0 <= x < 1:
            raise DomainError(f"point {x} outside [0, 1)")
        k = 1
        while True:
            lo, hi, c = self.piece(k)
            if x < hi:
                return x + c
            k += 1

    def inverse_point(self, y) -> Fraction:
        y = Fraction(y)
        if not 0 < y < 1:
            if y == 0:
                raise DomainError("0 is the image of the null tail point 1")
            raise DomainError(f"point {y} outside [0, 1)")
        k = 1
        while True:
            lo, hi = self.image_piece(k)
            if y >= lo:
                return y - self.piece(k)[2]
            k += 1

    # -- events -------------------------------------------------------
    def _transport(self, a: IntervalEvent, inverse: bool, budget) -> IntervalEvent:
        K = self.depth_for(a, inverse, budget)
        p = Fraction(self.base)
        out = []
        for k in range(1, K + 1):
            lo, hi, c = self.piece(k)
            if inverse:
                lo, hi, c = lo + c, hi + c, -c
            for u, v in a.intervals:
                s, t = max(u, lo), min(v, hi)
                if s < t:
                    out.append((s + c, t + c))
        tail = (ONE - p ** -K, ONE) if not inverse else (Fraction(0), p ** -K)
        target = (Fraction(0), p ** -K) if not inverse else (ONE - p ** -K, ONE)
        mid = (tail[0] + tail[1]) / 2
        if a.contains_point(mid):
            out.append(target)
        return IntervalEvent(_merge(out, check=False))

    def image(self, a: IntervalEvent, budget: Budget | None = None) -> IntervalEvent:
        self.check_event(a)
        return self._transport(a, False, budget)

    def preimage(self, a: IntervalEvent, budget: Budget | None = None) -> IntervalEvent:
        self.check_event(a)
        return self._transport(a, True, budget)

    def digit_event(self, position: int, digit: int) -> IntervalEvent:
        """``{x : the position-th base-p digit of x equals digit}`` (positions from 1)."""
        p = self.base
        if position < 1 or not 0 <= digit < p:
            raise DomainError("bad digit position or value")
        width = Fraction(1, p ** position)
        return IntervalEvent(_merge(
            [((q * p + digit) * width, (q * p + digit + 1) * width) for q in range(p ** (position - 1))],
            check=False))
