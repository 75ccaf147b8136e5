"""Certified enclosures for the uniform distance between two maps.

The distance is the measure of the set where the maps disagree. On the
interval carrier every map is described at a finite depth by a *cover*:
a list of segments tiling [0, 1), each labelled with a translation
offset, an odometer tail, or "unknown". Overlaying two covers gives exact
agreement and disagreement on every segment pair except those touching
an unknown segment; doubling the depth shrinks the unknown part.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from ..config import Budget, resolve_budget
from ..errors import BudgetExceeded, CarrierMismatch, DomainError
from ..measure.carriers import CylinderCarrier, IntervalCarrier, ProductCarrier
from .base import Enclosure, Transformation
from .odometer import OdometerMap
from .symbolic import Compose, Conjugate, Inverse, reduce_to_iet, shift_power, split_product

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class OdoTail:
    """The part of an odometer (or its inverse) beyond digit depth ``depth``."""

    base: int
    depth: int
    inverse: bool


UNKNOWN = "unknown"

Label = Union[Fraction, OdoTail, str]
Segment = tuple[Fraction, Fraction, Label]


def _tidy(segs: list[Segment]) -> list[Segment]:
    segs = sorted((s for s in segs if s[0] < s[1]), key=lambda s: s[0])
    out: list[list] = []
    for lo, hi, lab in segs:
        if out and out[-1][1] == lo and out[-1][2] == lab and not isinstance(lab, OdoTail):
            out[-1][1] = hi
        else:
            out.append([lo, hi, lab])
    return [tuple(s) for s in out]


def _fill_unknown(segs: list[Segment]) -> list[Segment]:
    """Add ``unknown`` segments over every gap of a partial cover."""
    segs = sorted(segs, key=lambda s: s[0])
    out, at = [], ZERO
    for lo, hi, lab in segs:
        if lo > at:
            out.append((at, lo, UNKNOWN))
        out.append((lo, hi, lab))
        at = hi
    if at < ONE:
        out.append((at, ONE, UNKNOWN))
    return _tidy(out)


def _odometer_cover(odo: OdometerMap, depth: int, inv: bool) -> list[Segment]:
    segs = []
    for k in range(1, depth + 1):
        lo, hi, c = odo.piece(k)
        segs.append((lo + c, hi + c, -c) if inv else (lo, hi, c))
    p = Fraction(odo.base)
    tail = (ZERO, p ** -depth) if inv else (ONE - p ** -depth, ONE)
    segs.append((tail[0], tail[1], OdoTail(odo.base, depth, inv)))
    return _tidy(segs)


def _tail_image(lab: OdoTail) -> tuple[Fraction, Fraction]:
    p = Fraction(lab.base)
    if lab.inverse:
        return ONE - p ** -lab.depth, ONE
    return ZERO, p ** -lab.depth


def cover(T: Transformation, depth: int) -> list[Segment]:
    """Segments describing ``T`` on the interval carrier at the given depth."""
    iet = reduce_to_iet(T)
    if iet is not None:
        return [(lo, hi, c) for lo, hi, c in iet.pieces]
    if isinstance(T, OdometerMap):
        return _odometer_cover(T, depth, False)
    if isinstance(T, Inverse):
        if isinstance(T.inner, OdometerMap):
            return _odometer_cover(T.inner, depth, True)
        return _invert(cover(T.inner, depth))
    if isinstance(T, Compose):
        return _compose(cover(T.outer, depth), cover(T.inner, depth))
    if isinstance(T, Conjugate):
        by_iet = reduce_to_iet(T.by)
        if by_iet is not None and by_iet.is_identity:
            return cover(T.inner, depth)
        by = cover(T.by, depth)
        return _compose(_invert(by), _compose(cover(T.inner, depth), by))
    raise DomainError(f"no interval cover for {type(T).__name__}")


def _invert(segs: list[Segment]) -> list[Segment]:
    out = []
    for lo, hi, lab in segs:
        if isinstance(lab, Fraction):
            out.append((lo + lab, hi + lab, -lab))
        elif isinstance(lab, OdoTail):
            u, v = _tail_image(lab)
            out.append((u, v, OdoTail(lab.base, lab.depth, not lab.inverse)))
    return _fill_unknown(out)


def _compose(outer: list[Segment], inner: list[Segment]) -> list[Segment]:
    starts = [s[0] for s in outer]
    out = []
    for lo, hi, c in inner:
        if not isinstance(c, Fraction):
            continue
        u, v = lo + c, hi + c
        k = bisect_right(starts, u) - 1
        while k < len(outer) and outer[k][0] < v:
            plo, phi, d = outer[k]
            s, t = max(u, plo), min(v, phi)
            if s < t and isinstance(d, Fraction):
                out.append((s - c, t - c, c + d))
            k += 1
    return _fill_unknown(out)


def _overlay(a: list[Segment], b: list[Segment]):
    """Yield ``(lo, hi, label_a, label_b)`` over the common refinement."""
    i = j = 0
    at = ZERO
    while i < len(a) and j < len(b):
        hi = min(a[i][1], b[j][1])
        yield at, hi, a[i][2], b[j][2]
        at = hi
        if a[i][1] == hi:
            i += 1
        if b[j][1] == hi:
            j += 1


def _tail_piece(lab: OdoTail, offset: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    """Source of the tail's translation piece with this offset, if any."""
    odo = OdometerMap(lab.base)
    k = odo.offset_depth(offset, lab.inverse)
    if k is None or k <= lab.depth:
        return None
    lo, hi, c = odo.piece(k)
    return (lo + c, hi + c) if lab.inverse else (lo, hi)


def _compare(lo, hi, la: Label, lb: Label) -> tuple[Fraction, Fraction]:
    """``(disagree, unknown)`` measures on one overlay segment."""
    width = hi - lo
    if la == UNKNOWN or lb == UNKNOWN:
        return ZERO, width
    if isinstance(la, Fraction) and isinstance(lb, Fraction):
        return (ZERO if la == lb else width), ZERO
    if isinstance(la, OdoTail) and isinstance(lb, OdoTail):
        if la == lb:
            return ZERO, ZERO
        return ZERO, width
    tail, off = (la, lb) if isinstance(la, OdoTail) else (lb, la)
    piece = _tail_piece(tail, off)
    if piece is None:
        return width, ZERO
    agree = max(ZERO, min(hi, piece[1]) - max(lo, piece[0]))
    return width - agree, ZERO


def interval_enclosure(T1: Transformation, T2: Transformation, depth: int) -> Enclosure:
    disagree = unknown = ZERO
    for lo, hi, la, lb in _overlay(cover(T1, depth), cover(T2, depth)):
        d, u = _compare(lo, hi, la, lb)
        disagree += d
        unknown += u
    return Enclosure(disagree, disagree + unknown)


def _rho_interval(T1, T2, gap: Fraction, budget: Budget) -> Enclosure:
    depth = 1
    while True:
        enc = interval_enclosure(T1, T2, depth)
        if enc.width <= gap:
            return enc
        if depth >= budget.refine_depth:
            raise BudgetExceeded(
                f"distance enclosure still {enc.width} wide at depth {depth}")
        depth = min(2 * depth, budget.refine_depth)


def rho_maps(T1: Transformation, T2: Transformation, gap=Fraction(1, 1 << 20),
             budget: Optional[Budget] = None) -> Enclosure:
    """Enclosure of the measure of ``{x : T1 x != T2 x}`` of width at most ``gap``."""
    gap = Fraction(gap)
    if gap <= 0:
        raise DomainError("gap must be positive")
    budget = resolve_budget(budget)
    if T1.carrier != T2.carrier:
        raise CarrierMismatch(f"{T1.carrier} vs {T2.carrier}")
    carrier = T1.carrier
    if isinstance(carrier, IntervalCarrier):
        return _rho_interval(T1, T2, gap, budget)
    if isinstance(carrier, CylinderCarrier):
        k1, k2 = shift_power(T1), shift_power(T2)
        if k1 is None or k2 is None:
            raise DomainError("cylinder maps must reduce to shift powers")
        # Distinct shift powers disagree off a null set for a non-atomic measure.
        value = ZERO if k1 == k2 else ONE
        return Enclosure(value, value)
    if isinstance(carrier, ProductCarrier):
        s1, s2 = split_product(T1), split_product(T2)
        if s1 is None or s2 is None:
            raise DomainError("product maps must factor componentwise")
        left = rho_maps(s1[0], s2[0], gap / 2, budget)
        right = rho_maps(s1[1], s2[1], gap / 2, budget)
        return Enclosure(1 - (1 - left.lo) * (1 - right.lo), 1 - (1 - left.hi) * (1 - right.hi))
    raise DomainError(f"unsupported carrier {carrier!r}")
