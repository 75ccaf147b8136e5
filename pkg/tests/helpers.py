"""Random instance generators and brute-force oracles shared by the tests.

Interval events are drawn as unions of cells ``[j/D, (j+1)/D)``; the grid
oracle represents them as sets of cell indices. Cylinder events are drawn as
word sets over a fixed window; the word oracle sums word probabilities.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import prod

from hypothesis import strategies as st

from ergoalg.measure import (
    CylinderCarrier, CylinderEvent, FiniteAlgebra, IntervalEvent, generated_algebra,
)
from ergoalg.transformations import FiniteIET

F = Fraction
I = IntervalEvent.interval


# ---------------------------------------------------------------------------
# Interval events on a grid


def from_cells(cells, D: int) -> IntervalEvent:
    return IntervalEvent.from_intervals([(F(j, D), F(j + 1, D)) for j in cells])


def to_cells(event: IntervalEvent, D: int) -> frozenset[int]:
    """Cells of the grid covered by ``event`` (endpoints must lie on the grid)."""
    out = set()
    for lo, hi in event.intervals:
        a, b = lo * D, hi * D
        assert a.denominator == 1 and b.denominator == 1, "endpoint off the grid"
        out.update(range(int(a), int(b)))
    return frozenset(out)


def rand_cells(rng: random.Random, D: int) -> frozenset[int]:
    p = rng.random()
    return frozenset(j for j in range(D) if rng.random() < p)


def rand_interval_event(rng: random.Random, D: int) -> IntervalEvent:
    return from_cells(rand_cells(rng, D), D)


def rand_interval_algebra(rng: random.Random, D: int, k: int) -> FiniteAlgebra:
    return generated_algebra([rand_interval_event(rng, D) for _ in range(k)])


def rand_partition(rng: random.Random, n: int, D: int, allow_empty=True) -> list[IntervalEvent]:
    labels = [rng.randrange(n) for _ in range(D)]
    parts = [from_cells([j for j in range(D) if labels[j] == i], D) for i in range(n)]
    if not allow_empty and any(p.is_empty for p in parts):
        return rand_partition(rng, n, D, allow_empty)
    return parts


def digit_event(p: int, position: int, digits) -> IntervalEvent:
    """Points whose base-``p`` digit at ``position`` (1 = most significant) lies in ``digits``."""
    D = p ** position
    return from_cells([j for j in range(D) if j % p in digits], D)


cells_strategy = st.frozensets(st.integers(0, 23), max_size=24)


@st.composite
def interval_events(draw, D: int = 24):
    return from_cells(draw(st.frozensets(st.integers(0, D - 1), max_size=D)), D)


@st.composite
def rational_events(draw, max_den: int = 12, max_pieces: int = 4):
    """Unions of intervals with arbitrary small-denominator endpoints."""
    pts = draw(st.lists(st.fractions(0, 1, max_denominator=max_den), max_size=2 * max_pieces))
    pts = sorted(set(pts))
    pairs = [(pts[i], pts[i + 1]) for i in range(0, len(pts) - 1, 2)]
    return IntervalEvent.from_intervals(pairs)


# ---------------------------------------------------------------------------
# Cylinder events as word sets


def word_prob(word, probs) -> Fraction:
    return prod((probs[s] for s in word), start=F(1))


def all_words(alphabet: int, width: int):
    return list(itertools.product(range(alphabet), repeat=width))


def rand_words(rng: random.Random, alphabet: int, width: int) -> frozenset:
    p = rng.random()
    return frozenset(w for w in all_words(alphabet, width) if rng.random() < p)


def cylinder(carrier: CylinderCarrier, lo: int, words, width: int) -> CylinderEvent:
    return CylinderEvent.from_words(carrier, (lo, lo + width - 1), words)


def rand_cylinder_algebra(rng: random.Random, carrier: CylinderCarrier, width: int,
                          k: int) -> FiniteAlgebra:
    events = [cylinder(carrier, 0, rand_words(rng, carrier.alphabet_size, width), width)
              for _ in range(k)]
    return generated_algebra(events, carrier)


# ---------------------------------------------------------------------------
# Maps


def rand_iet(rng: random.Random, D: int, pieces: int) -> FiniteIET:
    """Cut [0, 1) at grid points and lay the pieces down in a random order."""
    cuts = sorted(rng.sample(range(1, D), pieces - 1)) if pieces > 1 else []
    bounds = [0] + cuts + [D]
    segs = [(F(bounds[i], D), F(bounds[i + 1], D)) for i in range(len(bounds) - 1)]
    order = list(range(len(segs)))
    rng.shuffle(order)
    at = F(0)
    out = []
    for i in order:
        lo, hi = segs[i]
        out.append((lo, hi, at - lo))
        at += hi - lo
    return FiniteIET(tuple(out))


def iet_point(iet: FiniteIET, x: Fraction) -> Fraction:
    """Independent point evaluation by scanning the pieces."""
    for lo, hi, c in iet.pieces:
        if lo <= x < hi:
            return x + c
    raise AssertionError("point outside [0, 1)")


def odometer_cell_image(p: int, K: int, j: int):
    """Image of the depth-``K`` cell with index ``j`` under add-one-with-carry.

    The cell index encodes digits ``d_1..d_K`` with ``d_1`` most
    significant in the real number but least significant in the count.
    Returns ``None`` for the all-``(p-1)`` cell, whose image is not a cell.
    """
    digits = [(j // p ** (K - i)) % p for i in range(1, K + 1)]
    carry = 1
    for i in range(K):
        total = digits[i] + carry
        digits[i], carry = total % p, total // p
    if carry:
        return None
    return sum(d * p ** (K - 1 - i) for i, d in enumerate(digits))
