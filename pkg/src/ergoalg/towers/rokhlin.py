"""Rokhlin towers: a base whose first n images are disjoint and nearly fill the space."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Optional

from ..config import Budget, resolve_budget
from ..errors import BudgetExceeded, DomainError
from ..measure import diagram as dd
from ..measure.carriers import CylinderCarrier, ProductCarrier
from ..measure.cylinders import CylinderEvent
from ..measure.intervals import IntervalEvent, _merge
from ..measure.rectangles import RectEvent
from ..transformations.base import System, Transformation
from ..transformations.odometer import OdometerMap
from ..transformations.shift import BernoulliShift
from ..transformations.symbolic import (
    Conjugate, Inverse, fixed_set, is_certified_aperiodic, iterate_image,
    orbit, shift_power, split_product,
)


@dataclass(frozen=True)
class Tower:
    """Levels ``base, T base, ..., T^{n-1} base`` and the uncovered measure.

    The constructor checks the measure bookkeeping; :meth:`from_base`
    additionally proves disjointness, and :meth:`verify` re-checks it from
    the levels alone.
    """

    base: object
    height: int
    levels: tuple
    residual: Fraction

    def __post_init__(self):
        if self.height < 1 or len(self.levels) != self.height:
            raise DomainError("tower height does not match its levels")
        if self.levels[0] != self.base:
            raise DomainError("first level must be the base")
        m = self.base.measure()
        if any(lev.measure() != m for lev in self.levels):
            raise DomainError("tower levels differ in measure")
        if Fraction(self.residual) != 1 - self.height * m or self.residual < 0:
            raise DomainError("residual does not match the levels")

    @classmethod
    def from_base(cls, T: Transformation, base, n: int) -> "Tower":
        levels = tuple(orbit(T, base, n))
        # T^i E and T^j E meet exactly where T^i(E ∩ T^{j-i} E) does, so
        # disjointness from the base suffices.
        for j in range(1, n):
            if not (base & levels[j]).is_empty:
                raise DomainError(f"level {j} meets the base")
        return cls(base, n, levels, 1 - n * base.measure())

    def union(self):
        out = self.base.carrier.empty()
        for lev in self.levels:
            out = out | lev
        return out

    def verify(self) -> bool:
        """Pairwise disjointness and residual, recomputed from the levels."""
        return self.union().measure() == 1 - self.residual == self.height * self.base.measure()


def rokhlin_tower(S: System | Transformation, n: int, eps, budget: Optional[Budget] = None) -> Tower:
    """A tower of height ``n`` with residual measure strictly below ``eps``."""
    T = S.transformation if isinstance(S, System) else S
    eps = Fraction(eps)
    if n < 1:
        raise DomainError("tower height must be positive")
    if eps <= 0:
        raise DomainError("eps must be positive")
    budget = resolve_budget(budget)
    base = tower_base(T, n, eps, budget)
    return Tower.from_base(T, base, n)


def tower_base(T: Transformation, n: int, eps: Fraction, budget: Budget):
    if n == 1:
        return T.carrier.full()
    if isinstance(T, OdometerMap):
        return odometer_base(T, n, eps, budget)
    if isinstance(T, BernoulliShift) or (isinstance(T.carrier, CylinderCarrier)
                                         and shift_power(T) not in (None, 0)):
        k = T.power if isinstance(T, BernoulliShift) else shift_power(T)
        return bernoulli_base(T.carrier, n, eps, budget, k)
    if isinstance(T, Inverse):
        inner = tower_base(T.inner, n, eps, budget)
        return iterate_image(T.inner, n - 1, inner)
    if isinstance(T, Conjugate) and is_certified_aperiodic(T.inner):
        return T.by.preimage(tower_base(T.inner, n, eps, budget))
    if isinstance(T.carrier, ProductCarrier):
        parts = split_product(T)
        if parts is not None:
            left, right = parts
            if is_certified_aperiodic(left):
                return RectEvent.rectangle(tower_base(left, n, eps, budget), right.carrier.full())
            if is_certified_aperiodic(right):
                return RectEvent.rectangle(left.carrier.full(), tower_base(right, n, eps, budget))
    if not is_certified_aperiodic(T):
        try:
            fixed = fixed_set(T, 1)
        except DomainError:
            fixed = None
        if fixed is not None:
            raise DomainError("map has a periodic part; decompose it first")
    raise DomainError(f"no tower construction for {type(T).__name__}")


# ---------------------------------------------------------------------------
# Odometer


def digit_reverse(m: int, p: int, K: int) -> int:
    out = 0
    for _ in range(K):
        m, d = divmod(m, p)
        out = out * p + d
    return out


def odometer_level(p: int, K: int, m: int) -> tuple[Fraction, Fraction]:
    """The ``m``-th image of ``[0, p^-K)``: the cell of the digit-reversed index."""
    delta = Fraction(1, p ** K)
    r = digit_reverse(m, p, K)
    return r * delta, (r + 1) * delta


def _power_of(n: int, p: int) -> Optional[int]:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def odometer_base(odo: OdometerMap, n: int, eps: Fraction,
                  budget: Optional[Budget] = None) -> IntervalEvent:
    """Regroup an exact height-``p^K`` tower into blocks of ``n`` levels.

    When ``n`` is a power of ``p`` the tower is exact; otherwise ``K`` is
    the least exponent with ``p^K >= n * ceil(1/eps)``, which leaves at most
    ``n - 1`` of ``p^K`` levels uncovered.
    """
    p = odo.base
    k = _power_of(n, p)
    if k is not None:
        K = k
    else:
        need = n * ceil(1 / eps)
        K = 1
        while p ** K < need:
            K += 1
    H = p ** K
    if H > resolve_budget(budget).tower_window:
        raise BudgetExceeded(f"odometer tower needs {H} cells; raise the budget or eps")
    blocks = H // n
    return IntervalEvent(_merge([odometer_level(p, K, b * n) for b in range(blocks)], check=False))


# ---------------------------------------------------------------------------
# Bernoulli shift


def _overlaps_itself(word: tuple[int, ...]) -> bool:
    return any(word[:k] == word[-k:] for k in range(1, len(word)))


def marker_word(probs, L: int) -> tuple[int, ...]:
    """Least likely marker of length ``L`` that cannot overlap a shifted copy.

    Ties are broken lexicographically. Every ``L >= 2`` admits such a word
    (the least likely symbol repeated, then one other symbol).
    """
    if L == 1:
        return (min(range(len(probs)), key=lambda s: (probs[s], s)),)
    order = sorted(range(len(probs)), key=lambda s: (probs[s], s))
    lo, nxt = order[0], order[1]
    best = None
    # Candidates: lexicographic enumeration is too large, so search the
    # words built from the two least likely symbols, which contain the
    # optimum among non-self-overlapping words.
    syms = sorted((lo, nxt))
    for mask in range(2 ** L):
        w = tuple(syms[(mask >> (L - 1 - i)) & 1] for i in range(L))
        if _overlaps_itself(w):
            continue
        prob = Fraction(1)
        for s in w:
            prob *= probs[s]
        key = (prob, w)
        if best is None or key < best:
            best = key
    return best[1]


def _kmp_table(word: tuple[int, ...], alphabet: int) -> list[list[int]]:
    L = len(word)
    fail = [0] * (L + 1)
    k = 0
    for i in range(1, L):
        while k and word[i] != word[k]:
            k = fail[k]
        if word[i] == word[k]:
            k += 1
        fail[i + 1] = k
    table = []
    for state in range(L):
        row = []
        for sym in range(alphabet):
            k = state
            while k and word[k] != sym:
                k = fail[k]
            row.append(k + 1 if word[k] == sym else 0)
        table.append(row)
    return table


def marker_base(carrier: CylinderCarrier, n: int, word: tuple[int, ...], R: int) -> CylinderEvent:
    """Points whose next marker occurrence starts at ``s`` with ``s ≡ 0 (mod n)``.

    Precisely: no occurrence of ``word`` starts at coordinates
    ``-(n-1)..-1``, and the first one starting at a coordinate ``>= 0``
    starts at some ``s <= R`` with ``n | s``. Shifting by ``0 < j < n``
    moves the residue of ``s``, so the first ``n`` images are disjoint.
    """
    L = len(word)
    table = _kmp_table(word, carrier.alphabet_size)
    first = -(n - 1)
    width = (n - 1) + R + L

    def step(state, pos, sym):
        nxt = table[state][sym]
        if nxt < L:
            return nxt
        start = first + pos - L + 1
        if start < 0:
            return False
        return start <= R and start % n == 0

    rel, node = dd.from_automaton(0, width, carrier.alphabet_size, step, lambda s: False)
    return CylinderEvent.from_ref(carrier, (first + rel, node))


def bernoulli_base(carrier: CylinderCarrier, n: int, eps: Fraction, budget: Budget,
                   power: int = 1) -> CylinderEvent:
    """Search marker length and look-ahead until ``1 - n m(E) < eps``."""
    probs = carrier.probs
    L = 1
    while True:
        word = marker_word(probs, L)
        pw = Fraction(1)
        for s in word:
            pw *= probs[s]
        start = max(n, ceil(1 / pw))
        R = start
        while (n - 1) + R + L <= budget.tower_window:
            base = marker_base(carrier, n, word, R)
            if 1 - n * base.measure() < eps:
                return _scale(base, power, n) if power != 1 else base
            if R >= 16 * start:
                break
            R *= 2
        if (n - 1) + start + L + 1 > budget.tower_window:
            raise BudgetExceeded(
                f"no marker tower of height {n} with residual below {eps} "
                f"within a window of {budget.tower_window} coordinates")
        L += 1


def _scale(base: CylinderEvent, power: int, n: int) -> CylinderEvent:
    if power == -1:
        return base.shifted(n - 1)
    raise DomainError("towers for shift powers other than ±1 are not supported")
