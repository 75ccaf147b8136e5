"""Conditional entropy, entropy sequences of a map, transformal independence."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath

from .config import Budget, resolve_budget
from .errors import CarrierMismatch, DomainError
from .measure.algebra import FiniteAlgebra, join
from .transformations.base import System, Transformation
from .transformations.symbolic import map_event

ZERO = Fraction(0)


@dataclass(frozen=True)
class EntropyValue:
    """``H(A/C)`` with the exact cell probabilities it was computed from.

    ``cells`` holds ``(m(a ∩ c), m(c))`` for every non-null cell.
    """

    value: mpmath.mpf
    cells: tuple[tuple[Fraction, Fraction], ...] = field(repr=False)
    precision: int = 53

    @property
    def exact_probs(self) -> tuple[Fraction, ...]:
        return tuple(j for j, _ in self.cells)

    @property
    def given_probs(self) -> tuple[Fraction, ...]:
        return tuple(sorted(set(g for _, g in self.cells)))

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    @property
    def is_exact_zero(self) -> bool:
        """Every cell fills its conditioning atom, so the value is 0 with no rounding."""
        return all(j == g for j, g in self.cells)

    def __float__(self) -> float:
        return float(self.value)

    def decimal(self, digits: Optional[int] = None) -> str:
        if digits is None:
            digits = max(1, int(self.precision * 0.30103))
        return mpmath.nstr(self.value, digits, strip_zeros=False)


def _xlogx_sum(cells, precision: int) -> mpmath.mpf:
    with mpmath.workprec(precision + 16):
        total = mpmath.mpf(0)
        for j, g in cells:
            if j != g:
                r = j / g
                total -= mpmath.mpf(j.numerator) / j.denominator * mpmath.log(
                    mpmath.mpf(r.numerator) / r.denominator)
    with mpmath.workprec(precision):
        return +total


def _algebra(A) -> FiniteAlgebra:
    return A if isinstance(A, FiniteAlgebra) else FiniteAlgebra(tuple(A))


def entropy(A: FiniteAlgebra, C: Optional[FiniteAlgebra] = None,
            precision: int = 53) -> EntropyValue:
    """``H(A/C) = -Σ_c Σ_i m(a_i ∩ c) ln(m(a_i ∩ c)/m(c))``, with ``0 ln 0 = 0``.

    Probabilities are exact; only the logarithms are rounded, at the
    requested binary precision.
    """
    A = _algebra(A)
    C = FiniteAlgebra.trivial(A.carrier) if C is None else _algebra(C)
    if A.carrier != C.carrier:
        raise CarrierMismatch(f"{A.carrier} vs {C.carrier}")
    if precision < 53:
        raise DomainError("precision must be at least 53 bits")
    cells = []
    for c in C.atoms:
        mc = c.measure()
        for a in A.atoms:
            mj = (a & c).measure()
            if mj:
                cells.append((mj, mc))
    value = _xlogx_sum(cells, precision)
    return EntropyValue(max(value, mpmath.mpf(0)), tuple(cells), precision)


def pullback(T: Transformation, A: FiniteAlgebra, budget: Optional[Budget] = None) -> FiniteAlgebra:
    """``T⁻¹ A``: the algebra whose atoms are the preimages of the atoms of ``A``."""
    return FiniteAlgebra(tuple(map_event(T, a, "inverse", budget) for a in A.atoms))


def _pasts(T: Transformation, A: FiniteAlgebra, n: int, budget: Budget):
    """Yield ``(k, ⋁_{i<k} T^-i A, ⋁_{1≤i≤k} T^-i A)`` for ``k = 1..n``."""
    joined = A          # ⋁_{i<k} T^-i A
    for k in range(1, n + 1):
        past = pullback(T, joined, budget)
        yield k, joined, past
        joined = join(A, past)


@dataclass(frozen=True)
class EntropySequence:
    cesaro: tuple[EntropyValue, ...]       # (1/k) H(⋁_{i<k} T^-i A)
    conditional: tuple[EntropyValue, ...]  # H(A / ⋁_{1≤i≤k} T^-i A)
    cell_counts: tuple[int, ...]           # atoms of ⋁_{i<k} T^-i A

    def __iter__(self):
        return iter((list(self.cesaro), list(self.conditional)))


def h_sequence(S: System | Transformation, A: FiniteAlgebra, n: int,
               precision: int = 53, budget: Optional[Budget] = None) -> EntropySequence:
    """Cesàro and conditional entropy sequences of ``A`` under the map, ``k = 1..n``."""
    T = S.transformation if isinstance(S, System) else S
    A = _algebra(A)
    if n < 1:
        raise DomainError("n must be positive")
    if A.carrier != T.carrier:
        raise CarrierMismatch(f"{A.carrier} vs {T.carrier}")
    budget = resolve_budget(budget)
    cesaro, conditional, counts = [], [], []
    for k, joined, past in _pasts(T, A, n, budget):
        h = entropy(joined, None, precision)
        with mpmath.workprec(precision):
            cesaro.append(EntropyValue(h.value / k, h.cells, precision))
        conditional.append(entropy(A, past, precision))
        counts.append(len(joined.atoms))
    return EntropySequence(tuple(cesaro), tuple(conditional), tuple(counts))


def is_exactly_independent(A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    """``m(a ∩ b) = m(a) m(b)`` for every pair of atoms."""
    mb = [b.measure() for b in B.atoms]
    for a in A.atoms:
        ma = a.measure()
        for b, m in zip(B.atoms, mb):
            if (a & b).measure() != ma * m:
                return False
    return True


def is_transformally_independent_upto(S: System | Transformation, A: FiniteAlgebra, n: int,
                                      budget: Optional[Budget] = None) -> bool:
    """``A`` is independent of ``⋁_{1≤i≤k} T^-i A`` for every ``k <= n``."""
    T = S.transformation if isinstance(S, System) else S
    A = _algebra(A)
    if n < 1:
        raise DomainError("n must be positive")
    budget = resolve_budget(budget)
    for _, _, past in _pasts(T, A, n, budget):
        if not is_exactly_independent(A, past):
            return False
    return True


@dataclass(frozen=True)
class Definability:
    holds: bool
    path: str  # "exact" or "numeric"
    value: Optional[EntropyValue] = None

    def __bool__(self) -> bool:
        return self.holds


def is_transformally_definable_upto(S: System | Transformation, A: FiniteAlgebra, m: int,
                                    tol=0, precision: int = 53,
                                    budget: Optional[Budget] = None) -> Definability:
    """Whether ``A`` is determined by its past ``⋁_{1≤i≤m} T^-i A``.

    The exact path checks that every atom of ``A`` is a union of atoms of
    the past. When that fails and ``tol > 0`` the numeric path compares
    ``H(A / past)`` with ``tol``.
    """
    T = S.transformation if isinstance(S, System) else S
    A = _algebra(A)
    if m < 1:
        raise DomainError("m must be positive")
    if tol < 0:
        raise DomainError("tol must be non-negative")
    budget = resolve_budget(budget)
    past = None
    for _, _, past in _pasts(T, A, m, budget):
        pass
    if all(past.contains(a) for a in A.atoms):
        return Definability(True, "exact")
    if tol == 0:
        return Definability(False, "exact")
    h = entropy(A, past, precision)
    return Definability(bool(h.value <= tol), "numeric", h)
