"""Cycle approximation of aperiodic maps and conjugation of cycles."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..config import Budget, resolve_budget
from ..errors import DomainError
from ..measure.intervals import IntervalEvent, _merge
from ..transformations.base import Enclosure, System, Transformation
from ..transformations.distance import rho_maps
from ..transformations.iet import FiniteIET, compose
from ..transformations.odometer import OdometerMap
from ..transformations.rearrange import rearrangement
from ..transformations.symbolic import Conjugate, Inverse, reduce_to_iet
from .rokhlin import odometer_level

ONE = Fraction(1)


@dataclass(frozen=True)
class CycleCertificate:
    """A cycle ``η`` of the given period with a base and a bound on ``ρ(τ, η)``.

    ``bound`` is the upper end of a certified enclosure of the distance
    between the approximated map and the cycle.
    """

    cycle: FiniteIET
    period: int
    base: IntervalEvent
    bound: Fraction

    def __post_init__(self):
        if self.period < 1:
            raise DomainError("period must be positive")
        if not self.cycle.power(self.period).is_identity:
            raise DomainError("cycle^period is not the identity")
        levels = self.levels()
        union = IntervalEvent.empty()
        for lev in levels:
            union = union | lev
        if union.measure() != 1 or self.period * self.base.measure() != 1:
            raise DomainError("base iterates do not partition [0, 1)")

    def levels(self) -> list[IntervalEvent]:
        out = [self.base]
        for _ in range(self.period - 1):
            out.append(self.cycle.image(out[-1]))
        return out


def _piece(lo, hi, target_lo):
    return (lo, hi, target_lo - lo)


def odometer_cycle(odo: OdometerMap, N: int) -> tuple[FiniteIET, IntervalEvent]:
    """A period-``N`` cycle agreeing with the odometer off a set of measure ``<= 2/N``.

    For ``N = p^k`` this is the depth-``k`` truncated odometer. Otherwise an
    exact tower of height ``H = p^K >= N^2`` is cut into ``H // N`` blocks
    of ``N`` levels, each closed into a cycle, and every leftover level is
    split into ``N`` strips permuted cyclically.
    """
    p = odo.base
    k, m = 0, N
    while m % p == 0:
        m //= p
        k += 1
    if m == 1:
        delta = Fraction(1, N)
        pieces = [odo.piece(j) for j in range(1, k + 1)]
        pieces.append((1 - delta, ONE, delta - 1))
        return FiniteIET(tuple(pieces)), IntervalEvent.interval(0, delta)
    K = 1
    while p ** K < N * N:
        K += 1
    H = p ** K
    q = H // N
    pieces = []
    base = []
    for b in range(q):
        for j in range(N):
            lo, hi = odometer_level(p, K, b * N + j)
            tlo, _ = odometer_level(p, K, b * N + (j + 1) % N)
            pieces.append(_piece(lo, hi, tlo))
        base.append(odometer_level(p, K, b * N))
    for m in range(q * N, H):
        lo, hi = odometer_level(p, K, m)
        w = (hi - lo) / N
        for j in range(N):
            s = lo + j * w
            pieces.append(_piece(s, s + w, lo + ((j + 1) % N) * w))
        base.append((lo, lo + w))
    return FiniteIET(tuple(pieces)), IntervalEvent(_merge(base, check=False))


def _cycle_for(T: Transformation, N: int) -> tuple[FiniteIET, IntervalEvent]:
    if isinstance(T, OdometerMap):
        return odometer_cycle(T, N)
    if isinstance(T, Inverse):
        eta, base = _cycle_for(T.inner, N)
        return eta.inverse(), base
    if isinstance(T, Conjugate):
        by = reduce_to_iet(T.by)
        if by is None:
            raise DomainError("conjugating map must reduce to an IET")
        eta, base = _cycle_for(T.inner, N)
        return compose(by.inverse(), compose(eta, by)), by.preimage(base)
    raise DomainError(f"no cycle approximation for {type(T).__name__}")


def cycle_approximation(S: System | Transformation, N: int,
                        budget: Optional[Budget] = None) -> CycleCertificate:
    """A period-``N`` cycle within ``2/N`` of the map, with a certified bound."""
    T = S.transformation if isinstance(S, System) else S
    if N < 2:
        raise DomainError("N must be at least 2")
    budget = resolve_budget(budget)
    eta, base = _cycle_for(T, N)
    enc = rho_maps(T, eta, Fraction(1, 4 * N * N), budget)
    cert = CycleCertificate(eta, N, base, enc.hi)
    if cert.bound > Fraction(2, N):
        raise DomainError(f"cycle bound {cert.bound} exceeds 2/{N}")
    return cert


def cycle_distance(S: System | Transformation, cert: CycleCertificate,
                   budget: Optional[Budget] = None) -> Enclosure:
    T = S.transformation if isinstance(S, System) else S
    return rho_maps(T, cert.cycle, Fraction(1, 4 * cert.period ** 2), budget)


# ---------------------------------------------------------------------------
# Conjugating cycles


def restrict(iet: FiniteIET, region: IntervalEvent) -> list[tuple]:
    """Pieces of ``iet`` cut down to ``region``."""
    out = []
    for lo, hi, c in iet.pieces:
        for u, v in region.intervals:
            s, t = max(lo, u), min(hi, v)
            if s < t:
                out.append((s, t, c))
    return out


def extend_along_cycle(eta1: FiniteIET, eta2: FiniteIET, period: int,
                       base1: IntervalEvent, gamma0: FiniteIET) -> FiniteIET:
    """Glue ``η2^l ∘ γ0 ∘ η1^-l`` on the levels ``η1^l(base1)``."""
    pieces = []
    level = base1
    inv1 = eta1.inverse()
    back = FiniteIET.identity()  # η1^-l
    fwd = FiniteIET.identity()   # η2^l
    for l in range(period):
        g = compose(fwd, compose(gamma0, back))
        pieces.extend(restrict(g, level))
        level = eta1.image(level)
        back = compose(back, inv1)
        fwd = compose(eta2, fwd)
    return FiniteIET(tuple(pieces))


def check_conjugacy(gamma: FiniteIET, eta1: FiniteIET, eta2: FiniteIET) -> bool:
    return compose(gamma, eta1) == compose(eta2, gamma)


def conjugate_cycles(c1: CycleCertificate, c2: CycleCertificate) -> FiniteIET:
    """``γ`` with ``γ η1 = η2 γ`` and ``γ(base1) = base2``."""
    if c1.period != c2.period:
        raise DomainError(f"periods differ: {c1.period} vs {c2.period}")
    gamma0 = rearrangement(c1.base, c2.base)
    gamma = extend_along_cycle(c1.cycle, c2.cycle, c1.period, c1.base, gamma0)
    if not check_conjugacy(gamma, c1.cycle, c2.cycle) or gamma.image(c1.base) != c2.base:
        raise DomainError("conjugacy equations failed")  # unreachable for valid certificates
    return gamma


# ---------------------------------------------------------------------------
# Approximate conjugacy of aperiodic maps


@dataclass(frozen=True)
class ApproximateConjugacy:
    conjugate: Transformation      # τ2' = γ⁻¹ τ2 γ
    certificate: Fraction          # ≥ ρ(τ1, τ2')
    gamma: FiniteIET
    N: Optional[int]


def approximate_conjugation(S1: System | Transformation, S2: System | Transformation, eps,
                            budget: Optional[Budget] = None) -> ApproximateConjugacy:
    """A conjugate ``τ2'`` of ``τ2`` with ``ρ(τ1, τ2') <= certificate < eps``.

    Both maps are approximated by period-``N`` cycles with ``4/N < eps``;
    conjugating the second cycle onto the first turns ``τ2`` into ``τ2'``
    and ``ρ(τ1, τ2') <= ρ(τ1, η1) + ρ(η2, τ2)``.
    """
    T1 = S1.transformation if isinstance(S1, System) else S1
    T2 = S2.transformation if isinstance(S2, System) else S2
    eps = Fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    budget = resolve_budget(budget)
    if T1 == T2:
        identity = FiniteIET.identity()
        return ApproximateConjugacy(Conjugate(T2, identity), Fraction(0), identity, None)
    N = 2
    while Fraction(4, N) >= eps:
        N *= 2
    c1 = cycle_approximation(T1, N, budget)
    c2 = cycle_approximation(T2, N, budget)
    gamma = conjugate_cycles(c1, c2)
    cert = c1.bound + c2.bound
    if cert >= eps:
        raise DomainError(f"certificate {cert} not below {eps}")
    return ApproximateConjugacy(Conjugate(T2, gamma), cert, gamma, N)
