import math
import random

import mpmath
import pytest
from hypothesis import given, strategies as st

from ergoalg.entropy import (
    entropy, h_sequence, is_transformally_definable_upto, is_transformally_independent_upto,
    pullback,
)
from ergoalg.errors import CarrierMismatch, DomainError
from ergoalg.measure import CylinderCarrier, CylinderEvent, FiniteAlgebra, generated_algebra, join
from ergoalg.transformations import BernoulliShift, FiniteIET, OdometerMap
from helpers import F, I, digit_event, rand_interval_algebra, rand_iet, to_cells

LN2 = math.log(2)
HALF = CylinderCarrier((F(1, 2), F(1, 2)))
HALVES = generated_algebra([I(0, F(1, 2))])


def _float_oracle(A, C, D):
    """``H(A/C)`` from grid cell counts and ``math.log``."""
    total = 0.0
    for c in C.atoms:
        cc = to_cells(c, D)
        for a in A.atoms:
            k = len(to_cells(a, D) & cc)
            if k:
                total -= k / D * math.log(k / len(cc))
    return total


# ---------------------------------------------------------------------------
# examples


def test_entropy_examples():
    assert float(entropy(HALVES)) == pytest.approx(LN2, abs=1e-15)
    h = entropy(HALVES, HALVES)
    assert h.value == 0 and h.is_exact_zero
    quarters = generated_algebra([I(0, F(1, 2)), I(F(1, 4), F(3, 4))])
    assert float(entropy(quarters)) == pytest.approx(2 * LN2, abs=1e-15)


def test_entropy_keeps_exact_cells():
    h = entropy(generated_algebra([I(0, F(1, 3))]))
    assert sorted(h.exact_probs) == [F(1, 3), F(2, 3)]
    assert h.given_probs == (F(1),)
    assert h.cell_count == 2


def test_entropy_precision():
    h = entropy(generated_algebra([I(0, F(1, 3))]), precision=200)
    with mpmath.workprec(260):
        exact = -(mpmath.mpf(1) / 3 * mpmath.log(mpmath.mpf(1) / 3)
                  + mpmath.mpf(2) / 3 * mpmath.log(mpmath.mpf(2) / 3))
        assert abs(h.value - exact) < mpmath.mpf(2) ** -195
    assert len(h.decimal()) > 55
    with pytest.raises(DomainError):
        entropy(HALVES, precision=20)


def test_entropy_carrier_mismatch():
    B = FiniteAlgebra(tuple(BernoulliShift.on(HALF.probs).generator()))
    with pytest.raises(CarrierMismatch):
        entropy(HALVES, B)


def test_h_sequence_examples():
    S = BernoulliShift.on(HALF.probs)
    seq = h_sequence(S, S.generator(), 4)
    for v in seq.conditional:
        assert float(v) == pytest.approx(LN2, abs=1e-15)
    for v in seq.cesaro:
        assert float(v) == pytest.approx(LN2, abs=1e-15)
    assert seq.cell_counts == (2, 4, 8, 16)
    seq = h_sequence(OdometerMap(2), HALVES, 2)
    assert all(v.is_exact_zero for v in seq.conditional)
    seq = h_sequence(FiniteIET.identity(), HALVES, 3)
    assert [v.value for v in seq.conditional] == [0, 0, 0]
    cesaro, conditional = h_sequence(FiniteIET.identity(), HALVES, 3)
    assert len(cesaro) == len(conditional) == 3


def test_transformal_independence_examples():
    S = BernoulliShift.on(HALF.probs)
    assert is_transformally_independent_upto(S, S.generator(), 5)
    assert not is_transformally_independent_upto(OdometerMap(2), HALVES, 1)
    assert not is_transformally_independent_upto(FiniteIET.identity(), HALVES, 1)


def test_transformal_definability_examples():
    d = is_transformally_definable_upto(OdometerMap(2), HALVES, 1)
    assert d.holds and d.path == "exact"
    S = BernoulliShift.on(HALF.probs)
    d = is_transformally_definable_upto(S, S.generator(), 8, tol=1e-9)
    assert not d.holds and d.path == "numeric"
    assert float(d.value) == pytest.approx(LN2, abs=1e-12)
    assert is_transformally_definable_upto(FiniteIET.identity(), HALVES, 1)


def test_odometer_definability_depends_on_the_algebra():
    # the odometer permutes depth-2 cells, so the past regenerates them at once
    A = generated_algebra([digit_event(2, 1, {0}), digit_event(2, 2, {0})])
    assert is_transformally_definable_upto(OdometerMap(2), A, 1).holds
    # a third is never a union of dyadic cells
    B = generated_algebra([I(0, F(1, 3))])
    assert not is_transformally_definable_upto(OdometerMap(2), B, 3).holds


# ---------------------------------------------------------------------------
# properties


@given(st.integers(0, 10 ** 6))
def test_entropy_matches_float_oracle(seed):
    rng = random.Random(seed)
    D = 24
    A, C = rand_interval_algebra(rng, D, 3), rand_interval_algebra(rng, D, 2)
    assert float(entropy(A, C)) == pytest.approx(_float_oracle(A, C, D), abs=1e-12)


@given(st.integers(0, 10 ** 6))
def test_entropy_bounds_and_chain_rule(seed):
    rng = random.Random(seed)
    D = 24
    A, C, E = (rand_interval_algebra(rng, D, 2) for _ in range(3))
    hA = float(entropy(A, E))
    assert 0 <= hA <= math.log(len(A.atoms)) + 1e-12
    lhs = float(entropy(join(A, C), E))
    rhs = hA + float(entropy(C, join(A, E)))
    assert abs(lhs - rhs) <= 1e-9
    assert float(entropy(A, join(C, E))) <= hA + 1e-12


@given(st.integers(0, 10 ** 6))
def test_conditional_sequence_non_increasing(seed):
    rng = random.Random(seed)
    T = rand_iet(rng, 12, rng.randrange(2, 5))
    A = rand_interval_algebra(rng, 12, 2)
    seq = h_sequence(T, A, 4)
    values = [float(v) for v in seq.conditional]
    assert all(values[i + 1] <= values[i] + 1e-12 for i in range(len(values) - 1))
    hA = float(entropy(A))
    assert all(float(v) <= hA + 1e-12 for v in seq.cesaro)


@given(st.integers(2, 6))
def test_bernoulli_thirds_entropy(n):
    probs = (F(1, 3), F(2, 3))
    S = BernoulliShift.on(probs)
    expected = math.log(3) - 2 / 3 * math.log(2)
    seq = h_sequence(S, S.generator(), n)
    assert all(abs(float(v) - expected) <= 1e-12 for v in seq.conditional)


def test_cylinder_invariance_under_shift():
    S = BernoulliShift.on(HALF.probs)
    A = generated_algebra([CylinderEvent.from_words(HALF, (0, 1), ["00", "11"])], HALF)
    D_ = generated_algebra([CylinderEvent.from_pattern(HALF, {1: 0})], HALF)
    h1 = entropy(A, D_)
    h2 = entropy(pullback(S, A), pullback(S, D_))
    assert abs(float(h1) - float(h2)) <= 1e-12
