import random

import pytest
from hypothesis import given, strategies as st

from ergoalg.errors import CarrierMismatch, DomainError
from ergoalg.measure import CylinderCarrier, CylinderEvent, IntervalEvent, measure
from ergoalg.towers.cycles import odometer_cycle
from ergoalg.transformations import (
    BernoulliShift, Compose, Conjugate, FiniteIET, Inverse, OdometerMap, fixed_set,
    iterate_image, map_event, rearrangement, rho_maps,
)
from helpers import (
    F, I, digit_event, from_cells, interval_events, iet_point, odometer_cell_image, rand_iet,
    rand_words, cylinder, to_cells,
)

HALF = CylinderCarrier((F(1, 2), F(1, 2)))


# ---------------------------------------------------------------------------
# examples


def test_odometer_moves_first_half_up():
    assert map_event(OdometerMap(2), I(0, F(1, 2))) == I(F(1, 2), 1)


def test_rotation_translates():
    assert map_event(FiniteIET.rotation(F(1, 2)), I(0, F(1, 4))) == I(F(1, 2), F(3, 4))


def test_shift_reindexes_coordinates():
    S = BernoulliShift.on(HALF.probs)
    a = CylinderEvent.from_pattern(HALF, {0: 0})
    assert map_event(S, a) == CylinderEvent.from_pattern(HALF, {1: 0})


def test_odometer_second_digit_twice():
    odo = OdometerMap(2)
    assert iterate_image(odo, 2, digit_event(2, 2, {0})) == digit_event(2, 2, {1})


def test_iterate_zero_and_period():
    a = I(F(1, 5), F(2, 3))
    assert iterate_image(OdometerMap(3), 0, a) == a
    assert iterate_image(FiniteIET.rotation(F(1, 3)), 3, I(0, F(1, 3))) == I(0, F(1, 3))


def test_rho_maps_examples():
    half = FiniteIET.rotation(F(1, 2))
    e = rho_maps(half, half)
    assert (e.lo, e.hi) == (0, 0)
    e = rho_maps(half, FiniteIET.identity())
    assert (e.lo, e.hi) == (1, 1)
    cycle, _ = odometer_cycle(OdometerMap(2), 4)
    e = rho_maps(OdometerMap(2), cycle)
    assert (e.lo, e.hi) == (F(1, 4), F(1, 4))


def test_rearrangement_example():
    eta = rearrangement(I(0, F(1, 2)), I(F(1, 4), F(3, 4)))
    assert eta.image(I(0, F(1, 2))) == I(F(1, 4), F(3, 4))
    assert eta(F(0)) == F(1, 4)
    # the complement keeps its left-to-right order
    assert eta(F(1, 2)) == F(0)
    assert eta(F(3, 4)) == F(3, 4)
    assert rearrangement(I(0, F(1, 3)), I(0, F(1, 3))).is_identity
    eta = rearrangement(I(0, F(1, 4)), I(F(3, 4), 1))
    assert eta.image(I(0, F(1, 4))) == I(F(3, 4), 1)


def test_rearrangement_rejects_measure_mismatch():
    with pytest.raises(DomainError):
        rearrangement(I(0, F(1, 2)), I(0, F(1, 3)))


def test_fixed_set_examples():
    assert fixed_set(FiniteIET.identity(), 1) == IntervalEvent.full()
    assert fixed_set(FiniteIET.rotation(F(1, 2)), 1).is_empty
    T = FiniteIET.from_pieces([
        (0, F(1, 3), 0), (F(1, 3), F(2, 3), F(1, 3)), (F(2, 3), 1, -F(1, 3))])
    assert fixed_set(T, 2) == IntervalEvent.full()
    assert fixed_set(T, 1) == I(0, F(1, 3))
    assert fixed_set(OdometerMap(2), 4).is_empty


def test_iet_rejects_bad_tiling():
    with pytest.raises(DomainError):
        FiniteIET.from_pieces([(0, F(1, 2), 0), (F(1, 2), 1, -F(1, 4))])


def test_carrier_mismatch():
    with pytest.raises(CarrierMismatch):
        map_event(OdometerMap(2), CylinderEvent.from_pattern(HALF, {0: 0}))


# ---------------------------------------------------------------------------
# oracles


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]), st.integers(1, 4))
def test_odometer_matches_carry_oracle(seed, p, K):
    rng = random.Random(seed)
    D = p ** K
    cells = {j for j in range(D) if rng.random() < 0.5}
    cells.discard(D - 1)  # the tail cell is not mapped to a single cell
    image = map_event(OdometerMap(p), from_cells(cells, D))
    assert to_cells(image, D) == {odometer_cell_image(p, K, j) for j in cells}


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_odometer_point_evaluation(seed, p):
    rng = random.Random(seed)
    odo = OdometerMap(p)
    K = 4
    j = rng.randrange(p ** K - 1)
    x = F(j, p ** K) + F(rng.randrange(1, 100), 100 * p ** K)
    y = odo(x)
    assert int(y * p ** K) == odometer_cell_image(p, K, j)
    assert odo.inverse_point(y) == x


@given(st.integers(0, 10 ** 6))
def test_iet_image_matches_point_evaluation(seed):
    rng = random.Random(seed)
    D = 24
    T = rand_iet(rng, D, rng.randrange(1, 6))
    cells = {j for j in range(D) if rng.random() < 0.5}
    image = map_event(T, from_cells(cells, D))
    expected = {int(iet_point(T, F(j, D)) * D) for j in cells}
    assert to_cells(image, D) == expected


# ---------------------------------------------------------------------------
# invariants


def _random_map(rng):
    D = 12
    choice = rng.randrange(5)
    if choice == 0:
        return OdometerMap(rng.choice([2, 3]))
    if choice == 1:
        return rand_iet(rng, D, rng.randrange(1, 5))
    if choice == 2:
        return Inverse(OdometerMap(2))
    if choice == 3:
        return Compose(rand_iet(rng, D, 3), OdometerMap(2))
    return Conjugate(OdometerMap(2), rand_iet(rng, D, 3))


@given(st.integers(0, 10 ** 6), interval_events(12), interval_events(12))
def test_interval_maps_preserve_structure(seed, a, b):
    T = _random_map(random.Random(seed))
    fa, fb = map_event(T, a), map_event(T, b)
    assert measure(fa) == measure(a)
    assert map_event(T, a | b) == fa | fb
    assert map_event(T, a & b) == fa & fb
    assert map_event(T, ~a) == ~fa
    assert map_event(T, fa, "inverse") == a


@given(st.integers(0, 10 ** 6))
def test_shift_preserves_structure(seed):
    rng = random.Random(seed)
    S = BernoulliShift.on(HALF.probs, rng.choice([1, 2, -1]))
    a = cylinder(HALF, rng.randrange(-2, 3), rand_words(rng, 2, 3), 3)
    b = cylinder(HALF, 0, rand_words(rng, 2, 2), 2)
    fa = map_event(S, a)
    assert measure(fa) == measure(a)
    assert map_event(S, a | b) == fa | map_event(S, b)
    assert map_event(S, fa, "inverse") == a


@given(st.integers(0, 10 ** 6))
def test_rho_maps_symmetric_and_triangle(seed):
    rng = random.Random(seed)
    T1, T2, T3 = (rand_iet(rng, 12, rng.randrange(1, 5)) for _ in range(3))
    e12, e21 = rho_maps(T1, T2), rho_maps(T2, T1)
    assert (e12.lo, e12.hi) == (e21.lo, e21.hi)
    assert e12.lo == e12.hi
    e13, e23 = rho_maps(T1, T3), rho_maps(T2, T3)
    assert e13.lo <= e12.hi + e23.hi


@given(st.integers(0, 10 ** 6))
def test_rho_maps_matches_point_oracle(seed):
    rng = random.Random(seed)
    D = 12
    T1, T2 = rand_iet(rng, D, rng.randrange(1, 5)), rand_iet(rng, D, rng.randrange(1, 5))
    # IETs cut at grid points are translations on each cell
    differ = sum(1 for j in range(D) if iet_point(T1, F(j, D)) != iet_point(T2, F(j, D)))
    assert rho_maps(T1, T2).lo == F(differ, D)


@given(st.integers(0, 10 ** 6))
def test_iet_tiles_and_inverts(seed):
    rng = random.Random(seed)
    T = rand_iet(rng, 24, rng.randrange(1, 7))
    srcs = sorted((lo, hi) for lo, hi, _ in T.pieces)
    imgs = sorted((lo + c, hi + c) for lo, hi, c in T.pieces)
    for tiles in (srcs, imgs):
        assert tiles[0][0] == 0 and tiles[-1][1] == 1
        assert all(tiles[i][1] == tiles[i + 1][0] for i in range(len(tiles) - 1))
    assert T.then(T.inverse()).is_identity
    assert to_cells(T.fixed_set(1), 24) == {
        j for j in range(24) if iet_point(T, F(j, 24)) == F(j, 24)}


@given(interval_events(), interval_events())
def test_rearrangement_exchanges_equal_measure_events(a, b):
    # trim b to the measure of a using its leftmost part
    if measure(b) < measure(a):
        a, b = b, a
    b = b.leftmost(measure(a))
    eta = rearrangement(a, b)
    assert eta.image(a) == b
    assert eta.image(~a) == ~b
