import math
import random

import pytest
from hypothesis import given, strategies as st

from ergoalg.entropy import entropy, h_sequence
from ergoalg.errors import DomainError
from ergoalg.measure import (
    CylinderCarrier, CylinderEvent, FiniteAlgebra, IntervalEvent, RectEvent, generated_algebra,
    join,
)
from ergoalg.towers import (
    QfTypeMismatch, aperiodicity_witness, approximate_conjugation, check_witness,
    conjugacy_with_parameters, conjugate_cycles, cycle_approximation, cycle_distance,
    independent_periodic_partition, partition_for_periodic, periodic_decomposition,
    product_system, rokhlin_tower,
)
from ergoalg.towers.cycles import CycleCertificate, check_conjugacy
from ergoalg.transformations import (
    BernoulliShift, Conjugate, FiniteIET, OdometerMap, map_event, rho_maps,
)
from ergoalg.transformations.symbolic import is_certified_aperiodic
from helpers import F, I, digit_event, rand_iet

HALF = CylinderCarrier((F(1, 2), F(1, 2)))
SWAP = FiniteIET.rotation(F(1, 2))
GLUED = FiniteIET.from_pieces([
    (0, F(1, 3), 0), (F(1, 3), F(2, 3), F(1, 3)), (F(2, 3), 1, -F(1, 3))])


def _pairwise_disjoint(levels):
    return all((levels[i] & levels[j]).is_empty
               for i in range(len(levels)) for j in range(i + 1, len(levels)))


# ---------------------------------------------------------------------------
# towers and witnesses


def test_odometer_tower_exact_height():
    t = rokhlin_tower(OdometerMap(2), 2, F(1, 10))
    assert t.base == I(0, F(1, 2))
    assert t.levels == (I(0, F(1, 2)), I(F(1, 2), 1))
    assert t.residual == 0


def test_odometer_tower_regrouped():
    t = rokhlin_tower(OdometerMap(2), 3, F(1, 4))
    assert t.height == 3 and t.residual < F(1, 4)
    assert _pairwise_disjoint(t.levels)
    assert t.verify()


def test_bernoulli_marker_tower():
    S = BernoulliShift.on(HALF.probs)
    t = rokhlin_tower(S, 2, F(1, 4))
    assert t.residual < F(1, 4)
    assert all(isinstance(lev, CylinderEvent) for lev in t.levels)
    assert _pairwise_disjoint(t.levels)
    assert map_event(S, t.levels[0]) == t.levels[1]


def test_tower_rejects_periodic_map():
    with pytest.raises(DomainError):
        rokhlin_tower(SWAP, 3, F(1, 4))


@given(st.sampled_from([2, 3]), st.integers(1, 12), st.sampled_from([F(1, 3), F(1, 8), F(1, 20)]))
def test_odometer_towers(p, n, eps):
    odo = OdometerMap(p)
    t = rokhlin_tower(odo, n, eps)
    assert t.height == n and t.residual < eps
    assert _pairwise_disjoint(t.levels)
    for i in range(n - 1):
        assert map_event(odo, t.levels[i]) == t.levels[i + 1]
    if p ** round(math.log(n, p)) == n:
        assert t.residual == 0


@given(st.integers(1, 4), st.sampled_from([F(1, 4), F(1, 8)]))
def test_bernoulli_towers(n, eps):
    S = BernoulliShift.on((F(1, 3), F(2, 3)))
    t = rokhlin_tower(S, n, eps)
    assert t.residual < eps and _pairwise_disjoint(t.levels)


def test_witness_examples():
    odo = OdometerMap(2)
    b = aperiodicity_witness(odo, 1, 0)
    assert b == I(0, F(1, 2))
    assert map_event(odo, b) == I(F(1, 2), 1)
    b = aperiodicity_witness(odo, 2, 0)
    assert b == digit_event(2, 2, {0})
    S = BernoulliShift.on(HALF.probs)
    b = aperiodicity_witness(S, 1, F(1, 8))
    assert check_witness(S, b, 1).holds(F(1, 8))


def test_witness_needs_eps_without_exact_route():
    with pytest.raises(DomainError):
        aperiodicity_witness(BernoulliShift.on(HALF.probs), 1, 0)


@given(st.integers(1, 9))
def test_witness_through_symbolic_wrappers(n):
    T = Conjugate(OdometerMap(2), SWAP)
    b = aperiodicity_witness(T, n, 0)
    assert check_witness(T, b, n).holds(0)


# ---------------------------------------------------------------------------
# cycles


@pytest.mark.parametrize("p,N,rho", [(2, 4, F(1, 4)), (2, 2, F(1, 2)), (3, 3, F(1, 3))])
def test_cycle_approximation_examples(p, N, rho):
    cert = cycle_approximation(OdometerMap(p), N)
    assert cert.period == N and cert.bound <= F(2, N)
    enc = cycle_distance(OdometerMap(p), cert)
    assert enc.lo == enc.hi == rho


def test_cycle_approximation_of_a_conjugate():
    T = Conjugate(OdometerMap(2), rand_iet(random.Random(3), 8, 3))
    cert = cycle_approximation(T, 8)
    assert cert.bound <= F(1, 4)
    assert rho_maps(T, cert.cycle, F(1, 256)).lo <= cert.bound


def _cert(cycle, period, base):
    return CycleCertificate(cycle, period, base, F(0))


def test_conjugate_cycles_examples():
    c1 = _cert(SWAP, 2, I(0, F(1, 2)))
    c2 = _cert(SWAP, 2, I(F(1, 2), 1))
    gamma = conjugate_cycles(c1, c2)
    assert gamma == SWAP
    assert conjugate_cycles(c1, c1).is_identity
    rot = FiniteIET.rotation(F(1, 3))
    other = FiniteIET.from_pieces([
        (0, F(1, 3), F(2, 3)), (F(1, 3), F(2, 3), -F(1, 3)), (F(2, 3), 1, -F(1, 3))])
    gamma = conjugate_cycles(_cert(rot, 3, I(0, F(1, 3))), _cert(other, 3, I(0, F(1, 3))))
    assert check_conjugacy(gamma, rot, other)
    assert gamma.image(I(0, F(1, 3))) == I(0, F(1, 3))


def test_conjugate_cycles_period_mismatch():
    with pytest.raises(DomainError):
        conjugate_cycles(_cert(SWAP, 2, I(0, F(1, 2))),
                         _cert(FiniteIET.rotation(F(1, 3)), 3, I(0, F(1, 3))))


def test_approximate_conjugation_examples():
    odo = OdometerMap(2)
    r = approximate_conjugation(odo, odo, F(1, 2))
    assert r.certificate == 0 and r.gamma.is_identity
    r = approximate_conjugation(odo, Conjugate(odo, SWAP), F(1, 2))
    assert r.certificate <= F(1, 2)
    r = approximate_conjugation(odo, OdometerMap(3), F(1, 2))
    assert r.N == 16 and r.certificate <= F(1, 2)
    # soundness: the certificate bounds the shallow lower enclosure
    enc = rho_maps(odo, r.conjugate, F(1, 64))
    assert enc.lo <= r.certificate


# ---------------------------------------------------------------------------
# periodic maps


def test_partition_for_periodic_examples():
    assert partition_for_periodic(FiniteIET.rotation(F(1, 3)), 2) == I(0, F(1, 3))
    assert partition_for_periodic(SWAP, 1) == I(0, F(1, 2))
    with pytest.raises(DomainError):
        partition_for_periodic(GLUED, 1)


def _orbit_partition_ok(T, A, n):
    levels = [A]
    for _ in range(n):
        levels.append(map_event(T, levels[-1]))
    union = IntervalEvent.empty()
    for lev in levels:
        union = union | lev
    return _pairwise_disjoint(levels) and union.is_full


def _random_cycle(rng, k):
    gamma = rand_iet(rng, 12, rng.randrange(1, 4))
    return gamma.inverse().then(FiniteIET.rotation(F(1, k))).then(gamma)


@given(st.integers(0, 10 ** 6), st.integers(2, 5))
def test_partition_for_random_cycles(seed, k):
    T = _random_cycle(random.Random(seed), k)
    A = partition_for_periodic(T, k - 1)
    assert A.measure() == F(1, k)
    assert _orbit_partition_ok(T, A, k - 1)


def test_independent_periodic_partition_examples():
    B = I(0, F(1, 2))
    A = independent_periodic_partition(SWAP, 1, [B])
    assert _orbit_partition_ok(SWAP, A, 1)
    assert (A & B).measure() == A.measure() * B.measure()
    rot = FiniteIET.rotation(F(1, 3))
    assert independent_periodic_partition(rot, 2, []) == partition_for_periodic(rot, 2)
    A = independent_periodic_partition(rot, 2, [I(0, F(1, 3))])
    assert _orbit_partition_ok(rot, A, 2)
    assert (A & I(0, F(1, 3))).measure() == F(1, 9)


@given(st.integers(0, 10 ** 6), st.integers(2, 4))
def test_independent_periodic_partition_random(seed, k):
    rng = random.Random(seed)
    T = _random_cycle(rng, k)
    B = [I(F(rng.randrange(6), 12), F(rng.randrange(6, 13), 12))]
    A = independent_periodic_partition(T, k - 1, B)
    assert _orbit_partition_ok(T, A, k - 1)
    orbit = [B[0]]
    for _ in range(k - 1):
        orbit.append(map_event(T, orbit[-1]))
    for atom in generated_algebra(orbit).atoms:
        assert (A & atom).measure() == A.measure() * atom.measure()


def test_conjugacy_with_parameters_examples():
    c = _cert(SWAP, 2, I(0, F(1, 2)))
    gamma = conjugacy_with_parameters(c, c, [I(0, F(1, 4))], [I(F(1, 2), F(3, 4))])
    assert gamma == SWAP
    gamma = conjugacy_with_parameters(c, c, [I(0, F(1, 4))], [I(0, F(1, 4))])
    assert gamma.is_identity


def test_conjugacy_with_parameters_two_events():
    eta1 = SWAP
    eta2 = FiniteIET.from_pieces([
        (0, F(1, 4), F(1, 4)), (F(1, 4), F(1, 2), -F(1, 4)),
        (F(1, 2), F(3, 4), F(1, 4)), (F(3, 4), 1, -F(1, 4))])
    b = [I(0, F(1, 8)), I(F(1, 16), F(3, 16))]
    d = [I(F(1, 4), F(3, 8)), I(F(5, 16), F(7, 16))]
    gamma = conjugacy_with_parameters(_cert(eta1, 2, I(0, F(1, 2))),
                                      _cert(eta2, 2, I(0, F(1, 4)) | I(F(1, 2), F(3, 4))), b, d)
    assert check_conjugacy(gamma, eta1, eta2)
    assert all(gamma.image(x) == y for x, y in zip(b, d))


def test_conjugacy_with_parameters_reports_mismatch():
    c = _cert(SWAP, 2, I(0, F(1, 2)))
    with pytest.raises(QfTypeMismatch) as info:
        conjugacy_with_parameters(c, c, [I(0, F(1, 4))], [I(0, F(1, 3))])
    bad = info.value.mismatch
    assert bad.left != bad.right


def test_periodic_decomposition_examples():
    dec = periodic_decomposition(GLUED)
    assert dec.periodic_parts == {1: I(0, F(1, 3)), 2: I(F(1, 3), 1)}
    assert dec.aperiodic_part.is_empty
    dec = periodic_decomposition(OdometerMap(2))
    assert dec.periodic_parts == {} and dec.aperiodic_part.is_full
    dec = periodic_decomposition(FiniteIET.identity())
    assert dec.periodic_parts == {1: IntervalEvent.full()}


@given(st.integers(0, 10 ** 6))
def test_decomposition_parts_invariant(seed):
    rng = random.Random(seed)
    T = rand_iet(rng, 12, rng.randrange(1, 6))
    dec = periodic_decomposition(T)
    parts = dec.parts()
    assert _pairwise_disjoint(parts)
    union = IntervalEvent.empty()
    for z in parts:
        union = union | z
        assert map_event(T, z) == z
    assert union.is_full
    for i, z in dec.periodic_parts.items():
        assert (z - T.fixed_set(i)).is_empty


# ---------------------------------------------------------------------------
# products


def test_product_componentwise():
    P = product_system(OdometerMap(2), BernoulliShift.on(HALF.probs))
    a = RectEvent.rectangle(I(0, F(1, 2)), CylinderEvent.from_pattern(HALF, {0: 0}))
    image = map_event(P.transformation, a)
    assert image == RectEvent.rectangle(I(F(1, 2), 1), CylinderEvent.from_pattern(HALF, {1: 0}))
    assert is_certified_aperiodic(P.transformation)
    b = aperiodicity_witness(P, 3, 0)
    assert check_witness(P.transformation, b, 3).holds(0)


def test_product_with_zero_entropy_factor():
    P = product_system(OdometerMap(2), BernoulliShift.on(HALF.probs))
    full = HALF.full()
    A = generated_algebra([RectEvent.rectangle(I(0, F(1, 2)), full)], P.carrier)
    seq = h_sequence(P, A, 3)
    assert all(v.is_exact_zero for v in seq.conditional)


def test_product_generator_ignores_left_factor():
    S = BernoulliShift.on(HALF.probs)
    P = product_system(OdometerMap(2), S)
    full_left = IntervalEvent.full()
    gen = [RectEvent.rectangle(full_left, g) for g in S.generator()]
    Dalg = FiniteAlgebra(tuple(gen))
    Balg = generated_algebra([RectEvent.rectangle(I(0, F(1, 2)), HALF.full()),
                              RectEvent.rectangle(I(0, F(1, 4)), HALF.full())], P.carrier)
    past = FiniteAlgebra(tuple(map_event(P.transformation, a, "inverse") for a in gen))
    with_b = float(entropy(Dalg, join(Balg, past)))
    without = float(entropy(Dalg, past))
    assert abs(with_b - math.log(2)) <= 1e-12
    assert abs(with_b - without) <= 1e-12
