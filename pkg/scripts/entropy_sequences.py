"""Conditional entropy sequences H(A / past_k) for a few systems.

The Bernoulli generator stays at -sum p ln p, the odometer's dyadic
algebras drop to zero, and the product of the two keeps the Bernoulli
value on the right factor.
"""
import argparse
import csv
import sys
from fractions import Fraction

from ergoalg.measure import FiniteAlgebra, IntervalEvent, RectEvent, generated_algebra
from ergoalg.entropy import h_sequence
from ergoalg.towers import product_system
from ergoalg.transformations import BernoulliShift, OdometerMap


def dyadic(depth: int) -> FiniteAlgebra:
    step = Fraction(1, 2 ** depth)
    return FiniteAlgebra(tuple(IntervalEvent.interval(j * step, (j + 1) * step)
                               for j in range(2 ** depth)))


def cases(n: int):
    for probs in ((Fraction(1, 2), Fraction(1, 2)), (Fraction(1, 3), Fraction(2, 3))):
        S = BernoulliShift.on(probs)
        yield f"bernoulli {probs[0]},{probs[1]}", S, S.generator(), n
    odo = OdometerMap(2)
    for depth in (1, 2, 3):
        yield f"odometer dyadic-{depth}", odo, dyadic(depth), 2 ** (depth + 2)
    S = BernoulliShift.on((Fraction(1, 2), Fraction(1, 2)))
    P = product_system(odo, S)
    left = IntervalEvent.full()
    gen = generated_algebra([RectEvent.rectangle(left, g) for g in S.generator()], P.carrier)
    yield "product right-generator", P, gen, n


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-n", type=int, default=6)
    parser.add_argument("--precision", type=int, default=53)
    args = parser.parse_args(argv)
    out = csv.writer(sys.stdout)
    out.writerow(["system", "k", "cesaro", "conditional", "exact_cell_count"])
    for name, S, A, n in cases(args.n):
        seq = h_sequence(S, A, n, args.precision)
        for k, (c, d, cnt) in enumerate(zip(seq.cesaro, seq.conditional, seq.cell_counts), 1):
            out.writerow([name, k, c.decimal(), d.decimal(), cnt])


if __name__ == "__main__":
    main()
