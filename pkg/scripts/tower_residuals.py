"""Residual measure of Rokhlin towers on the odometer and the Bernoulli shift.

Prints one CSV row per (system, n, eps) with the exact residual and the
number of intervals or diagram nodes in the base.
"""
import argparse
import csv
import sys
import time
from fractions import Fraction

from ergoalg.measure import CylinderEvent
from ergoalg.towers import rokhlin_tower
from ergoalg.transformations import BernoulliShift, OdometerMap


def base_size(base) -> int:
    if isinstance(base, CylinderEvent):
        return base.diagram_size()
    return len(base.intervals)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--heights", default="2,3,5,8,13")
    parser.add_argument("--eps", default="1/4,1/16")
    args = parser.parse_args(argv)
    heights = [int(x) for x in args.heights.split(",")]
    tolerances = [Fraction(x) for x in args.eps.split(",")]
    systems = {
        "odometer-2": OdometerMap(2),
        "odometer-3": OdometerMap(3),
        "bernoulli-1/2": BernoulliShift.on((Fraction(1, 2), Fraction(1, 2))),
    }
    out = csv.writer(sys.stdout)
    out.writerow(["system", "n", "eps", "residual", "residual_float", "base_size", "seconds"])
    for name, T in systems.items():
        for n in heights:
            for eps in tolerances:
                start = time.perf_counter()
                t = rokhlin_tower(T, n, eps)
                elapsed = time.perf_counter() - start
                out.writerow([name, n, eps, t.residual, f"{float(t.residual):.6g}", base_size(t.base), f"{elapsed:.3f}"])


if __name__ == "__main__":
    main()
