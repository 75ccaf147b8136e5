"""Distance from aperiodic maps to their period-N cycle approximations.

For each map and N the row shows the certified bound, the exact distance
when the enclosure closes, and 2/N for comparison.
"""
import argparse
import csv
import sys
from fractions import Fraction

from ergoalg.towers import cycle_approximation, cycle_distance
from ergoalg.transformations import Conjugate, FiniteIET, Inverse, OdometerMap


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--periods", default="2,4,8,16,64")
    args = parser.parse_args(argv)
    periods = [int(x) for x in args.periods.split(",")]
    swap = FiniteIET.rotation(Fraction(1, 2))
    maps = {
        "odometer-2": OdometerMap(2),
        "odometer-3": OdometerMap(3),
        "inverse odometer-2": Inverse(OdometerMap(2)),
        "odometer-2 conjugated by swap": Conjugate(OdometerMap(2), swap),
    }
    out = csv.writer(sys.stdout)
    out.writerow(["map", "N", "two_over_N", "certified", "rho_lo", "rho_hi"])
    for name, T in maps.items():
        for N in periods:
            cert = cycle_approximation(T, N)
            enc = cycle_distance(T, cert)
            out.writerow([name, N, Fraction(2, N), cert.bound, enc.lo, enc.hi])


if __name__ == "__main__":
    main()
